use num_traits::ToPrimitive;

use super::row::{first_row_failure, to_scan_bound, ROW_SCAN_LIMIT};
use super::{CongruenceReport, Verdict, Witness};
use crate::arith::ring::{Modulus, ResidueRing};
use crate::arith::Natural;
use crate::error::{Error, Result};
use crate::with_ring;

fn at_least(what: &'static str, min: u64, v: &Natural) -> Result<()> {
    if *v < Natural::from(min) {
        Err(Error::below(what, min, v))
    } else {
        Ok(())
    }
}

/// Wilson's criterion: `(p − 1)! ≡ −1 (mod p)`.
pub fn wilson_test(p: &Natural) -> Result<bool> {
    at_least("p", 2, p)?;
    let w = p
        .to_u64()
        .filter(|&w| w <= ROW_SCAN_LIMIT)
        .ok_or_else(|| Error::too_large("p", p, ROW_SCAN_LIMIT))?;
    let modulus = Modulus::new(p)?;
    let holds = with_ring!(&modulus, ring => {
        let one = ring.one();
        let zero = ring.zero();
        let mut k = ring.zero();
        let mut acc = ring.one();
        for _ in 1..w {
            k = ring.add(&k, &one);
            acc = ring.mul(&acc, &k);
            if acc == zero {
                break;
            }
        }
        // acc + 1 ≡ 0
        ring.add(&acc, &one) == zero
    });
    Ok(holds)
}

fn row_report(subject: &Natural, last: u64) -> Result<CongruenceReport> {
    let failure = first_row_failure(subject, subject, last)?;
    Ok(match failure {
        None => CongruenceReport {
            subject: subject.clone(),
            verdict: Verdict::Holds,
            witness: None,
        },
        Some((n, residue)) => CongruenceReport {
            subject: subject.clone(),
            verdict: Verdict::Fails,
            witness: Some(Witness {
                n: Natural::from(n),
                residue,
            }),
        },
    })
}

/// Checks `C(p + n, n) ≡ 1 (mod p)` for every `0 ≤ n ≤ p − 1`.
pub fn babbage_primality_report(p: &Natural) -> Result<CongruenceReport> {
    at_least("p", 2, p)?;
    let last = to_scan_bound("p", p)? - 1;
    row_report(p, last)
}

/// True iff `p` passes Babbage's criterion, i.e. iff `p` is prime.
pub fn babbage_primality_test(p: &Natural) -> Result<bool> {
    Ok(babbage_primality_report(p)?.verdict == Verdict::Holds)
}

/// Babbage's criterion with the range cut to `0 ≤ n ≤ ⌊√p⌋`.
pub fn sharp_babbage_primality_report(p: &Natural) -> Result<CongruenceReport> {
    at_least("p", 2, p)?;
    let last = to_scan_bound("√p", &p.sqrt())?;
    row_report(p, last)
}

pub fn sharp_babbage_primality_test(p: &Natural) -> Result<bool> {
    Ok(sharp_babbage_primality_report(p)?.verdict == Verdict::Holds)
}

/// The least `ℓ` with `C(m + ℓ, ℓ) ≢ 1 (mod m)` and the residue there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpfResult {
    pub ell: Natural,
    pub residue: Natural,
}

/// Finds the least prime factor of `m` by scanning `ℓ = 1, 2, …` for the
/// first binomial `C(m + ℓ, ℓ)` that is not `1` modulo `m`.
pub fn lpf_via_congruence(m: &Natural) -> Result<LpfResult> {
    at_least("m", 2, m)?;
    let last = to_scan_bound("m", m)?;
    match first_row_failure(m, m, last)? {
        Some((ell, residue)) => Ok(LpfResult {
            ell: Natural::from(ell),
            residue,
        }),
        None => Err(Error::Internal(format!(
            "no ℓ ≤ {m} with C({m} + ℓ, ℓ) ≢ 1 (mod {m})"
        ))),
    }
}

/// Checks `C(m + n, n) ≡ 1 (mod p)` for every `0 ≤ n ≤ m − 1`; this holds
/// exactly when `p` is prime and `m` is a power of `p`.
pub fn mestrovic_check(m: &Natural, p: &Natural) -> Result<bool> {
    at_least("m", 2, m)?;
    at_least("p", 2, p)?;
    let last = to_scan_bound("m", m)? - 1;
    Ok(first_row_failure(m, p, last)?.is_none())
}
