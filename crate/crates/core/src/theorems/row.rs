//! Scanning `C(m + n, n) mod q` along `n = 0, 1, 2, …`.
//!
//! While every `n` seen so far is a unit modulo `q`, the residue is
//! `∏(m + i) · (n!)⁻¹`, so the congruence `≡ 1` reduces to comparing the two
//! running products. Units are confirmed a block at a time: if the running
//! `n!` is a unit at the end of a block, every prefix inside it was too.
//! Blocks that contain a non-unit are replayed one step at a time, and from
//! the first non-unit on each residue comes from [`binomial_mod`].

use num_traits::{ToPrimitive, Zero};

use crate::arith::ring::{Modulus, ResidueRing};
use crate::arith::{binomial_mod, Natural};
use crate::error::{Error, Result};
use crate::with_ring;

/// Largest scan length accepted.
pub const ROW_SCAN_LIMIT: u64 = 1 << 36;

const UNIT_CHECK_BLOCK: u64 = 64;

/// The first `n` in `[0, last]` where `C(m + n, n) ≢ 1 (mod q)`, with its residue.
pub(crate) fn first_row_failure(
    m: &Natural,
    q: &Natural,
    last: u64,
) -> Result<Option<(u64, Natural)>> {
    if q.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if last > ROW_SCAN_LIMIT {
        return Err(Error::too_large(
            "scan length",
            &Natural::from(last),
            ROW_SCAN_LIMIT,
        ));
    }
    let modulus = Modulus::new(q)?;
    let fast = with_ring!(&modulus, ring => scan_units(ring, m, last));
    match fast {
        Scan::Failed(n) => Ok(Some((n, residue(m, n, q)?))),
        Scan::Exhausted => Ok(None),
        Scan::NonUnit(from) => {
            for n in from..=last {
                let r = residue(m, n, q)?;
                if r != Natural::from(1u32) % q {
                    return Ok(Some((n, r)));
                }
            }
            Ok(None)
        }
    }
}

fn residue(m: &Natural, n: u64, q: &Natural) -> Result<Natural> {
    let n = Natural::from(n);
    binomial_mod(&(m + &n), &n, q)
}

enum Scan {
    /// The congruence fails at this `n`, with `n!` a unit.
    Failed(u64),
    /// Every `n ≤ last` passed.
    Exhausted,
    /// `n!` stops being a unit at this `n`; nothing before it failed.
    NonUnit(u64),
}

fn scan_units<R: ResidueRing>(ring: &R, m: &Natural, last: u64) -> Scan {
    let one = ring.one();
    let mut top = ring.lift(m);
    let mut bottom = ring.zero();
    let mut num = ring.one();
    let mut den = ring.one();
    let mut start = 1u64;
    while start <= last {
        let end = start.saturating_add(UNIT_CHECK_BLOCK - 1).min(last);
        let snapshot = (top.clone(), bottom.clone(), num.clone(), den.clone());
        let mut candidate = None;
        for n in start..=end {
            top = ring.add(&top, &one);
            bottom = ring.add(&bottom, &one);
            num = ring.mul(&num, &top);
            den = ring.mul(&den, &bottom);
            if candidate.is_none() && num != den {
                candidate = Some(n);
            }
        }
        if ring.inverse(&den).is_some() {
            if let Some(n) = candidate {
                return Scan::Failed(n);
            }
            start = end + 1;
            continue;
        }
        // Replay the block, checking each prefix for a unit.
        (top, bottom, num, den) = snapshot;
        for n in start..=end {
            top = ring.add(&top, &one);
            bottom = ring.add(&bottom, &one);
            num = ring.mul(&num, &top);
            den = ring.mul(&den, &bottom);
            if ring.inverse(&den).is_none() {
                return Scan::NonUnit(n);
            }
            if num != den {
                return Scan::Failed(n);
            }
        }
        unreachable!("a block whose final n! is not a unit has a first non-unit prefix");
    }
    Scan::Exhausted
}

pub(crate) fn to_scan_bound(what: &'static str, n: &Natural) -> Result<u64> {
    n.to_u64()
        .filter(|&v| v <= ROW_SCAN_LIMIT)
        .ok_or_else(|| Error::too_large(what, n, ROW_SCAN_LIMIT))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial_exact, nat};

    fn brute(m: u64, q: u64, last: u64) -> Option<(u64, Natural)> {
        (0..=last).find_map(|n| {
            let r = binomial_exact(&nat(m + n), &nat(n)).unwrap() % nat(q);
            (r != nat(1 % q)).then_some((n, r))
        })
    }

    #[test]
    fn matches_brute_force() {
        for m in 1..80u64 {
            for q in 1..40u64 {
                for last in [0, 1, 5, 63, 64, 65, 130] {
                    assert_eq!(
                        first_row_failure(&nat(m), &nat(q), last).unwrap(),
                        brute(m, q, last),
                        "m={m} q={q} last={last}"
                    );
                }
            }
        }
    }

    #[test]
    fn large_modulus_uses_big_ring() {
        let q = (nat(1) << 80) + nat(13);
        let m = &q * nat(3);
        let got = first_row_failure(&m, &q, 200).unwrap();
        let want = (0..=200u64).find_map(|n| {
            let r = binomial_exact(&(&m + nat(n)), &nat(n)).unwrap() % &q;
            (r != nat(1)).then_some((n, r))
        });
        assert_eq!(got, want);
    }
}
