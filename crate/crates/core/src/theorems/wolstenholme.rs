//! Congruences for `C(2m − 1, m − 1)`: Babbage's non-primality test, its
//! converse for even `m`, Wolstenholme's theorem and the Brinkmann–Johnson
//! refinement modulo `p⁴`.

use num_traits::{One, ToPrimitive, Zero};

use super::row::ROW_SCAN_LIMIT;
use crate::arith::ring::{Modulus, ResidueRing};
use crate::arith::{
    binomial_exact, binomial_mod, binomial_mod_prime_power, crt, factorize, is_prime_trial,
    mod_inverse, shifted_central_binomial_mod_prime_power, Natural,
};
use crate::error::{Error, Result};
use crate::with_ring;

/// Largest `p` for which [`johnson_congruence_check`] evaluates `C(2p² − 1, p² − 1)` exactly.
pub const JOHNSON_EXACT_LIMIT: u64 = 200;

fn require_prime_at_least(p: &Natural, min: u64) -> Result<u64> {
    if *p < Natural::from(min) {
        return Err(Error::below("p", min, p));
    }
    if !is_prime_trial(p)? {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(p.to_u64()
        .expect("trial division only accepts word-sized input"))
}

/// `C(2m − 1, m − 1) mod m²`, assembled by CRT from the residues modulo
/// `p^{2e}` for each `pᵉ ∥ m`.
pub fn central_binomial_mod_square(m: &Natural) -> Result<Natural> {
    if m.is_zero() {
        return Err(Error::below("m", 1, m));
    }
    if m.is_one() {
        return Ok(Natural::zero());
    }
    let top = (m << 1u32) - 1u32;
    let bottom = m - 1u32;
    let mut parts = Vec::new();
    for (p, e) in factorize(m)?.factors {
        let p = Natural::from(p);
        let r = binomial_mod_prime_power(&top, &bottom, &p, 2 * e)?;
        parts.push((r, p.pow(2 * e)));
    }
    let (x, _) = crt(&parts).expect("prime powers of distinct primes are coprime");
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonPrimalityVerdict {
    /// `C(2m − 1, m − 1) ≢ 1 (mod m²)`: `m` is certainly composite.
    Composite,
    /// The congruence holds. True for every prime, and for squares of
    /// Wolstenholme primes.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPrimalityReport {
    pub m: Natural,
    pub verdict: NonPrimalityVerdict,
    /// `C(2m − 1, m − 1) mod m²`
    pub residue: Natural,
}

pub fn babbage_nonprimality_report(m: &Natural) -> Result<NonPrimalityReport> {
    if *m < Natural::from(3u32) {
        return Err(Error::below("m", 3, m));
    }
    let residue = central_binomial_mod_square(m)?;
    let verdict = if residue.is_one() {
        NonPrimalityVerdict::Inconclusive
    } else {
        NonPrimalityVerdict::Composite
    };
    Ok(NonPrimalityReport {
        m: m.clone(),
        verdict,
        residue,
    })
}

/// Babbage's one-sided test: a `Composite` verdict is always right.
pub fn babbage_nonprimality_test(m: &Natural) -> Result<NonPrimalityVerdict> {
    Ok(babbage_nonprimality_report(m)?.verdict)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WolstenholmeReport {
    pub p: Natural,
    /// `C(2p − 1, p − 1) mod p³`
    pub residue_mod_p3: Natural,
    /// `C(2p − 1, p − 1) mod p⁴`
    pub residue_mod_p4: Natural,
    pub is_wolstenholme_prime: bool,
    /// `B_{p−3} mod p`
    pub bernoulli_bp3_mod_p: Natural,
}

/// `B_{p−3} mod p` from `C(2p − 1, p − 1) ≡ 1 − (2/3)·p³·B_{p−3} (mod p⁴)`.
///
/// The residue modulo `p⁴` is lifted to `[0, p⁴)`, which is `1 + p³·t` with
/// `0 ≤ t < p`, giving `B_{p−3} ≡ −(3/2)·t (mod p)`.
fn bernoulli_from_residue(p: &Natural, residue_mod_p4: &Natural) -> Result<Natural> {
    let p3 = p.pow(3);
    let excess = Some(residue_mod_p4)
        .filter(|r| !r.is_zero())
        .map(|r| r - 1u32)
        .filter(|x| (x % &p3).is_zero())
        .ok_or_else(|| {
            Error::Internal(format!(
                "C(2p − 1, p − 1) ≡ {residue_mod_p4} (mod {p}⁴) is not 1 modulo p³"
            ))
        })?;
    let t = excess / &p3;
    let half = mod_inverse(&Natural::from(2u32), p).expect("p ≥ 5 is odd");
    let three_halves_t = Natural::from(3u32) * half * t % p;
    Ok((p - three_halves_t) % p)
}

pub fn bernoulli_bp3_mod_p(p: &Natural) -> Result<Natural> {
    require_prime_at_least(p, 5)?;
    let r4 = shifted_central_binomial_mod_prime_power(p, 4)?;
    bernoulli_from_residue(p, &r4)
}

pub fn wolstenholme_report(p: &Natural) -> Result<WolstenholmeReport> {
    require_prime_at_least(p, 5)?;
    let residue_mod_p4 = shifted_central_binomial_mod_prime_power(p, 4)?;
    let residue_mod_p3 = &residue_mod_p4 % p.pow(3);
    let bernoulli_bp3_mod_p = bernoulli_from_residue(p, &residue_mod_p4)?;
    let is_wolstenholme_prime = residue_mod_p4.is_one();
    if is_wolstenholme_prime != bernoulli_bp3_mod_p.is_zero() {
        return Err(Error::Internal(format!(
            "Wolstenholme flag and B_(p-3) mod {p} disagree"
        )));
    }
    Ok(WolstenholmeReport {
        p: p.clone(),
        residue_mod_p3,
        residue_mod_p4,
        is_wolstenholme_prime,
        bernoulli_bp3_mod_p,
    })
}

/// `C(2p − 1, p − 1) ≡ C(2p² − 1, p² − 1) (mod p⁴)`, the right side evaluated exactly.
pub fn johnson_congruence_check(p: &Natural) -> Result<bool> {
    let p_word = require_prime_at_least(p, 5)?;
    if p_word > JOHNSON_EXACT_LIMIT {
        return Err(Error::too_large("p", p, JOHNSON_EXACT_LIMIT));
    }
    let p2 = p * p;
    let p4 = &p2 * &p2;
    let left = shifted_central_binomial_mod_prime_power(p, 4)?;
    let right = binomial_exact(&((&p2 << 1u32) - 1u32), &(&p2 - 1u32))? % &p4;
    Ok(left == right)
}

/// `C(2p² − 1, p² − 1) mod p⁴`, split over `k ∈ [1, p² − 1]`.
///
/// Terms with `p | k` collapse to `(p + j)/j` and multiply out to
/// `C(2p − 1, p − 1)`. The remaining `(p² + k)/k` are units; their numerators
/// and denominators are accumulated separately and divided once.
pub fn counterexample_residue(p: &Natural) -> Result<Natural> {
    let p_word = require_prime_at_least(p, 5)?;
    let square = p_word
        .checked_mul(p_word)
        .filter(|&s| s <= ROW_SCAN_LIMIT)
        .ok_or_else(|| Error::too_large("p²", &(p * p), ROW_SCAN_LIMIT))?;
    let p4 = p.pow(4);
    let collapsed = shifted_central_binomial_mod_prime_power(p, 4)?;
    let modulus = Modulus::new(&p4)?;
    let residue = with_ring!(&modulus, ring => {
        let one = ring.one();
        let mut top = ring.lift_u64(square);
        let mut bottom = ring.zero();
        let mut num = ring.one();
        let mut den = ring.one();
        for _ in 0..p_word {
            for _ in 1..p_word {
                top = ring.add(&top, &one);
                bottom = ring.add(&bottom, &one);
                num = ring.mul(&num, &top);
                den = ring.mul(&den, &bottom);
            }
            // k ≡ 0 (mod p) is covered by `collapsed`.
            top = ring.add(&top, &one);
            bottom = ring.add(&bottom, &one);
        }
        let inv = ring
            .inverse(&den)
            .ok_or_else(|| Error::Internal("p-free denominator is not a unit".into()))?;
        let unit_part = ring.mul(&num, &inv);
        ring.to_natural(&ring.mul(&unit_part, &ring.lift(&collapsed)))
    });
    Ok(residue)
}

/// True iff `m = p²` satisfies `C(2m − 1, m − 1) ≡ 1 (mod m²)`, making it a
/// composite that Babbage's non-primality test cannot catch.
pub fn counterexample_verify(p: &Natural) -> Result<bool> {
    Ok(counterexample_residue(p)?.is_one())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenConverse {
    /// `C(2m − 1, m − 1) mod 4`
    pub residue_mod_4: Natural,
    /// `C(2m − 1, m − 1) ≢ 1 (mod m²)`
    pub holds: bool,
}

pub fn even_converse_check(m: &Natural) -> Result<EvenConverse> {
    if *m < Natural::from(2u32) {
        return Err(Error::below("m", 2, m));
    }
    let residue_mod_4 = binomial_mod(&((m << 1u32) - 1u32), &(m - 1u32), &Natural::from(4u32))?;
    let holds = !central_binomial_mod_square(m)?.is_one();
    Ok(EvenConverse {
        residue_mod_4,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nat;

    #[test]
    fn nonprimality() {
        let r = babbage_nonprimality_report(&nat(9)).unwrap();
        assert_eq!(r.verdict, NonPrimalityVerdict::Composite);
        assert_eq!(r.residue, nat(10));
        let r = babbage_nonprimality_report(&nat(7)).unwrap();
        assert_eq!(r.verdict, NonPrimalityVerdict::Inconclusive);
        assert!(babbage_nonprimality_test(&nat(2)).is_err());
    }

    #[test]
    fn central_square_matches_exact() {
        for m in 1..300u64 {
            let exact = binomial_exact(&nat(2 * m - 1), &nat(m - 1)).unwrap() % nat(m * m);
            assert_eq!(
                central_binomial_mod_square(&nat(m)).unwrap(),
                exact,
                "m={m}"
            );
        }
    }

    #[test]
    fn wolstenholme_small_primes() {
        let r = wolstenholme_report(&nat(5)).unwrap();
        assert_eq!(r.residue_mod_p3, nat(1));
        assert_eq!(r.residue_mod_p4, nat(126));
        assert!(!r.is_wolstenholme_prime);
        assert_eq!(r.bernoulli_bp3_mod_p, nat(1));
        assert_eq!(bernoulli_bp3_mod_p(&nat(7)).unwrap(), nat(3));
        assert!(wolstenholme_report(&nat(3)).is_err());
        assert_eq!(wolstenholme_report(&nat(25)), Err(Error::NotPrime(nat(25))));
    }

    #[test]
    fn johnson() {
        for p in [5u64, 7, 11, 13] {
            assert!(johnson_congruence_check(&nat(p)).unwrap());
        }
        assert!(johnson_congruence_check(&nat(9)).is_err());
        assert!(johnson_congruence_check(&nat(211)).is_err());
    }

    #[test]
    fn counterexample_routes_agree() {
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
            let split = counterexample_residue(&nat(p)).unwrap();
            let crt_route = central_binomial_mod_square(&nat(p * p)).unwrap();
            assert_eq!(split, crt_route, "p={p}");
            assert!(!counterexample_verify(&nat(p)).unwrap());
        }
        assert_eq!(
            counterexample_residue(&nat(5)).unwrap(),
            binomial_exact(&nat(49), &nat(24)).unwrap() % nat(625)
        );
        assert_eq!(counterexample_residue(&nat(5)).unwrap(), nat(126));
    }

    #[test]
    fn even_converse() {
        assert_eq!(even_converse_check(&nat(2)).unwrap().residue_mod_4, nat(3));
        assert_eq!(even_converse_check(&nat(4)).unwrap().residue_mod_4, nat(3));
        let r = even_converse_check(&nat(6)).unwrap();
        assert_eq!(r.residue_mod_4, nat(2));
        assert!(r.holds);
        assert!(even_converse_check(&nat(1)).is_err());
    }
}
