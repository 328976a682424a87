use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Natural;
use crate::error::{Error, Result};

/// Witness of Bézout's identity: `a·x + b·y = g = gcd(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub g: Natural,
    pub a: BigInt,
    pub b: BigInt,
}

impl BezoutCertificate {
    /// Re-evaluates `a·x + b·y` and compares it with `g`.
    pub fn verify(&self, x: &Natural, y: &Natural) -> bool {
        let lhs = &self.a * BigInt::from(x.clone()) + &self.b * BigInt::from(y.clone());
        lhs == BigInt::from(self.g.clone())
    }
}

/// Extended Euclidean algorithm.
pub fn gcd_extended(x: &Natural, y: &Natural) -> Result<BezoutCertificate> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::BothZero);
    }
    // Invariant: old_r = old_s·x + old_t·y and r = s·x + t·y.
    let (mut old_r, mut r) = (BigInt::from(x.clone()), BigInt::from(y.clone()));
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let (q, rem) = old_r.div_rem(&r);
        old_r = std::mem::replace(&mut r, rem);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    debug_assert!(!old_r.is_negative());
    let (_, g) = old_r.into_parts();
    Ok(BezoutCertificate {
        g,
        a: old_s,
        b: old_t,
    })
}

/// Inverse of `a` modulo `m`, or `None` when `gcd(a, m) ≠ 1`.
pub fn mod_inverse(a: &Natural, m: &Natural) -> Option<Natural> {
    if m.is_zero() {
        return None;
    }
    if m.is_one() {
        return Some(Natural::zero());
    }
    let cert = gcd_extended(&(a % m), m).ok()?;
    if !cert.g.is_one() {
        return None;
    }
    let m_int = BigInt::from(m.clone());
    let a_inv = cert.a.mod_floor(&m_int);
    match a_inv.into_parts() {
        (Sign::Minus, _) => unreachable!("mod_floor with a positive modulus is non-negative"),
        (_, v) => Some(v),
    }
}

/// Chinese remaindering: the unique `x mod ∏ mᵢ` with `x ≡ rᵢ (mod mᵢ)`.
///
/// Moduli must be pairwise coprime; returns `None` otherwise.
pub fn crt(parts: &[(Natural, Natural)]) -> Option<(Natural, Natural)> {
    let mut x = Natural::zero();
    let mut modulus = Natural::one();
    for (r, m) in parts {
        let inv = mod_inverse(&(&modulus % m), m)?;
        // x' = x + M·((r − x)·M⁻¹ mod m)
        let x_mod = &x % m;
        let diff = if r % m >= x_mod {
            r % m - x_mod
        } else {
            r % m + m - x_mod
        };
        let t = diff * inv % m;
        x += &modulus * t;
        modulus *= m;
    }
    Some((x, modulus))
}

/// Word-sized [`mod_inverse`].
pub fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
