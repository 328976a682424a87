//! The 2-adic facts behind the even-number converse.

use num_traits::Zero;

use crate::arith::{kummer_valuation, padic_valuation, Natural};
use crate::error::{Error, Result};

/// `v₂(C(m, n))` as `v₂(m) − v₂(n)`, valid when `1 ≤ n ≤ m` and `n ≤ 2^{v₂(m)}`.
///
/// Inputs outside that range are rejected: the formula can be wrong there,
/// e.g. `v₂(C(10, 6)) = 1` while `v₂(10) − v₂(6) = 0`.
pub fn lemma1_valuation(m: &Natural, n: &Natural) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::below("n", 1, n));
    }
    if n > m {
        return Err(Error::Precondition(format!("n = {n} exceeds m = {m}")));
    }
    let two = Natural::from(2u32);
    let vm = padic_valuation(m, &two)?.exponent;
    let bound = Natural::from(1u32) << vm;
    if *n > bound {
        return Err(Error::Precondition(format!(
            "n = {n} exceeds 2^v(m) = {bound}"
        )));
    }
    let vn = padic_valuation(n, &two)?.exponent;
    Ok(vm - vn)
}

/// True iff `C(2m − 1, m − 1)` is odd, i.e. iff `m` is a power of two.
///
/// Uses `C(2m, m) = 2·C(2m − 1, m − 1)` and counts the carries of `m + m` in
/// base 2; the count is cross-checked against the popcount of `m`.
pub fn lemma2_parity(m: &Natural) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::below("m", 1, m));
    }
    let carries = kummer_valuation(m, m, &Natural::from(2u32))?;
    if carries != m.count_ones() {
        return Err(Error::Internal(format!(
            "{carries} carries adding {m} + {m} but popcount is {}",
            m.count_ones()
        )));
    }
    Ok(carries == 1)
}
