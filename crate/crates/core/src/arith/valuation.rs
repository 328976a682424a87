use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::factor::is_prime_trial;
use super::Natural;
use crate::error::{Error, Result};

/// `base^exponent` exactly divides the valued integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    pub base: Natural,
    pub exponent: u64,
}

fn require_prime(p: &Natural) -> Result<()> {
    if is_prime_trial(p)? {
        Ok(())
    } else {
        Err(Error::NotPrime(p.clone()))
    }
}

/// Largest `e` with `pᵉ | k`.
pub fn padic_valuation(k: &Natural, p: &Natural) -> Result<Valuation> {
    if k.is_zero() {
        return Err(Error::ZeroValuation);
    }
    require_prime(p)?;
    let exponent = match (k.to_u64(), p.to_u64()) {
        (Some(mut k), Some(p)) => {
            let mut e = 0;
            while k % p == 0 {
                k /= p;
                e += 1;
            }
            e
        }
        _ => {
            if *p == Natural::from(2u32) {
                k.trailing_zeros().unwrap_or(0)
            } else {
                let mut k = k.clone();
                let mut e = 0;
                loop {
                    let (q, r) = k.div_rem(p);
                    if !r.is_zero() {
                        break e;
                    }
                    k = q;
                    e += 1;
                }
            }
        }
    };
    Ok(Valuation {
        base: p.clone(),
        exponent,
    })
}

pub(crate) fn carries_u64(mut a: u64, mut b: u64, p: u64) -> u64 {
    let mut carry = 0u64;
    let mut count = 0u64;
    while a > 0 || b > 0 || carry > 0 {
        // Digits are < p, so the digit sum is < 2p and fits.
        let s = (a % p) as u128 + (b % p) as u128 + carry as u128;
        carry = u64::from(s >= p as u128);
        count += carry;
        a /= p;
        b /= p;
    }
    count
}

/// Number of carries when adding `a` and `b` in base `p`, which by Kummer's
/// theorem is the exponent of `p` in `C(a + b, a)`.
pub fn kummer_valuation(a: &Natural, b: &Natural, p: &Natural) -> Result<u64> {
    require_prime(p)?;
    if let (Some(a), Some(b), Some(p)) = (a.to_u64(), b.to_u64(), p.to_u64()) {
        return Ok(carries_u64(a, b, p));
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut carry = Natural::zero();
    let mut count = 0;
    while !a.is_zero() || !b.is_zero() || !carry.is_zero() {
        let (qa, da) = a.div_rem(p);
        let (qb, db) = b.div_rem(p);
        let s = da + db + &carry;
        carry = if &s >= p {
            count += 1;
            Natural::from(1u32)
        } else {
            Natural::zero()
        };
        a = qa;
        b = qb;
    }
    Ok(count)
}
