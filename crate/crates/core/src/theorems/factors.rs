use num_traits::Zero;

use crate::arith::{binomial_mod, is_prime_trial, padic_valuation, Natural};
use crate::error::{Error, Result};

/// Residues of `C(m + p, p)` for a prime `p | m` with `pʳ ∥ m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorIncongruence {
    /// `C(m + p, p) mod m`, never 1.
    pub residue_mod_m: Natural,
    /// `C(m + p, p) mod pʳ`, equal to `(m/p + 1) mod pʳ` and never 1.
    pub residue_mod_pr: Natural,
    pub r: u64,
}

fn require_divisor(m: &Natural, d: &Natural) -> Result<()> {
    if d.is_zero() || !(m % d).is_zero() {
        return Err(Error::NotADivisor {
            divisor: d.clone(),
            value: m.clone(),
        });
    }
    Ok(())
}

pub fn prime_factor_incongruence(m: &Natural, p: &Natural) -> Result<PrimeFactorIncongruence> {
    if *m < Natural::from(2u32) {
        return Err(Error::below("m", 2, m));
    }
    if !is_prime_trial(p)? {
        return Err(Error::NotPrime(p.clone()));
    }
    require_divisor(m, p)?;
    let top = m + p;
    let residue_mod_m = binomial_mod(&top, p, m)?;
    let r = padic_valuation(m, p)?.exponent;
    let pr = p.pow(r as u32);
    let residue_mod_pr = binomial_mod(&top, p, &pr)?;
    Ok(PrimeFactorIncongruence {
        residue_mod_m,
        residue_mod_pr,
        r,
    })
}

/// True iff `C(m + d, d) ≡ 1 (mod m)` for a divisor `d ≥ 2` of `m`.
pub fn divisor_congruence_holds(m: &Natural, d: &Natural) -> Result<bool> {
    if *m < Natural::from(2u32) {
        return Err(Error::below("m", 2, m));
    }
    if *d < Natural::from(2u32) {
        return Err(Error::below("d", 2, d));
    }
    require_divisor(m, d)?;
    Ok(binomial_mod(&(m + d), d, m)? == Natural::from(1u32))
}
