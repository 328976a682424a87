//! Trial-division factoring and primality, plus a plain Eratosthenes sieve.
//!
//! These are deliberately naive: they serve as independent oracles for the
//! binomial criteria, so they must not share any machinery with them.

use num_traits::ToPrimitive;

use super::Natural;
use crate::error::{Error, Result};

/// Largest input accepted by the trial-division routines.
pub const TRIAL_DIVISION_LIMIT: u64 = u64::MAX;

/// Prime factorization as `(prime, exponent)` pairs, primes strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self) -> Natural {
        self.factors
            .iter()
            .fold(Natural::from(1u32), |acc, &(p, e)| {
                acc * Natural::from(p).pow(e)
            })
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    /// `Some((p, k))` when the factored number is `pᵏ`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }
}

fn to_word(what: &'static str, m: &Natural) -> Result<u64> {
    m.to_u64()
        .ok_or_else(|| Error::too_large(what, m, TRIAL_DIVISION_LIMIT))
}

/// Smallest prime factor of `m ≥ 2`, searching candidates 2, 3, then 6k ± 1.
fn smallest_factor_u64(m: u64) -> u64 {
    debug_assert!(m >= 2);
    if m.is_multiple_of(2) {
        return 2;
    }
    if m.is_multiple_of(3) {
        return 3;
    }
    let mut d = 5u64;
    while d <= m / d {
        if m.is_multiple_of(d) {
            return d;
        }
        if m.is_multiple_of(d + 2) {
            return d + 2;
        }
        d += 6;
    }
    m
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    n >= 2 && smallest_factor_u64(n) == n
}

/// Primality by trial division up to `√n`.
pub fn is_prime_trial(n: &Natural) -> Result<bool> {
    Ok(is_prime_u64(to_word("primality candidate", n)?))
}

pub fn least_prime_factor_trial(m: &Natural) -> Result<Natural> {
    let w = to_word("m", m)?;
    if w < 2 {
        return Err(Error::below("m", 2, m));
    }
    Ok(Natural::from(smallest_factor_u64(w)))
}

pub(crate) fn factorize_u64(mut m: u64) -> Factorization {
    let mut factors = Vec::new();
    while m > 1 {
        let p = smallest_factor_u64(m);
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        factors.push((p, e));
    }
    Factorization { factors }
}

/// Complete factorization of `m ≥ 2` by trial division.
pub fn factorize(m: &Natural) -> Result<Factorization> {
    let w = to_word("m", m)?;
    if w < 2 {
        return Err(Error::below("m", 2, m));
    }
    Ok(factorize_u64(w))
}

/// All positive divisors of `m`, ascending. Empty for `m = 0`.
pub fn divisors(m: u64) -> Vec<u64> {
    if m == 0 {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d <= m / d {
        if m.is_multiple_of(d) {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Primes `≤ n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}
