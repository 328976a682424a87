//! Exact and modular big-integer primitives.
//!
//! Every theorem check in [`crate::theorems`] is assembled from these pieces.
//! Values are arbitrary precision ([`Natural`]); hot loops drop to machine
//! words through the [`ring`] abstraction when the modulus allows it.

mod bezout;
mod binomial;
pub(crate) mod factor;
pub mod ring;
mod valuation;

pub use bezout::{crt, gcd_extended, mod_inverse, mod_inverse_u64, BezoutCertificate};
pub use binomial::{
    binomial_exact, binomial_mod, binomial_mod_prime_power, binomial_mod_with,
    lucas_binomial_mod_p, shifted_central_binomial_mod_prime_power, BinomialStrategy,
    EXACT_ROW_LIMIT,
};
pub use factor::{
    divisors, factorize, is_prime_trial, least_prime_factor_trial, primes_up_to, Factorization,
    TRIAL_DIVISION_LIMIT,
};
pub use valuation::{kummer_valuation, padic_valuation, Valuation};

use num_bigint::BigUint;

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Shorthand for lifting a machine word into a [`Natural`].
pub fn nat(value: u64) -> Natural {
    Natural::from(value)
}
