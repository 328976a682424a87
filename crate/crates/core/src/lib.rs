//! Binomial-coefficient congruence tests for primality and least prime factors.
//!
//! - [`arith`]: exact and modular binomials, Lucas, Kummer, valuations, factoring.
//! - [`theorems`]: Wilson, Babbage (full and sharp), least-prime-factor,
//!   Mestrović, Wolstenholme, the Brinkmann–Johnson congruences and the
//!   2-adic lemmas behind the even-number converse.
//! - [`sequences`]: scanner for OEIS A290040/A290041 with checkpointing.
//! - [`cli`]: the `babbage` command-line front end.

pub mod arith;
pub mod cli;
mod error;
pub mod sequences;
pub mod theorems;

pub use arith::{nat, Natural};
pub use error::{Error, Result};
