//! Executable forms of the binomial-coefficient criteria.
//!
//! Each check returns its verdict together with the residues that witness it,
//! so a caller can recompute and audit any answer. Precondition violations are
//! reported as [`Error`](crate::Error)s, never as negative verdicts.

mod factors;
mod lemmas;
mod primality;
mod row;
mod wolstenholme;

pub use factors::{divisor_congruence_holds, prime_factor_incongruence, PrimeFactorIncongruence};
pub use lemmas::{lemma1_valuation, lemma2_parity};
pub use primality::{
    babbage_primality_report, babbage_primality_test, lpf_via_congruence, mestrovic_check,
    sharp_babbage_primality_report, sharp_babbage_primality_test, wilson_test, LpfResult,
};
pub use row::ROW_SCAN_LIMIT;
pub use wolstenholme::{
    babbage_nonprimality_report, babbage_nonprimality_test, bernoulli_bp3_mod_p,
    central_binomial_mod_square, counterexample_residue, counterexample_verify,
    even_converse_check, johnson_congruence_check, wolstenholme_report, EvenConverse,
    NonPrimalityReport, NonPrimalityVerdict, WolstenholmeReport, JOHNSON_EXACT_LIMIT,
};

use crate::arith::Natural;

/// Outcome of a family of congruences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

/// The first index at which a congruence family failed, and the residue there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub n: Natural,
    pub residue: Natural,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub subject: Natural,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}
