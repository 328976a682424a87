//! Python bindings for `babbage_core`.
//!
//! Integers cross the boundary as Python `int`s of any size. Domain errors
//! raise `ValueError`, internal failures raise `RuntimeError`.

use babbage_core::arith::{self, Natural};
use babbage_core::sequences::{self, Scanner};
use babbage_core::theorems::{self, NonPrimalityVerdict, Verdict};
use babbage_core::Error;
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use std::ops::ControlFlow;

fn py_err(e: Error) -> PyErr {
    if e.is_domain() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for babbage_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// Result of a row of congruences `C(m + n, n) ≡ 1`.
#[pyclass(frozen, get_all, skip_from_py_object, module = "babbage")]
#[derive(Clone)]
pub struct CongruenceReport {
    subject: Natural,
    /// "holds", "fails" or "inconclusive"
    verdict: &'static str,
    witness_n: Option<Natural>,
    witness_residue: Option<Natural>,
}

#[pymethods]
impl CongruenceReport {
    fn __repr__(&self) -> String {
        match (&self.witness_n, &self.witness_residue) {
            (Some(n), Some(r)) => format!(
                "CongruenceReport(subject={}, verdict={:?}, n={n}, residue={r})",
                self.subject, self.verdict
            ),
            _ => format!(
                "CongruenceReport(subject={}, verdict={:?})",
                self.subject, self.verdict
            ),
        }
    }
}

impl From<theorems::CongruenceReport> for CongruenceReport {
    fn from(r: theorems::CongruenceReport) -> Self {
        let verdict = match r.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        };
        let (witness_n, witness_residue) = match r.witness {
            Some(w) => (Some(w.n), Some(w.residue)),
            None => (None, None),
        };
        Self {
            subject: r.subject,
            verdict,
            witness_n,
            witness_residue,
        }
    }
}

#[pyclass(frozen, get_all, skip_from_py_object, module = "babbage")]
#[derive(Clone)]
pub struct WolstenholmeReport {
    p: Natural,
    residue_mod_p3: Natural,
    residue_mod_p4: Natural,
    is_wolstenholme_prime: bool,
    bernoulli_bp3_mod_p: Natural,
}

#[pymethods]
impl WolstenholmeReport {
    fn __repr__(&self) -> String {
        format!(
            "WolstenholmeReport(p={}, mod_p3={}, mod_p4={}, wolstenholme_prime={}, bernoulli_bp3_mod_p={})",
            self.p,
            self.residue_mod_p3,
            self.residue_mod_p4,
            if self.is_wolstenholme_prime { "True" } else { "False" },
            self.bernoulli_bp3_mod_p
        )
    }
}

#[pyclass(frozen, get_all, skip_from_py_object, module = "babbage")]
#[derive(Clone)]
pub struct SequenceRecord {
    m: u64,
    smallest_d: u64,
    all_d: Vec<u64>,
}

#[pymethods]
impl SequenceRecord {
    fn __repr__(&self) -> String {
        format!(
            "SequenceRecord(m={}, smallest_d={}, all_d={:?})",
            self.m, self.smallest_d, self.all_d
        )
    }
}

impl From<&sequences::SequenceRecord> for SequenceRecord {
    fn from(r: &sequences::SequenceRecord) -> Self {
        Self {
            m: r.m,
            smallest_d: r.smallest_d,
            all_d: r.all_d.clone(),
        }
    }
}

#[pyfunction]
fn binomial_exact(a: Natural, b: Natural) -> PyResult<Natural> {
    arith::binomial_exact(&a, &b).py()
}

#[pyfunction]
fn binomial_mod(a: Natural, b: Natural, m: Natural) -> PyResult<Natural> {
    arith::binomial_mod(&a, &b, &m).py()
}

#[pyfunction]
fn lucas_binomial_mod_p(a: Natural, b: Natural, p: Natural) -> PyResult<Natural> {
    arith::lucas_binomial_mod_p(&a, &b, &p).py()
}

#[pyfunction]
fn kummer_valuation(a: Natural, b: Natural, p: Natural) -> PyResult<u64> {
    arith::kummer_valuation(&a, &b, &p).py()
}

#[pyfunction]
fn padic_valuation(k: Natural, p: Natural) -> PyResult<u64> {
    Ok(arith::padic_valuation(&k, &p).py()?.exponent)
}

#[pyfunction]
fn shifted_central_binomial_mod_prime_power(p: Natural, e: u32) -> PyResult<Natural> {
    arith::shifted_central_binomial_mod_prime_power(&p, e).py()
}

/// Returns `(g, a, b)` with `a·x + b·y = g`.
#[pyfunction]
fn gcd_extended(x: Natural, y: Natural) -> PyResult<(Natural, BigInt, BigInt)> {
    let c = arith::gcd_extended(&x, &y).py()?;
    Ok((c.g, c.a, c.b))
}

/// `[(p, e), …]` by trial division.
#[pyfunction]
fn factorize(m: Natural) -> PyResult<Vec<(u64, u32)>> {
    Ok(arith::factorize(&m).py()?.factors)
}

#[pyfunction]
fn wilson_test(p: Natural) -> PyResult<bool> {
    theorems::wilson_test(&p).py()
}

#[pyfunction]
fn babbage_primality_test(p: Natural) -> PyResult<bool> {
    theorems::babbage_primality_test(&p).py()
}

#[pyfunction]
fn babbage_primality_report(p: Natural) -> PyResult<CongruenceReport> {
    Ok(theorems::babbage_primality_report(&p).py()?.into())
}

#[pyfunction]
fn sharp_babbage_primality_test(p: Natural) -> PyResult<bool> {
    theorems::sharp_babbage_primality_test(&p).py()
}

#[pyfunction]
fn sharp_babbage_primality_report(p: Natural) -> PyResult<CongruenceReport> {
    Ok(theorems::sharp_babbage_primality_report(&p).py()?.into())
}

/// Returns `(ell, residue)`.
#[pyfunction]
fn lpf_via_congruence(m: Natural) -> PyResult<(Natural, Natural)> {
    let r = theorems::lpf_via_congruence(&m).py()?;
    Ok((r.ell, r.residue))
}

#[pyfunction]
fn mestrovic_check(m: Natural, p: Natural) -> PyResult<bool> {
    theorems::mestrovic_check(&m, &p).py()
}

/// Returns `(residue_mod_m, residue_mod_pr, r)`.
#[pyfunction]
fn prime_factor_incongruence(m: Natural, p: Natural) -> PyResult<(Natural, Natural, u64)> {
    let r = theorems::prime_factor_incongruence(&m, &p).py()?;
    Ok((r.residue_mod_m, r.residue_mod_pr, r.r))
}

#[pyfunction]
fn divisor_congruence_holds(m: Natural, d: Natural) -> PyResult<bool> {
    theorems::divisor_congruence_holds(&m, &d).py()
}

/// "composite" or "inconclusive".
#[pyfunction]
fn babbage_nonprimality_test(m: Natural) -> PyResult<&'static str> {
    Ok(match theorems::babbage_nonprimality_test(&m).py()? {
        NonPrimalityVerdict::Composite => "composite",
        NonPrimalityVerdict::Inconclusive => "inconclusive",
    })
}

#[pyfunction]
fn wolstenholme_report(p: Natural) -> PyResult<WolstenholmeReport> {
    let r = theorems::wolstenholme_report(&p).py()?;
    Ok(WolstenholmeReport {
        p: r.p,
        residue_mod_p3: r.residue_mod_p3,
        residue_mod_p4: r.residue_mod_p4,
        is_wolstenholme_prime: r.is_wolstenholme_prime,
        bernoulli_bp3_mod_p: r.bernoulli_bp3_mod_p,
    })
}

#[pyfunction]
fn bernoulli_bp3_mod_p(p: Natural) -> PyResult<Natural> {
    theorems::bernoulli_bp3_mod_p(&p).py()
}

#[pyfunction]
fn johnson_congruence_check(p: Natural) -> PyResult<bool> {
    theorems::johnson_congruence_check(&p).py()
}

#[pyfunction]
fn counterexample_verify(py: Python<'_>, p: Natural) -> PyResult<bool> {
    py.detach(|| theorems::counterexample_verify(&p)).py()
}

/// Returns `(residue_mod_4, holds)`.
#[pyfunction]
fn even_converse_check(m: Natural) -> PyResult<(Natural, bool)> {
    let r = theorems::even_converse_check(&m).py()?;
    Ok((r.residue_mod_4, r.holds))
}

#[pyfunction]
fn lemma1_valuation(m: Natural, n: Natural) -> PyResult<u64> {
    theorems::lemma1_valuation(&m, &n).py()
}

#[pyfunction]
fn lemma2_parity(m: Natural) -> PyResult<bool> {
    theorems::lemma2_parity(&m).py()
}

#[pyfunction]
fn qualifying_divisors(m: u64) -> PyResult<Vec<u64>> {
    sequences::qualifying_divisors(m).py()
}

#[pyfunction]
#[pyo3(signature = (limit, workers = None))]
fn a290040_scan(
    py: Python<'_>,
    limit: u64,
    workers: Option<usize>,
) -> PyResult<Vec<SequenceRecord>> {
    if limit < 2 {
        return Err(PyValueError::new_err(format!(
            "limit must be at least 2, got {limit}"
        )));
    }
    let scanner = workers.map_or_else(Scanner::default, Scanner::new);
    py.detach(|| {
        let mut records = Vec::new();
        scanner.run(2, limit, |event| {
            if let sequences::ScanEvent::Record(r) = event {
                records.push(SequenceRecord::from(r));
            }
            ControlFlow::Continue(())
        })?;
        Ok(records)
    })
    .py()
}

#[pymodule]
pub fn babbage(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<CongruenceReport>()?;
    m.add_class::<WolstenholmeReport>()?;
    m.add_class::<SequenceRecord>()?;
    m.add_function(wrap_pyfunction!(binomial_exact, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_mod, m)?)?;
    m.add_function(wrap_pyfunction!(lucas_binomial_mod_p, m)?)?;
    m.add_function(wrap_pyfunction!(kummer_valuation, m)?)?;
    m.add_function(wrap_pyfunction!(padic_valuation, m)?)?;
    m.add_function(wrap_pyfunction!(
        shifted_central_binomial_mod_prime_power,
        m
    )?)?;
    m.add_function(wrap_pyfunction!(gcd_extended, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(wilson_test, m)?)?;
    m.add_function(wrap_pyfunction!(babbage_primality_test, m)?)?;
    m.add_function(wrap_pyfunction!(babbage_primality_report, m)?)?;
    m.add_function(wrap_pyfunction!(sharp_babbage_primality_test, m)?)?;
    m.add_function(wrap_pyfunction!(sharp_babbage_primality_report, m)?)?;
    m.add_function(wrap_pyfunction!(lpf_via_congruence, m)?)?;
    m.add_function(wrap_pyfunction!(mestrovic_check, m)?)?;
    m.add_function(wrap_pyfunction!(prime_factor_incongruence, m)?)?;
    m.add_function(wrap_pyfunction!(divisor_congruence_holds, m)?)?;
    m.add_function(wrap_pyfunction!(babbage_nonprimality_test, m)?)?;
    m.add_function(wrap_pyfunction!(wolstenholme_report, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_bp3_mod_p, m)?)?;
    m.add_function(wrap_pyfunction!(johnson_congruence_check, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample_verify, m)?)?;
    m.add_function(wrap_pyfunction!(even_converse_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1_valuation, m)?)?;
    m.add_function(wrap_pyfunction!(lemma2_parity, m)?)?;
    m.add_function(wrap_pyfunction!(qualifying_divisors, m)?)?;
    m.add_function(wrap_pyfunction!(a290040_scan, m)?)?;
    Ok(())
}
