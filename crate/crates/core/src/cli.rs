//! The `babbage` command line.
//!
//! Exit codes: `0` when a command completed (whatever its verdict), `1` for
//! usage and domain errors, `2` for internal failures.

use std::ffi::OsString;
use std::io::{self, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use crate::arith::{
    binomial_exact, binomial_mod, kummer_valuation, lucas_binomial_mod_p, padic_valuation, Natural,
};
use crate::error::{Error, Result};
use crate::sequences::{
    format_record, prime_power_scan, OutputFormat, ScanCheckpoint, ScanEvent, Scanner,
};
use crate::theorems::{self, NonPrimalityVerdict, Verdict};

#[derive(Debug, Parser)]
#[command(
    name = "babbage",
    version,
    about = "Binomial-coefficient congruence tests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a primality or compositeness criterion on m.
    Test {
        #[arg(value_enum)]
        kind: TestKind,
        m: Natural,
        /// Prime candidate for `mestrovic`.
        p: Option<Natural>,
    },
    /// Least prime factor of m from the first failing binomial congruence.
    Lpf { m: Natural },
    /// Reproduce an OEIS sequence.
    Seq(SeqArgs),
    /// Exploratory scans.
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
        #[arg(long)]
        limit: u64,
    },
    /// C(2p-1, p-1) modulo p^3 and p^4, and B_{p-3} mod p.
    Wolstenholme { p: Natural },
    /// Run a named cross-check and print the values compared.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        args: Vec<Natural>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TestKind {
    Wilson,
    Babbage,
    SharpBabbage,
    Nonprimality,
    Mestrovic,
    EvenConverse,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScanKind {
    PrimePower,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyKind {
    Lucas,
    Kummer,
    Vandermonde,
    Lemma1,
    Lemma2,
    Johnson,
    Counterexample,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeqName {
    A290040,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Json,
    Tsv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Human => OutputFormat::Human,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Tsv => OutputFormat::Tsv,
        }
    }
}

#[derive(Debug, Args)]
struct SeqArgs {
    #[arg(value_enum)]
    name: SeqName,
    #[arg(long)]
    limit: u64,
    #[arg(long, value_enum, default_value = "human")]
    format: FormatArg,
    /// Resume from and keep updating this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

/// Parses `argv` (including the program name), runs it, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if !e.use_stderr() {
                let _ = out.write_all(text.as_bytes());
                return 0;
            }
            let first = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("error: bad arguments");
            let _ = writeln!(err, "{first}");
            return 1;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_domain() {
                1
            } else {
                2
            }
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Test { kind, m, p } => run_test(kind, &m, p.as_ref(), out),
        Command::Lpf { m } => {
            let r = theorems::lpf_via_congruence(&m)?;
            writeln!(out, "ell={} residue={}", r.ell, r.residue)?;
            Ok(())
        }
        Command::Seq(args) => run_seq(&args, out, err),
        Command::Scan {
            kind: ScanKind::PrimePower,
            limit,
        } => {
            if limit < 2 {
                return Err(Error::below("limit", 2, &Natural::from(limit)));
            }
            writeln!(err, "scanning qualifying divisors up to {limit}")?;
            let report = prime_power_scan(limit)?;
            writeln!(out, "{report}")?;
            Ok(())
        }
        Command::Wolstenholme { p } => {
            let r = theorems::wolstenholme_report(&p)?;
            writeln!(
                out,
                "p={} mod_p3={} mod_p4={} wolstenholme_prime={} B_{{p-3}} mod p={}",
                r.p,
                r.residue_mod_p3,
                r.residue_mod_p4,
                r.is_wolstenholme_prime,
                r.bernoulli_bp3_mod_p
            )?;
            Ok(())
        }
        Command::Verify { kind, args } => run_verify(kind, &args, out),
    }
}

fn no_extra(kind: &str, p: Option<&Natural>) -> Result<()> {
    match p {
        Some(p) => Err(Error::Precondition(format!(
            "`test {kind}` takes one argument, got extra {p}"
        ))),
        None => Ok(()),
    }
}

fn report_line(m: &Natural, report: &theorems::CongruenceReport) -> String {
    let prime = report.verdict == Verdict::Holds;
    match &report.witness {
        Some(w) => format!("{m} prime={prime} n={} residue={}", w.n, w.residue),
        None => format!("{m} prime={prime}"),
    }
}

fn run_test(kind: TestKind, m: &Natural, p: Option<&Natural>, out: &mut dyn Write) -> Result<()> {
    let line = match kind {
        TestKind::Wilson => {
            no_extra("wilson", p)?;
            format!("{m} prime={}", theorems::wilson_test(m)?)
        }
        TestKind::Babbage => {
            no_extra("babbage", p)?;
            report_line(m, &theorems::babbage_primality_report(m)?)
        }
        TestKind::SharpBabbage => {
            no_extra("sharp-babbage", p)?;
            report_line(m, &theorems::sharp_babbage_primality_report(m)?)
        }
        TestKind::Nonprimality => {
            no_extra("nonprimality", p)?;
            let r = theorems::babbage_nonprimality_report(m)?;
            let verdict = match r.verdict {
                NonPrimalityVerdict::Composite => "composite",
                NonPrimalityVerdict::Inconclusive => "inconclusive",
            };
            format!("{m} verdict={verdict} residue_mod_m2={}", r.residue)
        }
        TestKind::Mestrovic => {
            let p =
                p.ok_or_else(|| Error::Precondition("`test mestrovic` needs <m> <p>".into()))?;
            format!("m={m} p={p} holds={}", theorems::mestrovic_check(m, p)?)
        }
        TestKind::EvenConverse => {
            no_extra("even-converse", p)?;
            let r = theorems::even_converse_check(m)?;
            format!("{m} residue_mod_4={} holds={}", r.residue_mod_4, r.holds)
        }
    };
    writeln!(out, "{line}")?;
    Ok(())
}

fn run_seq(args: &SeqArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let SeqName::A290040 = args.name;
    if args.limit < 2 {
        return Err(Error::below("limit", 2, &Natural::from(args.limit)));
    }
    let scanner = match args.workers {
        Some(0) => return Err(Error::below("workers", 1, &Natural::from(0u32))),
        Some(k) => Scanner::new(k),
        None => Scanner::default(),
    };
    let format = OutputFormat::from(args.format);
    emit_a290040(
        &scanner,
        args.limit,
        format,
        args.checkpoint.as_deref(),
        out,
        err,
        |_| false,
    )?;
    Ok(())
}

/// Writes A290040 records up to `limit`, resuming from and updating
/// `checkpoint` if given. `stop_after` is consulted after each record is
/// written and checkpointed; returning true ends the run there, as if
/// interrupted. Returns whether the scan reached `limit`.
pub fn emit_a290040(
    scanner: &Scanner,
    limit: u64,
    format: OutputFormat,
    checkpoint: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
    mut stop_after: impl FnMut(u64) -> bool,
) -> Result<bool> {
    let resume = match checkpoint {
        Some(path) => ScanCheckpoint::load(path).map_err(|e| match e.kind() {
            io::ErrorKind::InvalidData => Error::Checkpoint(format!("{}: {e}", path.display())),
            _ => Error::from(e),
        })?,
        None => None,
    };
    let (start, mut emitted) = resume.map_or((2, 0), |c| (c.next_m, c.records_emitted));
    if resume.is_some() {
        writeln!(err, "resuming at m={start} after {emitted} records")?;
    }
    let mut failure = None;
    let mut last_report = start;
    let completed = scanner.run(start, limit, |event| {
        let step = (|| -> Result<bool> {
            match event {
                ScanEvent::Record(r) => {
                    writeln!(out, "{}", format_record(r, format))?;
                    out.flush()?;
                    emitted += 1;
                    if let Some(path) = checkpoint {
                        ScanCheckpoint::new(r.m + 1, emitted).save(path)?;
                    }
                    Ok(stop_after(emitted))
                }
                ScanEvent::BlockDone { next_m } => {
                    if let Some(path) = checkpoint {
                        ScanCheckpoint::new(next_m, emitted).save(path)?;
                    }
                    if next_m - last_report >= 1000 || next_m > limit {
                        last_report = next_m;
                        writeln!(err, "scanned m < {next_m}, {emitted} records")?;
                    }
                    Ok(false)
                }
            }
        })();
        match step {
            Ok(false) => ControlFlow::Continue(()),
            Ok(true) => ControlFlow::Break(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(completed),
    }
}

fn take<const N: usize>(kind: &str, usage: &str, args: &[Natural]) -> Result<[Natural; N]> {
    <[Natural; N]>::try_from(args.to_vec())
        .map_err(|_| Error::Precondition(format!("`verify {kind}` expects {usage}")))
}

fn mismatch(what: &str, lhs: &Natural, rhs: &Natural) -> Error {
    Error::Internal(format!("{what}: {lhs} != {rhs}"))
}

fn run_verify(kind: VerifyKind, args: &[Natural], out: &mut dyn Write) -> Result<()> {
    match kind {
        VerifyKind::Lucas => {
            let [a, b, p] = take("lucas", "<a> <b> <p>", args)?;
            let lucas = lucas_binomial_mod_p(&a, &b, &p)?;
            let exact = binomial_exact(&a, &b)? % &p;
            if lucas != exact {
                return Err(mismatch(
                    "Lucas residue differs from the exact residue",
                    &lucas,
                    &exact,
                ));
            }
            writeln!(out, "C({a}, {b}) mod {p}: lucas={lucas} exact={exact}")?;
        }
        VerifyKind::Kummer => {
            let [a, b, p] = take("kummer", "<a> <b> <p>", args)?;
            let carries = kummer_valuation(&a, &b, &p)?;
            let value = binomial_exact(&(&a + &b), &a)?;
            let exponent = padic_valuation(&value, &p)?.exponent;
            if carries != exponent {
                return Err(mismatch(
                    "carry count differs from the valuation",
                    &carries.into(),
                    &exponent.into(),
                ));
            }
            writeln!(
                out,
                "v_{p}(C({}, {a})): carries={carries} exact={exponent}",
                &a + &b
            )?;
        }
        VerifyKind::Vandermonde => {
            let [m, n, r] = take("vandermonde", "<m> <n> <r>", args)?;
            let lhs = binomial_exact(&(&m + &n), &r)?;
            let r_small = r
                .to_u64()
                .filter(|&r| r <= 100_000)
                .ok_or_else(|| Error::too_large("r", &r, 100_000u32))?;
            let mut rhs = Natural::from(0u32);
            for k in 0..=r_small {
                let k = Natural::from(k);
                rhs += binomial_exact(&m, &k)? * binomial_exact(&n, &(&r - &k))?;
            }
            if lhs != rhs {
                return Err(mismatch("Vandermonde sum differs", &lhs, &rhs));
            }
            writeln!(
                out,
                "C({}, {r}) = {lhs} = sum_k C({m}, k) C({n}, {r} - k)",
                &m + &n
            )?;
        }
        VerifyKind::Lemma1 => {
            let [m, n] = take("lemma1", "<m> <n>", args)?;
            let lemma = theorems::lemma1_valuation(&m, &n)?;
            let exact = padic_valuation(&binomial_exact(&m, &n)?, &Natural::from(2u32))?.exponent;
            if lemma != exact {
                return Err(mismatch(
                    "v2(m) - v2(n) differs from v2(C(m, n))",
                    &lemma.into(),
                    &exact.into(),
                ));
            }
            writeln!(out, "v2(C({m}, {n})): lemma={lemma} exact={exact}")?;
        }
        VerifyKind::Lemma2 => {
            let [m] = take("lemma2", "<m>", args)?;
            let odd = theorems::lemma2_parity(&m)?;
            let two = Natural::from(2u32);
            let exact = binomial_mod(&((&m << 1u32) - 1u32), &(&m - 1u32), &two)?;
            if odd != (exact == Natural::from(1u32)) {
                return Err(mismatch(
                    "parity differs from C(2m-1, m-1) mod 2",
                    &Natural::from(odd as u32),
                    &exact,
                ));
            }
            writeln!(
                out,
                "C(2*{m} - 1, {m} - 1) odd={odd} power_of_two={}",
                m.count_ones() == 1
            )?;
        }
        VerifyKind::Johnson => {
            let [p] = take("johnson", "<p>", args)?;
            let holds = theorems::johnson_congruence_check(&p)?;
            writeln!(
                out,
                "p={p} C(2p^2-1, p^2-1) = C(2p-1, p-1) mod p^4: {holds}"
            )?;
        }
        VerifyKind::Counterexample => {
            let [p] = take("counterexample", "<p>", args)?;
            let residue = theorems::counterexample_residue(&p)?;
            let m = &p * &p;
            writeln!(
                out,
                "m={m} C(2m-1, m-1) mod m^2={residue} counterexample={}",
                residue == Natural::from(1u32)
            )?;
        }
    }
    Ok(())
}
