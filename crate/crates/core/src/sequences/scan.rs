use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::factor::{factorize_u64, is_prime_u64};
use crate::arith::{divisors, Natural};
use crate::error::{Error, Result};

/// Values of `m` handled per parallel work unit.
pub const DEFAULT_BLOCK_SIZE: u64 = 64;

/// Largest `m` the exact row walk accepts.
const MAX_M: u64 = 1 << 22;

/// One term of A290040 with its A290041 value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRecord {
    pub m: u64,
    pub smallest_d: u64,
    pub all_d: Vec<u64>,
}

/// All `d > 1` with `d | m` and `C(m + d, d) ≡ 1 (mod m)`, ascending.
///
/// Prime divisors never qualify, so only composite ones are tested. The
/// binomials are exact: one walk `C(m + d, d) = C(m + d − 1, d − 1)·(m + d)/d`
/// up to the largest composite divisor, reducing at each divisor.
pub fn qualifying_divisors(m: u64) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(Error::below("m", 2, &Natural::from(m)));
    }
    if m > MAX_M {
        return Err(Error::too_large("m", &Natural::from(m), MAX_M));
    }
    let candidates: Vec<u64> = divisors(m)
        .into_iter()
        .filter(|&d| d > 1 && !is_prime_u64(d))
        .collect();
    let Some(&last) = candidates.last() else {
        return Ok(Vec::new());
    };
    let mut found = Vec::new();
    let mut next = candidates.iter().copied().peekable();
    let mut r = BigUint::one();
    for d in 1..=last {
        r *= m + d;
        r /= d;
        if next.peek() == Some(&d) {
            next.next();
            if (&r % m).to_u64() == Some(1) {
                found.push(d);
            }
        }
    }
    Ok(found)
}

fn record_for(m: u64) -> Result<Option<SequenceRecord>> {
    let all_d = qualifying_divisors(m)?;
    Ok(all_d.first().copied().map(|smallest_d| SequenceRecord {
        m,
        smallest_d,
        all_d,
    }))
}

/// Progress of a [`Scanner`] run, delivered in ascending `m` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanEvent<'a> {
    Record(&'a SequenceRecord),
    /// Every `m < next_m` has been examined and its records delivered.
    BlockDone {
        next_m: u64,
    },
}

/// Block-parallel A290040 scanner.
///
/// The range is cut into fixed-size blocks; a wave of blocks is computed in
/// parallel and then emitted in block order, so the event sequence does not
/// depend on the worker count.
#[derive(Debug, Clone)]
pub struct Scanner {
    workers: usize,
    block_size: u64,
}

impl Default for Scanner {
    fn default() -> Self {
        Self::new(std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

impl Scanner {
    pub fn new(workers: usize) -> Self {
        Self {
            workers: workers.max(1),
            block_size: DEFAULT_BLOCK_SIZE,
        }
    }

    pub fn with_block_size(mut self, block_size: u64) -> Self {
        self.block_size = block_size.max(1);
        self
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Scans `m` in `[start.max(2), limit]`. Returns `Ok(false)` if the
    /// callback stopped the scan early.
    pub fn run<F>(&self, start: u64, limit: u64, mut on_event: F) -> Result<bool>
    where
        F: FnMut(ScanEvent<'_>) -> ControlFlow<()>,
    {
        if limit > MAX_M {
            return Err(Error::too_large("limit", &Natural::from(limit), MAX_M));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        let wave = self.workers as u64 * 4;
        let mut lo = start.max(2);
        while lo <= limit {
            let blocks: Vec<(u64, u64)> = (0..wave)
                .map(|i| lo + i * self.block_size)
                .take_while(|&b| b <= limit)
                .map(|b| (b, (b + self.block_size - 1).min(limit)))
                .collect();
            let results: Vec<Result<Vec<SequenceRecord>>> = pool.install(|| {
                blocks
                    .par_iter()
                    .map(|&(a, b)| {
                        let mut out = Vec::new();
                        for m in a..=b {
                            out.extend(record_for(m)?);
                        }
                        Ok(out)
                    })
                    .collect()
            });
            for (&(_, b), records) in blocks.iter().zip(results) {
                for record in &records? {
                    if on_event(ScanEvent::Record(record)).is_break() {
                        return Ok(false);
                    }
                }
                if on_event(ScanEvent::BlockDone { next_m: b + 1 }).is_break() {
                    return Ok(false);
                }
            }
            lo = blocks.last().map_or(limit, |&(_, b)| b) + 1;
        }
        Ok(true)
    }
}

/// Every `m ≤ limit` in A290040, ascending.
pub fn a290040_scan(limit: u64) -> Result<Vec<SequenceRecord>> {
    if limit < 2 {
        return Err(Error::below("limit", 2, &Natural::from(limit)));
    }
    let mut records = Vec::new();
    Scanner::default().run(2, limit, |event| {
        if let ScanEvent::Record(r) = event {
            records.push(r.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(records)
}

/// A qualifying pair `(m, d)` with `d = pᵏ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerFinding {
    pub m: u64,
    pub d: u64,
    pub p: u64,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerReport {
    pub limit: u64,
    pub pairs_examined: usize,
    pub findings: Vec<PrimePowerFinding>,
}

impl fmt::Display for PrimePowerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.findings.is_empty() {
            return write!(
                f,
                "none found below limit {} ({} qualifying pairs examined)",
                self.limit, self.pairs_examined
            );
        }
        for (i, x) in self.findings.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "m={} d={} = {}^{}", x.m, x.d, x.p, x.k)?;
        }
        Ok(())
    }
}

/// Looks through every qualifying `(m, d)` with `m ≤ limit` for `d` a prime
/// power. Nothing is expected either way.
pub fn prime_power_scan(limit: u64) -> Result<PrimePowerReport> {
    let records = a290040_scan(limit)?;
    let mut findings = Vec::new();
    let mut pairs_examined = 0;
    for r in &records {
        for &d in &r.all_d {
            pairs_examined += 1;
            if let Some((p, k)) = factorize_u64(d).as_prime_power() {
                if k < 2 {
                    return Err(Error::Internal(format!(
                        "prime divisor {d} of {} satisfies the congruence",
                        r.m
                    )));
                }
                findings.push(PrimePowerFinding { m: r.m, d, p, k });
            }
        }
    }
    Ok(PrimePowerReport {
        limit,
        pairs_examined,
        findings,
    })
}
