//! OEIS A290040 / A290041: integers `m` with a divisor `d > 1` such that
//! `C(m + d, d) ≡ 1 (mod m)`, and the smallest such `d`.
//!
//! Any such `d` is composite, so only composite divisors are tested.

mod checkpoint;
mod format;
mod scan;

pub use checkpoint::{ScanCheckpoint, CHECKPOINT_HEADER, CHECKPOINT_VERSION};
pub use format::{format_record, OutputFormat};
pub use scan::{
    a290040_scan, prime_power_scan, qualifying_divisors, PrimePowerFinding, PrimePowerReport,
    ScanEvent, Scanner, SequenceRecord, DEFAULT_BLOCK_SIZE,
};
