use std::fmt::Write;
use std::str::FromStr;

use super::SequenceRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
    Tsv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "human" => Ok(OutputFormat::Human),
            "json" => Ok(OutputFormat::Json),
            "tsv" => Ok(OutputFormat::Tsv),
            other => Err(format!(
                "unknown format {other:?} (expected human, json or tsv)"
            )),
        }
    }
}

fn comma_list(ds: &[u64]) -> String {
    let mut out = String::new();
    for (i, d) in ds.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "{d}").unwrap();
    }
    out
}

/// One output line for a record, without the trailing newline.
pub fn format_record(record: &SequenceRecord, format: OutputFormat) -> String {
    match format {
        OutputFormat::Tsv => format!(
            "{}\t{}\t{}",
            record.m,
            record.smallest_d,
            comma_list(&record.all_d)
        ),
        OutputFormat::Json => serde_json::to_string(record).expect("plain struct serializes"),
        OutputFormat::Human => format!(
            "m={} smallest_d={} all_d={}",
            record.m,
            record.smallest_d,
            comma_list(&record.all_d)
        ),
    }
}
