use std::fs;
use std::io;
use std::path::Path;

pub const CHECKPOINT_HEADER: &str = "A290040-scan";
pub const CHECKPOINT_VERSION: u32 = 1;

/// Resume point for an interrupted scan.
///
/// On disk:
///
/// ```text
/// A290040-scan v1
/// next_m=<value>
/// records_emitted=<count>
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanCheckpoint {
    pub next_m: u64,
    pub records_emitted: u64,
    pub format_version: u32,
}

impl ScanCheckpoint {
    pub fn new(next_m: u64, records_emitted: u64) -> Self {
        Self {
            next_m,
            records_emitted,
            format_version: CHECKPOINT_VERSION,
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "{CHECKPOINT_HEADER} v{}\nnext_m={}\nrecords_emitted={}\n",
            self.format_version, self.next_m, self.records_emitted
        )
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty checkpoint")?;
        let version = header
            .strip_prefix(CHECKPOINT_HEADER)
            .and_then(|rest| rest.trim().strip_prefix('v'))
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or_else(|| format!("bad checkpoint header {header:?}"))?;
        if version != CHECKPOINT_VERSION {
            return Err(format!("unsupported checkpoint version {version}"));
        }
        let mut next_m = None;
        let mut records_emitted = 0;
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("bad checkpoint line {line:?}"))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| format!("bad number in checkpoint line {line:?}"))?;
            match key.trim() {
                "next_m" => next_m = Some(value),
                "records_emitted" => records_emitted = value,
                other => return Err(format!("unknown checkpoint key {other:?}")),
            }
        }
        Ok(Self {
            next_m: next_m.ok_or("checkpoint has no next_m")?,
            records_emitted,
            format_version: version,
        })
    }

    pub fn load(path: &Path) -> io::Result<Option<Self>> {
        match fs::read_to_string(path) {
            Ok(text) => Self::parse(&text)
                .map(Some)
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Writes via a sibling temp file and a rename, so readers never see a torn file.
    pub fn save(&self, path: &Path) -> io::Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        fs::write(&tmp, self.to_text())?;
        fs::rename(&tmp, path)
    }
}
