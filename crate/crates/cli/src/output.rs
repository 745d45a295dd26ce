//! CSV tables, the `.meta` sidecar and exit-code plumbing.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_ORACLE: u8 = 3;
pub const EXIT_DEVIATION: u8 = 4;
pub const EXIT_CONSTRAINT: u8 = 5;

/// An error that stops a command before any output is written.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

pub trait OrExit<T> {
    fn or_exit(self, code: u8) -> std::result::Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> OrExit<T> for std::result::Result<T, E> {
    fn or_exit(self, code: u8) -> std::result::Result<T, Failure> {
        self.map_err(|e| Failure {
            code,
            error: e.into(),
        })
    }
}

/// Full round-trip representation (17 significant digits).
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().context("flushing CSV")
    }
}

/// What a command produced, plus the exit code it asks for (0, 3, 4 or 5).
#[derive(Debug)]
pub struct Outcome {
    pub table: Table,
    pub report: String,
    pub code: u8,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest {
        let _ = write!(s, "{b:02x}");
    }
    s
}

/// Provenance written next to the CSV. Deliberately free of timestamps.
#[derive(Debug, Clone)]
pub struct Meta {
    pub command: &'static str,
    pub config_sha256: String,
    pub constants_version: u32,
    pub constants_sha256: String,
    pub rows: usize,
    pub exit_code: u8,
}

impl Meta {
    pub fn render(&self) -> String {
        format!(
            "tool = \"gaussmeter {}\"\ncommand = \"{}\"\nconfig_sha256 = \"{}\"\nconstants_version = {}\nconstants_sha256 = \"{}\"\nrows = {}\nexit_code = {}\n",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.config_sha256,
            self.constants_version,
            self.constants_sha256,
            self.rows,
            self.exit_code,
        )
    }
}

pub fn meta_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

/// Writes through a temporary sibling so a reader never sees a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [
            0.1,
            1.0 / 3.0,
            1.788_732_235_6e-21,
            f64::MAX,
            f64::MIN_POSITIVE,
            -2.5,
        ] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![num(1.0), String::new()]);
        let s = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(s, "a,b\n1.0000000000000000e0,\n");
    }

    #[test]
    fn meta_has_no_clock() {
        let m = Meta {
            command: "gw-table",
            config_sha256: sha256_hex(b"x"),
            constants_version: 1,
            constants_sha256: sha256_hex(b"y"),
            rows: 5,
            exit_code: 4,
        };
        assert_eq!(m.render(), m.clone().render());
        assert!(meta_path(Path::new("out/t.csv")).ends_with("t.csv.meta"));
    }
}
