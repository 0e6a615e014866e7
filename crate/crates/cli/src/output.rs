//! JSON envelopes with embedded manifests, CSV tables and atomic file writes.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use schurlab::scalar::ratio_to_f64;
use schurlab::BigRational;
use serde::Serialize;
use serde_json::Value;

use crate::failure::{CliResult, Failure};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Both,
}

/// An exact rational with a plot-ready decimal.
#[derive(Clone, Debug, Serialize)]
pub struct Rat {
    pub exact: String,
    pub decimal: f64,
}

impl From<&BigRational> for Rat {
    fn from(r: &BigRational) -> Self {
        Rat {
            exact: schurlab::serde_rational::to_string(r),
            decimal: round12(ratio_to_f64(r)),
        }
    }
}

fn round12(x: f64) -> f64 {
    decimal(x).parse().unwrap_or(x)
}

/// `x` to 12 significant digits.
pub fn decimal(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let s = format!("{:.*}", (11 - exp).max(0) as usize, x);
        // rounding can carry into a new leading digit
        if s.trim_start_matches('-')
            .replace('.', "")
            .trim_start_matches('0')
            .len()
            > 12
            && s.contains('.')
        {
            return format!("{:.*}", (10 - exp).max(0) as usize, x);
        }
        s
    } else {
        format!("{x:.11e}")
    }
}

pub fn rat_cells(r: Option<&BigRational>) -> [String; 2] {
    match r {
        Some(r) => [
            schurlab::serde_rational::to_string(r),
            decimal(ratio_to_f64(r)),
        ],
        None => [String::new(), String::new()],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub parameters: Value,
    pub tool_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub outputs: Vec<String>,
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    schema: String,
    schema_version: u32,
    manifest: &'a Manifest,
    result: &'a R,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn to_bytes(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.into_inner().map_err(|e| Failure::Io(e.to_string()))
    }
}

/// What a command produced: a JSON result, a CSV view of it and the
/// parameters that determine both.
pub struct Artifact<R: Serialize> {
    pub command: &'static str,
    pub stem: String,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub result: R,
    pub table: Table,
}

#[derive(Clone, Debug)]
pub struct Emitter {
    pub out: Option<PathBuf>,
    pub format: Format,
    pub stamp: bool,
}

impl Emitter {
    pub fn check(&self) -> CliResult<()> {
        if self.out.is_none() && self.format == Format::Both {
            return Err(Failure::Usage("--format both needs --out DIR".into()));
        }
        Ok(())
    }

    pub fn emit<R: Serialize>(&self, a: &Artifact<R>) -> CliResult<()> {
        self.check()?;
        let json_name = format!("{}.json", a.stem);
        let csv_name = format!("{}.csv", a.stem);
        let mut outputs = Vec::new();
        if self.out.is_some() {
            if self.format != Format::Csv {
                outputs.push(json_name.clone());
            }
            if self.format != Format::Json {
                outputs.push(csv_name.clone());
            }
        }
        let manifest = Manifest {
            command: a.command.to_string(),
            parameters: a.parameters.clone(),
            tool_version: env!("CARGO_PKG_VERSION"),
            seed: a.seed,
            timestamp: self.stamp.then(|| {
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0)
            }),
            outputs,
        };
        let mut json = serde_json::to_vec_pretty(&Envelope {
            schema: format!("schurlab.{}", a.command),
            schema_version: SCHEMA_VERSION,
            manifest: &manifest,
            result: &a.result,
        })?;
        json.push(b'\n');
        let csv = a.table.to_bytes()?;

        match &self.out {
            None => {
                let bytes = if self.format == Format::Csv {
                    csv
                } else {
                    json
                };
                std::io::stdout().write_all(&bytes)?;
            }
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                if self.format != Format::Csv {
                    write_atomic(dir, &json_name, &json)?;
                }
                if self.format != Format::Json {
                    write_atomic(dir, &csv_name, &csv)?;
                }
                if self.format == Format::Csv {
                    let mut m = serde_json::to_vec_pretty(&manifest)?;
                    m.push(b'\n');
                    write_atomic(dir, &format!("{}.manifest.json", a.stem), &m)?;
                }
            }
        }
        Ok(())
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> CliResult<()> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(dir.join(name))
        .map_err(|e| Failure::Io(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(decimal(11.0 / 27.0), "0.407407407407");
        assert_eq!(decimal(1.0), "1.00000000000");
        assert_eq!(decimal(0.5), "0.500000000000");
        assert_eq!(decimal(0.0), "0");
        assert_eq!(decimal(123.456), "123.456000000");
        assert_eq!(decimal(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(decimal(0.99999999999999), "1.00000000000");
        assert_eq!(decimal(1.5e-9), "1.50000000000e-9");
    }
}
