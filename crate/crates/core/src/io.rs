//! Snapshot tables and run manifests.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::driver::SolverOptions;
use crate::error::{Error, Result};

/// Version of the snapshot column layout and the manifest format.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!("unknown output format {s}; expected csv or json"))),
        }
    }
}

/// Column-named numeric table, one row per solution point.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub schema_version: u32,
    pub time: f64,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(time: f64, columns: Vec<String>) -> Self {
        Table { schema_version: SCHEMA_VERSION, time, columns, rows: Vec::new() }
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Config(format!("no column {name}; columns are {}", self.columns.join(", "))))
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let k = self.column_index(name)?;
        Ok(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Copy keeping only the named columns, in the given order.
    pub fn select(&self, names: &[String]) -> Result<Table> {
        let idx = names.iter().map(|n| self.column_index(n)).collect::<Result<Vec<_>>>()?;
        Ok(Table {
            schema_version: self.schema_version,
            time: self.time,
            columns: names.to_vec(),
            rows: self.rows.iter().map(|r| idx.iter().map(|&k| r[k]).collect()).collect(),
        })
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(path),
            OutputFormat::Json => {
                let w = BufWriter::new(File::create(path)?);
                serde_json::to_writer(w, self).map_err(|e| Error::Io(e.to_string()))
            }
        }
    }

    /// CSV with a `# schema_version=.., time=..` comment line before the header.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = BufWriter::new(File::create(path)?);
        writeln!(f, "# schema_version={} time={:.17e}", self.schema_version, self.time)?;
        let mut w = csv::Writer::from_writer(f);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|v| format!("{v:.17e}"))).map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Table> {
        let text = std::fs::read_to_string(path)?;
        let (head, body) = text.split_once('\n').ok_or_else(|| Error::Io("empty snapshot".into()))?;
        let mut table = Table::default();
        for kv in head.trim_start_matches('#').split_whitespace() {
            match kv.split_once('=') {
                Some(("schema_version", v)) => table.schema_version = v.parse().map_err(|_| Error::Io(format!("bad header {head}")))?,
                Some(("time", v)) => table.time = v.parse().map_err(|_| Error::Io(format!("bad header {head}")))?,
                _ => {}
            }
        }
        if table.schema_version != SCHEMA_VERSION {
            return Err(Error::Io(format!("schema version {} is not {SCHEMA_VERSION}", table.schema_version)));
        }
        let mut r = csv::Reader::from_reader(BufReader::new(body.as_bytes()));
        let io = |e: csv::Error| Error::Io(e.to_string());
        table.columns = r.headers().map_err(io)?.iter().map(String::from).collect();
        for rec in r.records() {
            let rec = rec.map_err(io)?;
            let row = rec
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Io(format!("{s}: {e}"))))
                .collect::<Result<Vec<f64>>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }
}

/// Domain integrals of the conserved variables at the start and the end.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConservationLedger {
    pub names: Vec<String>,
    pub initial: Vec<f64>,
    pub last: Vec<f64>,
    /// `|last - initial| / max(|initial|, tiny)`
    pub relative_drift: Vec<f64>,
}

impl ConservationLedger {
    pub fn new(names: Vec<String>, initial: Vec<f64>, last: Vec<f64>) -> Self {
        let relative_drift =
            initial.iter().zip(&last).map(|(a, b)| (b - a).abs() / a.abs().max(f64::MIN_POSITIVE)).collect();
        ConservationLedger { names, initial, last, relative_drift }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AlphaSample {
    pub t: f64,
    pub fraction: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotEntry {
    pub index: usize,
    pub time: f64,
    pub file: String,
    /// Fraction of elements inside the case's output window with `alpha > 0`.
    pub window_alpha_fraction: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub wall_seconds: f64,
    pub element_updates_per_second: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub case: String,
    pub dim: usize,
    pub degree: usize,
    pub cells: [usize; 2],
    pub domain: [[f64; 2]; 2],
    pub gamma: Option<f64>,
    pub t_end: f64,
    pub options: SolverOptions,
    pub steps: usize,
    pub retries: usize,
    pub conservation: ConservationLedger,
    pub alpha_history: Vec<AlphaSample>,
    pub snapshots: Vec<SnapshotEntry>,
    pub timings: Timings,
}

impl Manifest {
    pub fn write(&self, path: &Path) -> Result<()> {
        let w = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(w, self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Manifest> {
        let r = BufReader::new(File::open(path)?);
        let m: Manifest = serde_json::from_reader(r).map_err(|e| Error::Io(e.to_string()))?;
        if m.schema_version != SCHEMA_VERSION {
            return Err(Error::Io(format!("schema version {} is not {SCHEMA_VERSION}", m.schema_version)));
        }
        Ok(m)
    }
}

/// File name of snapshot `index` at time `t`; the time stamp matches the manifest entry.
pub fn snapshot_name(case: &str, index: usize, t: f64, format: OutputFormat) -> String {
    format!("{case}_{index:04}_t{t:.6e}.{}", format.extension())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let dir = std::env::temp_dir().join(format!("lwfr-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let mut t = Table::new(0.25, vec!["x".into(), "rho".into()]);
        t.rows.push(vec![0.1, 1.0 / 3.0]);
        t.rows.push(vec![-2.5e-7, 7.0]);
        let p = dir.join("a.csv");
        t.write_csv(&p).unwrap();
        let back = Table::read_csv(&p).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.column("rho").unwrap(), vec![1.0 / 3.0, 7.0]);
        assert!(back.column("p").is_err());
        let only = t.select(&["rho".into()]).unwrap();
        assert_eq!(only.rows, vec![vec![1.0 / 3.0], vec![7.0]]);
        assert!(t.select(&["p".into()]).is_err());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn ledger_drift() {
        let l = ConservationLedger::new(vec!["m".into()], vec![2.0], vec![2.0 + 2e-12]);
        assert!((l.relative_drift[0] - 1e-12).abs() < 1e-15);
    }

    #[test]
    fn snapshot_names_carry_time() {
        assert_eq!(snapshot_name("sod", 3, 0.2, OutputFormat::Csv), "sod_0003_t2.000000e-1.csv");
    }
}
