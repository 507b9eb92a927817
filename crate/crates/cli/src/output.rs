use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use reskrylov::experiments::ConvergenceRecord;
use serde::{Deserialize, Serialize};

use crate::args::Format;

pub const CSV_HEADER: [&str; 8] = [
    "method", "problem", "dim", "tau", "gamma", "q", "n", "error",
];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub problem: Option<String>,
    pub sizes: Vec<usize>,
    pub tau: Option<f64>,
    pub gamma: Option<f64>,
    pub q: Vec<usize>,
    pub n: Vec<usize>,
    pub methods: Vec<String>,
    pub solver: Option<String>,
    pub cg_tolerance: Option<f64>,
    pub cg_max_iterations: Option<usize>,
    pub seed: Option<u64>,
    pub version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            problem: None,
            sizes: Vec::new(),
            tau: None,
            gamma: None,
            q: Vec::new(),
            n: Vec::new(),
            methods: Vec::new(),
            solver: None,
            cg_tolerance: None,
            cg_max_iterations: None,
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

/// Flat record as written to CSV and JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub method: String,
    pub problem: String,
    pub dim: usize,
    pub tau: f64,
    pub gamma: f64,
    pub q: usize,
    pub n: usize,
    pub error: f64,
}

impl From<&ConvergenceRecord> for Row {
    fn from(r: &ConvergenceRecord) -> Self {
        Self {
            method: r.method.to_string(),
            problem: r.problem.to_string(),
            dim: r.dim,
            tau: r.tau,
            gamma: r.gamma,
            q: r.q,
            n: r.n,
            error: r.error,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fit {
    pub method: String,
    pub size: usize,
    pub q: usize,
    pub window: (usize, usize),
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridRatio {
    pub q: usize,
    pub sizes: Vec<usize>,
    pub n_min: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Summary {
    pub rates: Vec<Fit>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub grid_independence: Vec<GridRatio>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub manifest: RunManifest,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<Row>>,
}

fn write_csv<W: Write>(rows: &[Row], sink: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.method.clone(),
            r.problem.clone(),
            r.dim.to_string(),
            format!("{:e}", r.tau),
            format!("{:e}", r.gamma),
            r.q.to_string(),
            r.n.to_string(),
            format!("{:e}", r.error),
        ])?;
    }
    w.flush()
}

pub fn sidecar_path(data: &Path) -> PathBuf {
    let mut name = data.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    data.with_file_name(name)
}

/// Writes the data once, after all runs have finished. CSV output to a file
/// gets a `<file>.manifest.json` sidecar; CSV on standard output sends the
/// manifest to standard error.
pub fn emit(
    doc: Document,
    rows: Vec<Row>,
    format: Format,
    output: Option<&Path>,
) -> io::Result<()> {
    match format {
        Format::Json => {
            let full = Document {
                records: Some(rows),
                ..doc
            };
            let text = serde_json::to_string_pretty(&full)?;
            match output {
                Some(p) => std::fs::write(p, text + "\n"),
                None => writeln!(io::stdout().lock(), "{text}"),
            }
        }
        Format::Csv => {
            let meta = serde_json::to_string_pretty(&doc)?;
            match output {
                Some(p) => {
                    write_csv(&rows, File::create(p)?)?;
                    std::fs::write(sidecar_path(p), meta + "\n")
                }
                None => {
                    write_csv(&rows, io::stdout().lock())?;
                    writeln!(io::stderr().lock(), "{meta}")
                }
            }
        }
    }
}
