//! Reports: per-trial records, aggregates, and JSON/CSV emission.
//!
//! Reports are fully determined by (config, seed): rerunning an experiment
//! yields byte-identical output. Floats are rendered with 17 significant
//! digits so that parsing a report recovers every value exactly. No
//! timestamps appear anywhere in the schema.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::ConfigEcho;

/// One measured record. `deviation` is the slack beyond the record's gate:
/// zero when the gate is met, compared against the report tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    /// Hex digest of the random inputs that produced this record.
    pub digest: String,
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub max_violation: f64,
    pub pass: bool,
    /// Observed constants (measured bounds, ratios, certified constants).
    pub constants: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub config: ConfigEcho,
    pub tolerance: f64,
    pub trials: Vec<TrialRecord>,
    pub aggregate: Aggregate,
}

impl Report {
    /// Builds a report, deriving `max_violation` and the pass flag from the
    /// records. An empty record list passes.
    pub fn from_records(
        experiment: &str,
        config: ConfigEcho,
        tolerance: f64,
        trials: Vec<TrialRecord>,
        constants: BTreeMap<String, f64>,
    ) -> Report {
        let max_violation = trials.iter().map(|t| t.deviation).fold(0.0f64, f64::max);
        Report {
            experiment: experiment.to_string(),
            config,
            tolerance,
            trials,
            aggregate: Aggregate { max_violation, pass: max_violation <= tolerance, constants },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown format {other:?} (expected json or csv)")),
        }
    }
}

/// serde_json formatter that renders every float with 17 significant digits,
/// enough for exact f64 round trips.
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{value:e}")
    }
}

/// Serializes a report to its canonical JSON text.
pub fn to_json(report: &Report) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    report.serialize(&mut ser).expect("report serialization cannot fail");
    String::from_utf8(out).expect("serialized report is UTF-8")
}

/// Parses a report previously emitted by [`to_json`]; exact float round trip.
pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}

/// Renders one CSV row per trial record plus a header.
pub fn to_csv(report: &Report) -> String {
    let mut out = String::from("index,digest,label,lhs,rhs,deviation\n");
    for t in &report.trials {
        out.push_str(&format!(
            "{},{},{},{:.16e},{:.16e},{:.16e}\n",
            t.index, t.digest, t.label, t.lhs, t.rhs, t.deviation
        ));
    }
    out
}

/// Writes a report to `path` in the requested format.
pub fn emit_report(report: &Report, format: ReportFormat, path: &Path) -> io::Result<()> {
    let text = match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Csv => to_csv(report),
    };
    let mut file = std::fs::File::create(path)?;
    file.write_all(text.as_bytes())
}
