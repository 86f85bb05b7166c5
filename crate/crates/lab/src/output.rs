use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde_json::{json, Value};

use crate::catalog::SpecView;
use crate::{Format, JobArgs, LabError, EXIT_MISMATCH, EXIT_OK};

#[derive(Clone, Debug, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Result of one job before it is written out.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub spec: Option<SpecView>,
    pub result: Value,
    pub csv: Option<CsvTable>,
    /// A mismatch or counterexample was found.
    pub mismatch: bool,
    pub wall_time: Duration,
}

impl Outcome {
    pub fn new(spec: Option<SpecView>, result: Value) -> Self {
        Self { spec, result, csv: None, mismatch: false, wall_time: Duration::ZERO }
    }

    pub fn exit_code(&self) -> u8 {
        if self.mismatch {
            EXIT_MISMATCH
        } else {
            EXIT_OK
        }
    }
}

/// The full JSON report: tool, version, command, spec and result, plus timing
/// unless --no-meta is set.
pub fn envelope(command: &str, args: &JobArgs, outcome: &Outcome) -> Value {
    let mut v = json!({
        "tool": "fpcf",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "spec": outcome.spec,
        "result": outcome.result,
    });
    if !args.no_meta {
        v["meta"] = json!({ "wall_time_ms": outcome.wall_time.as_secs_f64() * 1000.0 });
    }
    v
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), LabError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn csv_text(table: &CsvTable) -> Result<String, LabError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header).map_err(|e| LabError::Internal(e.to_string()))?;
    for row in &table.rows {
        w.write_record(row).map_err(|e| LabError::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| LabError::Internal(e.to_string()))
}

pub fn emit(command: &str, args: &JobArgs, outcome: &Outcome) -> Result<(), LabError> {
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&envelope(command, args, outcome)).expect("json") + "\n",
        Format::Csv => match &outcome.csv {
            Some(t) => csv_text(t)?,
            None => return Err(LabError::Invalid(format!("{command} has no CSV form"))),
        },
    };
    write_text(args.out.as_deref(), &text)
}
