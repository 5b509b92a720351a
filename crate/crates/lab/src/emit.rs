//! Report emission: JSON (the report object, records elided) or CSV with
//! one row per slack record.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use leibniz_core::harness::Report;

use crate::{AnyError, Format};

pub fn emit_report(report: &Report, format: Format, out: Option<&Path>) -> Result<(), AnyError> {
    emit_reports(std::slice::from_ref(report), format, out)
}

pub fn emit_reports(
    reports: &[Report],
    format: Format,
    out: Option<&Path>,
) -> Result<(), AnyError> {
    let text = match format {
        Format::Json => {
            let mut text = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])?
            } else {
                serde_json::to_string_pretty(reports)?
            };
            text.push('\n');
            text
        }
        Format::Csv => to_csv(reports),
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_csv(reports: &[Report]) -> String {
    let mut text = String::from("case,lhs,rhs,slack,holds,seed,trial\n");
    for report in reports {
        for record in &report.records {
            let seed = record.seed.map(|s| s.to_string()).unwrap_or_default();
            let trial = record.trial.map(|t| t.to_string()).unwrap_or_default();
            text.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                record.case_name, record.lhs, record.rhs, record.slack, record.holds, seed, trial
            ));
        }
    }
    text
}
