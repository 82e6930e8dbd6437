//! Delimited text form of run traces.

use std::fmt::Write as _;

use ibfgs_core::{IterationRecord, RunTrace};
use thiserror::Error;

pub const TRACE_HEADER: &str = "iter,governing_obj,eq2_obj,step,skipped,index,mu_min,mu_max";

#[derive(Debug, Error, PartialEq)]
pub enum TraceParseError {
    #[error("missing or unexpected header")]
    Header,
    #[error("line {line}: {reason}")]
    Row { line: usize, reason: String },
}

fn real(out: &mut String, v: f64) {
    // 17 significant digits; NaN/inf spelled the way `f64::from_str` reads them
    if v.is_finite() {
        write!(out, "{v:.16e}").unwrap();
    } else if v.is_nan() {
        out.push_str("NaN");
    } else if v > 0.0 {
        out.push_str("inf");
    } else {
        out.push_str("-inf");
    }
}

/// Header row plus one row per iteration.
pub fn serialize_trace(trace: &RunTrace) -> String {
    let mut out = String::with_capacity(64 * (trace.records.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in &trace.records {
        write!(out, "{},", r.iter).unwrap();
        real(&mut out, r.governing_objective);
        out.push(',');
        real(&mut out, r.objective);
        out.push(',');
        real(&mut out, r.step);
        write!(out, ",{},{},", u8::from(r.skipped), r.index).unwrap();
        real(&mut out, r.mu_min);
        out.push(',');
        real(&mut out, r.mu_max);
        out.push('\n');
    }
    out
}

/// Reads the records back; final point and counters are not part of the file.
pub fn parse_trace(text: &str) -> Result<Vec<IterationRecord>, TraceParseError> {
    let mut lines = text.lines();
    if lines.next().map(str::trim_end) != Some(TRACE_HEADER) {
        return Err(TraceParseError::Header);
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let err = |reason: &str| TraceParseError::Row {
            line: line_no,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.trim_end().split(',').collect();
        if fields.len() != 8 {
            return Err(err("expected 8 fields"));
        }
        let f = |k: usize| fields[k].parse::<f64>().map_err(|_| err("bad real"));
        let u = |k: usize| fields[k].parse::<usize>().map_err(|_| err("bad integer"));
        records.push(IterationRecord {
            iter: u(0)?,
            governing_objective: f(1)?,
            objective: f(2)?,
            step: f(3)?,
            skipped: match fields[4] {
                "0" => false,
                "1" => true,
                _ => return Err(err("skip flag must be 0 or 1")),
            },
            index: u(5)?,
            mu_min: f(6)?,
            mu_max: f(7)?,
        });
    }
    Ok(records)
}
