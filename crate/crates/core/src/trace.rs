//! Per-iteration run records shared by the solvers and the baseline.

use alloc::vec::Vec;

use crate::objective::ModelPoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    /// 1-based iteration number; record `k` describes the iterate after step `k`.
    pub iter: usize,
    /// Value of the formulation the run minimizes (raw objective or its smoothing).
    pub governing_objective: f64,
    /// Raw (unsmoothed) objective value.
    pub objective: f64,
    pub step: f64,
    pub skipped: bool,
    /// 0-based component index refreshed in this iteration.
    pub index: usize,
    /// Smallest and largest per-component smoothing level; NaN when smoothing is unused.
    pub mu_min: f64,
    pub mu_max: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunTrace {
    pub records: Vec<IterationRecord>,
    pub final_point: Vec<f64>,
    /// Number of component (sub)gradient evaluations, initialization included.
    pub gradient_evaluations: u64,
    /// Filled in by callers that have a clock; zero otherwise.
    pub wall_time_secs: f64,
}

impl RunTrace {
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    pub fn skip_count(&self) -> usize {
        self.records.iter().filter(|r| r.skipped).count()
    }

    pub fn final_objective(&self) -> Option<f64> {
        self.records.last().map(|r| r.objective)
    }

    pub fn final_governing_objective(&self) -> Option<f64> {
        self.records.last().map(|r| r.governing_objective)
    }

    /// Final point read as `(w, b)`.
    pub fn final_model(&self) -> ModelPoint {
        ModelPoint::from_flat(&self.final_point)
    }
}
