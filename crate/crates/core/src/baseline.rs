//! Incremental subgradient method used as the reference solver.

use alloc::vec;
use alloc::vec::Vec;

use crate::problem::FiniteSum;
use crate::solver::{random_start, SolverError};
use crate::trace::{IterationRecord, RunTrace};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    Constant(f64),
    /// `alpha_k = alpha_0 / sqrt(k + 1)` for 0-based `k`.
    Diminishing(f64),
}

impl StepRule {
    pub fn step(self, k: usize) -> f64 {
        match self {
            StepRule::Constant(a) => a,
            StepRule::Diminishing(a0) => a0 / libm::sqrt((k + 1) as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineConfig {
    pub step_rule: StepRule,
    pub max_iters: usize,
    pub seed: u64,
    pub init_box: f64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            step_rule: StepRule::Diminishing(1e-2),
            max_iters: 10_000,
            seed: 0,
            init_box: 5.0,
        }
    }
}

/// Cyclic incremental subgradient iteration `omega -= alpha_k * v_{k mod m}(omega)`.
pub fn run_subgradient<F: FiniteSum>(
    problem: &F,
    cfg: &BaselineConfig,
) -> Result<RunTrace, SolverError> {
    let start = random_start(problem.dim(), cfg.init_box, cfg.seed);
    run_subgradient_from(problem, cfg, start)
}

pub fn run_subgradient_from<F: FiniteSum>(
    problem: &F,
    cfg: &BaselineConfig,
    start: Vec<f64>,
) -> Result<RunTrace, SolverError> {
    let n = problem.dim();
    let m = problem.num_components();
    if start.len() != n {
        return Err(SolverError::StartDimension {
            expected: n,
            got: start.len(),
        });
    }
    if m == 0 {
        return Err(SolverError::InvalidConfig("problem has no components"));
    }
    let valid = match cfg.step_rule {
        StepRule::Constant(a) | StepRule::Diminishing(a) => a > 0.0 && a.is_finite(),
    };
    if !valid {
        return Err(SolverError::InvalidConfig("step size must be positive"));
    }
    let mut omega = start;
    let mut v = vec![0.0; n];
    let mut trace = RunTrace {
        records: Vec::with_capacity(cfg.max_iters),
        ..RunTrace::default()
    };
    for k in 0..cfg.max_iters {
        let i = k % m;
        let alpha = cfg.step_rule.step(k);
        problem.gradient(i, &omega, &mut v);
        trace.gradient_evaluations += 1;
        for (x, g) in omega.iter_mut().zip(&v) {
            *x -= alpha * g;
        }
        if omega.iter().any(|x| !x.is_finite()) {
            trace.final_point = omega;
            return Err(SolverError::NonFiniteIterate {
                iteration: k + 1,
                trace: alloc::boxed::Box::new(trace),
            });
        }
        let f = problem.objective(&omega);
        trace.records.push(IterationRecord {
            iter: k + 1,
            governing_objective: f,
            objective: f,
            step: alpha,
            skipped: false,
            index: i,
            mu_min: f64::NAN,
            mu_max: f64::NAN,
        });
    }
    trace.final_point = omega;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Abs;

    impl FiniteSum for Abs {
        fn dim(&self) -> usize {
            1
        }
        fn num_components(&self) -> usize {
            1
        }
        fn objective(&self, p: &[f64]) -> f64 {
            p[0].abs()
        }
        fn gradient(&self, _: usize, p: &[f64], out: &mut [f64]) {
            out[0] = if p[0] > 0.0 { 1.0 } else if p[0] < 0.0 { -1.0 } else { 0.0 };
        }
    }

    #[test]
    fn constant_step_on_abs_oscillates() {
        let cfg = BaselineConfig {
            step_rule: StepRule::Constant(0.3),
            max_iters: 5,
            ..BaselineConfig::default()
        };
        let trace = run_subgradient_from(&Abs, &cfg, vec![1.0]).unwrap();
        let got: Vec<f64> = trace.records.iter().map(|r| r.objective).collect();
        let want = [0.7, 0.4, 0.1, 0.2, 0.1];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?}");
        }
        assert_eq!(trace.gradient_evaluations, 5);
    }

    #[test]
    fn diminishing_steps() {
        let r = StepRule::Diminishing(1.0);
        assert_eq!(r.step(0), 1.0);
        assert!((r.step(3) - 0.5).abs() < 1e-15);
    }
}
