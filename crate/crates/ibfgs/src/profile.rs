//! Relative-objective performance profiles.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ProfileError {
    #[error("a profile needs at least two solvers, got {0}")]
    TooFewSolvers(usize),
    #[error("problem {problem} has {got} values, expected {expected}")]
    Ragged {
        problem: usize,
        expected: usize,
        got: usize,
    },
    #[error("problem {0} has a non-finite objective value")]
    NonFinite(usize),
}

/// Number of steps on the `tau` grid over `[1, 2]`.
pub const TAU_STEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable {
    pub solvers: Vec<String>,
    /// `ratios[p][s]` in `[1, 2]`.
    pub ratios: Vec<Vec<f64>>,
    pub taus: Vec<f64>,
    /// `curves[s][j]`: fraction of problems with ratio at most `taus[j]`.
    pub curves: Vec<Vec<f64>>,
    /// Problems where all solvers tied; their ratios are all 1.
    pub degenerate: Vec<usize>,
}

/// `t = 1 + (f - best) / (worst - best)` per problem, and the cumulative
/// fraction of problems with `t <= tau`.
pub fn performance_profile(
    solvers: &[String],
    values: &[Vec<f64>],
) -> Result<ProfileTable, ProfileError> {
    let k = solvers.len();
    if k < 2 {
        return Err(ProfileError::TooFewSolvers(k));
    }
    let mut ratios = Vec::with_capacity(values.len());
    let mut degenerate = Vec::new();
    for (p, row) in values.iter().enumerate() {
        if row.len() != k {
            return Err(ProfileError::Ragged {
                problem: p,
                expected: k,
                got: row.len(),
            });
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(ProfileError::NonFinite(p));
        }
        let best = row.iter().copied().fold(f64::INFINITY, f64::min);
        let worst = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if worst > best {
            ratios.push(
                row.iter()
                    .map(|f| (1.0 + (f - best) / (worst - best)).clamp(1.0, 2.0))
                    .collect(),
            );
        } else {
            degenerate.push(p);
            ratios.push(vec![1.0; k]);
        }
    }
    let taus: Vec<f64> = (0..=TAU_STEPS)
        .map(|j| 1.0 + j as f64 / TAU_STEPS as f64)
        .collect();
    let n_problems = ratios.len().max(1) as f64;
    let curves = (0..k)
        .map(|s| {
            taus.iter()
                .map(|&tau| {
                    ratios.iter().filter(|r: &&Vec<f64>| r[s] <= tau).count() as f64 / n_problems
                })
                .collect()
        })
        .collect();
    Ok(ProfileTable {
        solvers: solvers.to_vec(),
        ratios,
        taus,
        curves,
        degenerate,
    })
}

impl ProfileTable {
    /// `tau,<solver>...` rows.
    pub fn curves_csv(&self) -> String {
        let mut out = String::from("tau");
        for s in &self.solvers {
            write!(out, ",{s}").unwrap();
        }
        out.push('\n');
        for (j, tau) in self.taus.iter().enumerate() {
            write!(out, "{tau:.2}").unwrap();
            for c in &self.curves {
                write!(out, ",{:.16e}", c[j]).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// `problem,<solver>...` rows of ratios.
    pub fn ratios_csv(&self, problem_names: &[String]) -> String {
        let mut out = String::from("problem");
        for s in &self.solvers {
            write!(out, ",{s}").unwrap();
        }
        out.push('\n');
        for (p, row) in self.ratios.iter().enumerate() {
            let name = problem_names.get(p).map_or_else(|| p.to_string(), Clone::clone);
            out.push_str(&name);
            for t in row {
                write!(out, ",{t:.16e}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}
