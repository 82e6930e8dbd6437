//! Incremental BFGS engine and its variants.
//!
//! Every component `i` keeps the last point `z_i` where it was evaluated, the
//! (generalized) gradient `v_i` computed there, its own Hessian approximation
//! `B_i` and a smoothing level `mu_i`. The iterate is the minimizer of the sum
//! of the per-component quadratic models,
//!
//! `omega = (sum_i B_i)^{-1} (sum_i B_i z_i - sum_i v_i)`,
//!
//! and only one component is refreshed per iteration, so `(sum_i B_i)^{-1}`,
//! `u = sum_i B_i z_i` and `g = sum_i v_i` are maintained incrementally in
//! `O(n^2)` work.
//!
//! The curvature pairs describe the averaged form `f = (1/m) sum_i f_i`, so a
//! [`FiniteSum`] whose components add up to the objective has each component
//! gradient multiplied by `m` here. The identity initial matrices then sit on
//! the scale of the objective itself rather than `m` times above it. The
//! minimizer and the traced objective values are unaffected.
//!
//! The variants differ only in how `v` and `y` are formed:
//!
//! * [`Variant::Raw`]: generalized gradients of the raw components.
//! * [`Variant::Dc`]: for nonconvex components the displacement uses the
//!   subgradient of `h` at the previous point, so `y` is a displacement of
//!   subgradients of the convex part `g` only.
//! * [`Variant::Smooth`]: gradients of the smoothed components, with a
//!   per-component smoothing level that shrinks by `sigma` whenever the new
//!   gradient is small relative to it.
//! * [`Variant::Convexified`] / [`Variant::StronglyConvex`]: as `Smooth`, plus
//!   the curvature of the convexifying quadratic is added to `y`.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{
    aggregate_inverse_update, axpy, bfgs_update, dense_sum_invert, dot, norm, LinalgError,
    SymMatrix, Vector, DEFAULT_EPS_DENOMINATOR,
};
use crate::objective::{Dataset, ObjectiveConfig, ObjectiveError, Partition, TieRule};
use crate::problem::{FiniteSum, TsvmProblem};
use crate::rng::{seeded, Stream};
use crate::trace::{IterationRecord, RunTrace};

/// Tolerance of the `u` / `g` bookkeeping audit.
pub const AUDIT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Raw,
    Dc,
    Smooth,
    Convexified,
    StronglyConvex,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Raw,
        Variant::Dc,
        Variant::Smooth,
        Variant::Convexified,
        Variant::StronglyConvex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Raw => "ibfgs",
            Variant::Dc => "ibfgs-dc",
            Variant::Smooth => "ibfgs-s",
            Variant::Convexified => "ibfgs-c",
            Variant::StronglyConvex => "ibfgs-sc",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == name)
    }

    pub fn uses_smoothing(self) -> bool {
        matches!(
            self,
            Variant::Smooth | Variant::Convexified | Variant::StronglyConvex
        )
    }

    pub fn convexifies(self) -> bool {
        matches!(self, Variant::Convexified | Variant::StronglyConvex)
    }

    pub fn partition(self) -> Partition {
        match self {
            Variant::StronglyConvex => Partition::Distributed,
            _ => Partition::Split,
        }
    }

    /// Multiple of `rho_lower_bound` used when convexifying.
    ///
    /// The convexifying quadratic is `rho/2 |.|^2`; the convexified variant
    /// doubles the bound to carry the same curvature as a `rho |.|^2` term at
    /// the bound, the strongly convex variant sits strictly above it.
    pub fn default_rho_factor(self) -> f64 {
        match self {
            Variant::Convexified => 2.0,
            Variant::StronglyConvex => 1.1,
            _ => 1.0,
        }
    }

    /// Step policy used when none is configured.
    pub fn default_step_policy(self) -> StepPolicy {
        match self {
            Variant::Raw => StepPolicy::Backtracking {
                initial: 1.0,
                shrink: 0.5,
                max_tries: 10,
            },
            _ => StepPolicy::Unit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepPolicy {
    Unit,
    Fixed(f64),
    /// Largest `initial * shrink^j`, `j < max_tries`, giving simple decrease.
    Backtracking {
        initial: f64,
        shrink: f64,
        max_tries: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexRule {
    Cyclic,
    UniformRandom { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub variant: Variant,
    /// Threshold `c` of the update safeguard.
    pub skip_threshold: f64,
    pub kappa: f64,
    pub sigma: f64,
    pub mu0: f64,
    pub max_iters: usize,
    pub step_policy: StepPolicy,
    pub index_rule: IndexRule,
    /// Seed of the random starting point.
    pub seed: u64,
    pub init_box: f64,
    pub eps_denominator: f64,
    pub tie_rule: TieRule,
    /// Overrides [`Variant::default_rho_factor`].
    pub rho_factor: Option<f64>,
    /// Check the `u` / `g` bookkeeping every this many iterations.
    pub audit_interval: Option<usize>,
}

impl SolverConfig {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            skip_threshold: 1e-8,
            kappa: 0.5,
            sigma: 0.9,
            mu0: 0.1,
            max_iters: 10_000,
            step_policy: variant.default_step_policy(),
            index_rule: IndexRule::Cyclic,
            seed: 0,
            init_box: 5.0,
            eps_denominator: DEFAULT_EPS_DENOMINATOR,
            tie_rule: TieRule::ZeroSide,
            rho_factor: None,
            audit_interval: None,
        }
    }

    /// Iteration limit: `10^4` for up to 5000 components, `2m` beyond.
    pub fn default_max_iters(num_components: usize) -> usize {
        if num_components <= 5_000 {
            10_000
        } else {
            2 * num_components
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |what| Err(SolverError::InvalidConfig(what));
        if !(self.skip_threshold > 0.0) {
            return bad("skip threshold must be positive");
        }
        if !(self.kappa > 0.0) {
            return bad("kappa must be positive");
        }
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return bad("sigma must lie in (0, 1)");
        }
        if !(self.mu0 > 0.0) {
            return bad("initial smoothing level must be positive");
        }
        if self.max_iters == 0 {
            return bad("iteration limit must be positive");
        }
        if !(self.init_box >= 0.0 && self.init_box.is_finite()) {
            return bad("initial box must be finite and nonnegative");
        }
        match self.step_policy {
            StepPolicy::Fixed(a) if !(a > 0.0) => return bad("fixed step must be positive"),
            StepPolicy::Backtracking {
                initial,
                shrink,
                max_tries,
            } if !(initial > 0.0 && shrink > 0.0 && shrink < 1.0 && max_tries > 0) => {
                return bad("invalid backtracking parameters")
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Objective(#[from] ObjectiveError),
    #[error("non-finite iterate at iteration {iteration}")]
    NonFiniteIterate {
        iteration: usize,
        /// Records up to the failure.
        trace: alloc::boxed::Box<RunTrace>,
    },
    #[error("bookkeeping drift at iteration {iteration}: u {u_rel:e}, g {g_rel:e}")]
    AuditFailed {
        iteration: usize,
        u_rel: f64,
        g_rel: f64,
    },
    #[error("starting point has length {got}, expected {expected}")]
    StartDimension { expected: usize, got: usize },
}

/// Memory of one component.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentState {
    /// Last point at which the component was evaluated.
    pub z: Vector,
    /// (Generalized) gradient at `z`.
    pub v: Vector,
    /// Hessian approximation.
    pub b: SymMatrix,
    /// Smoothing level.
    pub mu: f64,
}

/// Incrementally maintained sums.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateState {
    /// `(sum_i B_i)^{-1}`
    pub binv: SymMatrix,
    /// `sum_i B_i z_i`
    pub u: Vector,
    /// `sum_i v_i`
    pub g: Vector,
}

/// Relative drift of the incrementally maintained sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Audit {
    pub u_rel: f64,
    pub g_rel: f64,
}

impl Audit {
    pub fn passes(&self, tol: f64) -> bool {
        self.u_rel <= tol && self.g_rel <= tol
    }
}

/// What happened in one iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    pub index: usize,
    pub step: f64,
    pub skipped: bool,
    /// The aggregate inverse was rebuilt by dense factorization.
    pub refactored: bool,
    /// `s^T y` of the pair that was tested.
    pub curvature: f64,
    pub nonconvex: bool,
}

/// `0`-based component index for iteration `k`.
pub fn choose_index<R: Rng>(rule: IndexRule, k: usize, m: usize, rng: &mut R) -> usize {
    match rule {
        IndexRule::Cyclic => k % m,
        IndexRule::UniformRandom { .. } => rng.random_range(0..m),
    }
}

/// Update safeguard: accept iff `s^T y > c |s| |y|`, `|s| > c` and `|y| > c`.
pub fn skip_test(s: &[f64], y: &[f64], c: f64) -> bool {
    let ns = norm(s);
    let ny = norm(y);
    dot(s, y) > c * ns * ny && ns > c && ny > c
}

/// Step length along `direction` from `point`. Backtracking never rejects
/// the iteration: if no trial decreases `f`, the smallest trial is returned.
pub fn step_length<F>(policy: StepPolicy, point: &[f64], direction: &[f64], mut f: F) -> f64
where
    F: FnMut(&[f64]) -> f64,
{
    match policy {
        StepPolicy::Unit => 1.0,
        StepPolicy::Fixed(alpha) => alpha,
        StepPolicy::Backtracking {
            initial,
            shrink,
            max_tries,
        } => {
            let f0 = f(point);
            let mut trial = vec![0.0; point.len()];
            let mut alpha = initial;
            for attempt in 0..max_tries {
                for ((t, p), d) in trial.iter_mut().zip(point).zip(direction) {
                    *t = p + alpha * d;
                }
                if f(&trial) < f0 {
                    return alpha;
                }
                if attempt + 1 < max_tries {
                    alpha *= shrink;
                }
            }
            alpha
        }
    }
}

pub(crate) fn random_start(dim: usize, init_box: f64, seed: u64) -> Vec<f64> {
    let mut rng = seeded(seed, Stream::StartingPoint);
    (0..dim)
        .map(|_| {
            if init_box > 0.0 {
                rng.random_range(-init_box..=init_box)
            } else {
                0.0
            }
        })
        .collect()
}

/// The incremental BFGS state machine.
pub struct IncrementalBfgs<'p, F: FiniteSum> {
    problem: &'p F,
    cfg: SolverConfig,
    iterate: Vector,
    components: Vec<ComponentState>,
    agg: AggregateState,
    k: usize,
    index_rng: ChaCha8Rng,
    gradient_evaluations: u64,
    // scratch
    g_buf: Vector,
    h_buf: Vector,
}

impl<'p, F: FiniteSum> IncrementalBfgs<'p, F> {
    /// Starts from a point drawn uniformly from `[-init_box, init_box]^dim`.
    pub fn new(problem: &'p F, cfg: SolverConfig) -> Result<Self, SolverError> {
        let start = random_start(problem.dim(), cfg.init_box, cfg.seed);
        Self::with_start(problem, cfg, start)
    }

    pub fn with_start(
        problem: &'p F,
        cfg: SolverConfig,
        start: Vec<f64>,
    ) -> Result<Self, SolverError> {
        cfg.validate()?;
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
        let index_seed = match cfg.index_rule {
            IndexRule::UniformRandom { seed } => seed,
            IndexRule::Cyclic => 0,
        };
        let mut solver = Self {
            problem,
            iterate: Vector::from(start.clone()),
            components: Vec::with_capacity(m),
            agg: AggregateState {
                binv: SymMatrix::scaled_identity(n, 1.0 / m as f64),
                u: Vector::zeros(n),
                g: Vector::zeros(n),
            },
            k: 0,
            index_rng: seeded(index_seed, Stream::IndexOrder),
            gradient_evaluations: 0,
            g_buf: Vector::zeros(n),
            h_buf: Vector::zeros(n),
            cfg,
        };
        for i in 0..m {
            let mu = solver.cfg.mu0;
            let v = solver.component_gradient(i, &start, mu);
            axpy(1.0, &v, &mut solver.agg.g);
            axpy(1.0, &start, &mut solver.agg.u);
            solver.components.push(ComponentState {
                z: Vector::from(start.clone()),
                v,
                b: SymMatrix::identity(n),
                mu,
            });
        }
        Ok(solver)
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn iterate(&self) -> &[f64] {
        &self.iterate
    }

    pub fn iteration(&self) -> usize {
        self.k
    }

    pub fn components(&self) -> &[ComponentState] {
        &self.components
    }

    pub fn aggregate(&self) -> &AggregateState {
        &self.agg
    }

    pub fn gradient_evaluations(&self) -> u64 {
        self.gradient_evaluations
    }

    /// Gradient that component `i` stores at `point` (the reset value for DC).
    fn component_gradient(&mut self, i: usize, point: &[f64], mu: f64) -> Vector {
        self.gradient_evaluations += 1;
        let mut out = Vector::zeros(point.len());
        match self.cfg.variant {
            Variant::Raw => self.problem.gradient(i, point, &mut out),
            Variant::Dc => {
                self.problem
                    .dc_subgradients(i, point, &mut self.g_buf, &mut self.h_buf);
                for ((o, g), h) in out.iter_mut().zip(self.g_buf.iter()).zip(self.h_buf.iter()) {
                    *o = g - h;
                }
            }
            _ => self.problem.smoothed_gradient(i, point, mu, &mut out),
        }
        let scale = self.components_weight();
        out.iter_mut().for_each(|x| *x *= scale);
        out
    }

    /// Factor `m` between a summand of the objective and the component of the
    /// averaged form `(1/m) sum_i f_i` that the curvature pairs describe.
    fn components_weight(&self) -> f64 {
        self.problem.num_components() as f64
    }

    /// Governing objective of the run at `point` given the current smoothing levels.
    pub fn governing_objective(&self, point: &[f64]) -> f64 {
        if self.cfg.variant.uses_smoothing() {
            let mus: Vec<f64> = self.components.iter().map(|c| c.mu).collect();
            self.problem.smoothed_objective(point, &mus)
        } else {
            self.problem.objective(point)
        }
    }

    /// `(min, max)` of the smoothing levels, NaN when smoothing is unused.
    pub fn mu_range(&self) -> (f64, f64) {
        if !self.cfg.variant.uses_smoothing() {
            return (f64::NAN, f64::NAN);
        }
        self.components
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| {
                (lo.min(c.mu), hi.max(c.mu))
            })
    }

    /// Recomputes `sum_i B_i z_i` and `sum_i v_i` and compares with the
    /// maintained sums, relative to the sum of term norms.
    pub fn audit(&self) -> Audit {
        let n = self.iterate.len();
        let mut u = Vector::zeros(n);
        let mut g = Vector::zeros(n);
        let mut u_scale = 0.0;
        let mut g_scale = 0.0;
        for c in &self.components {
            let bz = c.b.mul_vec(&c.z);
            u_scale += norm(&bz);
            g_scale += norm(&c.v);
            axpy(1.0, &bz, &mut u);
            axpy(1.0, &c.v, &mut g);
        }
        let diff = |a: &[f64], b: &[f64]| {
            libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
        };
        Audit {
            u_rel: diff(&u, &self.agg.u) / u_scale.max(1.0),
            g_rel: diff(&g, &self.agg.g) / g_scale.max(1.0),
        }
    }

    /// One iteration.
    pub fn step(&mut self) -> Result<StepReport, SolverError> {
        let m = self.components.len();
        let variant = self.cfg.variant;

        // model minimizer
        let mut rhs = self.agg.u.clone();
        axpy(-1.0, &self.agg.g, &mut rhs);
        let target = self.agg.binv.mul_vec(&rhs);
        let alpha = match self.cfg.step_policy {
            StepPolicy::Unit => 1.0,
            policy => {
                let mut direction = target.clone();
                axpy(-1.0, &self.iterate, &mut direction);
                step_length(policy, &self.iterate, &direction, |x| {
                    self.governing_objective(x)
                })
            }
        };
        let next = if alpha == 1.0 {
            target
        } else {
            let mut next = self.iterate.clone();
            for ((x, t), o) in next.iter_mut().zip(target.iter()).zip(self.iterate.iter()) {
                *x += alpha * (t - o);
            }
            next
        };
        if next.iter().any(|x| !x.is_finite()) {
            return Err(SolverError::NonFiniteIterate {
                iteration: self.k + 1,
                trace: alloc::boxed::Box::default(),
            });
        }

        let i = choose_index(self.cfg.index_rule, self.k, m, &mut self.index_rng);
        let nonconvex = self.problem.is_nonconvex(i);
        let mu_old = self.components[i].mu;

        // new gradient; `displacement_v` is what enters y, `stored_v` what is kept
        let mut stored_v = self.component_gradient(i, &next, mu_old);
        let mut displacement_v = stored_v.clone();
        if variant == Variant::Dc && nonconvex {
            // component_gradient left g_sub(z_new) in g_buf; pair it with h_sub(z_old)
            self.gradient_evaluations += 1;
            let g_new = self.g_buf.clone();
            let z_old = self.components[i].z.clone();
            self.problem
                .dc_subgradients(i, &z_old, &mut self.g_buf, &mut self.h_buf);
            let scale = self.components_weight();
            for ((d, g), h) in displacement_v.iter_mut().zip(g_new.iter()).zip(self.h_buf.iter()) {
                *d = scale * (g - h);
            }
        }

        let comp = &self.components[i];
        let mut s = next.clone();
        axpy(-1.0, &comp.z, &mut s);

        let mut mu_new = mu_old;
        if variant.uses_smoothing() && norm(&stored_v) < self.cfg.kappa * mu_old {
            mu_new = self.cfg.sigma * mu_old;
            stored_v = self.component_gradient(i, &next, mu_new);
            displacement_v = stored_v.clone();
        }

        let comp = &self.components[i];
        let mut y = displacement_v;
        axpy(-1.0, &comp.v, &mut y);
        if variant.convexifies() {
            let mut scaled_s = s.clone();
            scaled_s.iter_mut().for_each(|x| *x *= self.components_weight());
            self.problem.add_convexification(i, mu_new, &scaled_s, &mut y);
        }

        let curvature = dot(&s, &y);
        let mut skipped = !skip_test(&s, &y, self.cfg.skip_threshold);
        let mut refactored = false;
        let mut new_b = None;
        if !skipped {
            match bfgs_update(&comp.b, &s, &y, self.cfg.eps_denominator) {
                Ok(b) => new_b = Some(b),
                Err(LinalgError::DegenerateDenominator { .. }) => skipped = true,
                Err(e) => return Err(e.into()),
            }
        }

        // u += B_new omega_{k+1} - B_old z_old
        let old_bz = comp.b.mul_vec(&comp.z);
        let new_bz = new_b.as_ref().unwrap_or(&comp.b).mul_vec(&next);
        axpy(1.0, &new_bz, &mut self.agg.u);
        axpy(-1.0, &old_bz, &mut self.agg.u);
        axpy(1.0, &stored_v, &mut self.agg.g);
        axpy(-1.0, &comp.v, &mut self.agg.g);

        if let Some(b_new) = new_b {
            match aggregate_inverse_update(
                &self.agg.binv,
                &comp.b,
                &s,
                &y,
                self.cfg.eps_denominator,
            ) {
                Ok(binv) => {
                    self.agg.binv = binv;
                    self.components[i].b = b_new;
                }
                Err(LinalgError::DegenerateDenominator { .. }) => {
                    self.components[i].b = b_new;
                    self.agg.binv = dense_sum_invert(self.components.iter().map(|c| &c.b))?;
                    refactored = true;
                }
                Err(e) => return Err(e.into()),
            }
        }

        let comp = &mut self.components[i];
        comp.z = next.clone();
        comp.v = stored_v;
        comp.mu = mu_new;
        self.iterate = next;
        self.k += 1;

        Ok(StepReport {
            index: i,
            step: alpha,
            skipped,
            refactored,
            curvature,
            nonconvex,
        })
    }
}

/// Runs `cfg.max_iters` iterations from the configured random start.
pub fn run<F: FiniteSum>(problem: &F, cfg: &SolverConfig) -> Result<RunTrace, SolverError> {
    let solver = IncrementalBfgs::new(problem, cfg.clone())?;
    drive(solver)
}

pub fn run_from<F: FiniteSum>(
    problem: &F,
    cfg: &SolverConfig,
    start: Vec<f64>,
) -> Result<RunTrace, SolverError> {
    let solver = IncrementalBfgs::with_start(problem, cfg.clone(), start)?;
    drive(solver)
}

fn drive<F: FiniteSum>(mut solver: IncrementalBfgs<'_, F>) -> Result<RunTrace, SolverError> {
    let max_iters = solver.cfg.max_iters;
    let audit_interval = solver.cfg.audit_interval;
    let mut trace = RunTrace {
        records: Vec::with_capacity(max_iters),
        ..RunTrace::default()
    };
    for _ in 0..max_iters {
        let report = match solver.step() {
            Ok(r) => r,
            Err(SolverError::NonFiniteIterate { iteration, .. }) => {
                trace.final_point = solver.iterate.clone().into_inner();
                trace.gradient_evaluations = solver.gradient_evaluations;
                return Err(SolverError::NonFiniteIterate {
                    iteration,
                    trace: alloc::boxed::Box::new(trace),
                });
            }
            Err(e) => return Err(e),
        };
        let (mu_min, mu_max) = solver.mu_range();
        trace.records.push(IterationRecord {
            iter: solver.k,
            governing_objective: solver.governing_objective(&solver.iterate),
            objective: solver.problem.objective(&solver.iterate),
            step: report.step,
            skipped: report.skipped,
            index: report.index,
            mu_min,
            mu_max,
        });
        if let Some(every) = audit_interval {
            if every > 0 && solver.k % every == 0 {
                let audit = solver.audit();
                if !audit.passes(AUDIT_TOL) {
                    return Err(SolverError::AuditFailed {
                        iteration: solver.k,
                        u_rel: audit.u_rel,
                        g_rel: audit.g_rel,
                    });
                }
            }
        }
    }
    trace.final_point = solver.iterate.into_inner();
    trace.gradient_evaluations = solver.gradient_evaluations;
    Ok(trace)
}

/// Builds the TSVM problem that `cfg.variant` operates on.
pub fn tsvm_problem<'a>(
    data: &'a Dataset,
    obj_cfg: &ObjectiveConfig,
    cfg: &SolverConfig,
) -> Result<TsvmProblem<'a>, SolverError> {
    let variant = cfg.variant;
    let problem = TsvmProblem::new(data, *obj_cfg, variant.partition()).with_tie_rule(cfg.tie_rule);
    if variant.convexifies() {
        let factor = cfg.rho_factor.unwrap_or(variant.default_rho_factor());
        Ok(problem.with_rho_factor(factor)?)
    } else {
        Ok(problem)
    }
}

/// Runs the configured variant on the TSVM objective.
pub fn run_tsvm(
    data: &Dataset,
    obj_cfg: &ObjectiveConfig,
    cfg: &SolverConfig,
) -> Result<RunTrace, SolverError> {
    let problem = tsvm_problem(data, obj_cfg, cfg)?;
    run(&problem, cfg)
}
