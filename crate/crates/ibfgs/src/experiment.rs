//! Grid experiments: datasets x folds x C-pairs x solvers.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ibfgs_core::objective::SmoothingFlavor;
use ibfgs_core::solver::tsvm_problem;
use ibfgs_core::{
    run, run_subgradient, BaselineConfig, Dataset, ObjectiveConfig, RunTrace, SolverConfig,
    SolverError, StepPolicy, StepRule, Variant,
};
use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::data::{self, DataError, Holdout, RawSample, SplitSpec};
use crate::eval::test_error;
use crate::profile::{performance_profile, ProfileError};
use crate::trace_io::serialize_trace;

pub const BASELINE_NAME: &str = "subgradient";
pub const SUMMARY_HEADER: &str =
    "dataset,fold,c1,c2,solver,final_obj,test_error,iterations,skips,gradient_evals";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("dataset `{dataset}`")]
    Data {
        dataset: String,
        #[source]
        source: DataError,
    },
    #[error("{}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    pub n: usize,
    pub count: usize,
    pub separation: f64,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    pub name: String,
    /// Sparse sample file; relative paths resolve against the config file.
    pub file: Option<PathBuf>,
    pub synthetic: Option<SyntheticSpec>,
    /// Min-max scale features to `[0, 1]` using the training part of each fold.
    #[serde(default)]
    pub scale: bool,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum C2Rule {
    /// `C2 = C1 * 10^-j`
    #[default]
    Scaled,
    /// `C2 = C1^-j`
    Power,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "default_c1_exponents")]
    pub c1_exponents: Vec<i32>,
    #[serde(default = "default_c2_exponents")]
    pub c2_exponents: Vec<i32>,
    #[serde(default)]
    pub c2_rule: C2Rule,
}

fn default_c1_exponents() -> Vec<i32> {
    vec![-1, 0, 1, 2]
}

fn default_c2_exponents() -> Vec<i32> {
    vec![0, 1, 2]
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            c1_exponents: default_c1_exponents(),
            c2_exponents: default_c2_exponents(),
            c2_rule: C2Rule::default(),
        }
    }
}

impl GridSpec {
    /// `(C1, C2)` pairs in row-major order over the exponent lists.
    pub fn pairs(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for &i in &self.c1_exponents {
            let c1 = 10f64.powi(i);
            for &j in &self.c2_exponents {
                let c2 = match self.c2_rule {
                    C2Rule::Scaled => c1 * 10f64.powi(-j),
                    C2Rule::Power => c1.powi(-j),
                };
                out.push((c1, c2));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SplitConfig {
    #[serde(default = "default_fraction")]
    pub labeled_fraction: f64,
    #[serde(default = "default_folds")]
    pub folds: usize,
    #[serde(default)]
    pub seed: u64,
    /// Use a prefix train/test split instead of k folds.
    pub train_count: Option<usize>,
    /// Run only the first this many folds.
    pub max_folds: Option<usize>,
}

fn default_fraction() -> f64 {
    0.1
}

fn default_folds() -> usize {
    10
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self {
            labeled_fraction: default_fraction(),
            folds: default_folds(),
            seed: 0,
            train_count: None,
            max_folds: None,
        }
    }
}

impl SplitConfig {
    pub fn spec(&self) -> SplitSpec {
        SplitSpec {
            labeled_fraction: self.labeled_fraction,
            fold_count: self.folds,
            seed: self.seed,
            holdout: match self.train_count {
                Some(train_count) => Holdout::FixedSplit { train_count },
                None => Holdout::KFold,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum StepChoice {
    /// Backtracking for the raw variant, unit steps otherwise.
    #[default]
    Default,
    Unit,
    Fixed,
    Backtracking,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    /// Defaults to `10^4`, or `2m` for more than 5000 components.
    pub max_iters: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_init_box")]
    pub init_box: f64,
    #[serde(default = "default_c")]
    pub skip_threshold: f64,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default = "default_mu0")]
    pub mu0: f64,
    #[serde(default)]
    pub step: StepChoice,
    /// Step length for `step = "fixed"`, initial trial for backtracking.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Random component order with this seed instead of cyclic.
    pub random_order_seed: Option<u64>,
    pub rho_factor: Option<f64>,
    pub audit_interval: Option<usize>,
}

fn default_init_box() -> f64 {
    5.0
}
fn default_c() -> f64 {
    1e-8
}
fn default_kappa() -> f64 {
    0.5
}
fn default_sigma() -> f64 {
    0.9
}
fn default_mu0() -> f64 {
    0.1
}
fn default_alpha() -> f64 {
    1.0
}

impl Default for SolverSpec {
    fn default() -> Self {
        Self {
            max_iters: None,
            seed: 0,
            init_box: default_init_box(),
            skip_threshold: default_c(),
            kappa: default_kappa(),
            sigma: default_sigma(),
            mu0: default_mu0(),
            step: StepChoice::Default,
            alpha: default_alpha(),
            random_order_seed: None,
            rho_factor: None,
            audit_interval: None,
        }
    }
}

impl SolverSpec {
    pub fn config(&self, variant: Variant, num_components: usize) -> SolverConfig {
        let mut cfg = SolverConfig::new(variant);
        cfg.max_iters = self
            .max_iters
            .unwrap_or_else(|| SolverConfig::default_max_iters(num_components));
        cfg.seed = self.seed;
        cfg.init_box = self.init_box;
        cfg.skip_threshold = self.skip_threshold;
        cfg.kappa = self.kappa;
        cfg.sigma = self.sigma;
        cfg.mu0 = self.mu0;
        cfg.rho_factor = self.rho_factor;
        cfg.audit_interval = self.audit_interval;
        cfg.step_policy = match self.step {
            StepChoice::Default => variant.default_step_policy(),
            StepChoice::Unit => StepPolicy::Unit,
            StepChoice::Fixed => StepPolicy::Fixed(self.alpha),
            StepChoice::Backtracking => StepPolicy::Backtracking {
                initial: self.alpha,
                shrink: 0.5,
                max_tries: 10,
            },
        };
        if let Some(seed) = self.random_order_seed {
            cfg.index_rule = ibfgs_core::IndexRule::UniformRandom { seed };
        }
        cfg
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum BaselineStep {
    Constant,
    #[default]
    Diminishing,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BaselineSpec {
    #[serde(default = "default_true")]
    pub enabled: bool,
    #[serde(default)]
    pub step_rule: BaselineStep,
    #[serde(default = "default_baseline_alpha")]
    pub alpha: f64,
    /// Defaults to the solver budget including its `m` initial gradients.
    pub max_iters: Option<usize>,
}

fn default_true() -> bool {
    true
}
fn default_baseline_alpha() -> f64 {
    1e-2
}

impl Default for BaselineSpec {
    fn default() -> Self {
        Self {
            enabled: true,
            step_rule: BaselineStep::default(),
            alpha: default_baseline_alpha(),
            max_iters: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum FlavorChoice {
    #[default]
    Piecewise,
    Sqrt,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub datasets: Vec<DatasetSpec>,
    #[serde(default)]
    pub split: SplitConfig,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default)]
    pub flavor: FlavorChoice,
    /// Variant names: `ibfgs`, `ibfgs-dc`, `ibfgs-s`, `ibfgs-c`, `ibfgs-sc`.
    #[serde(default = "default_variants")]
    pub variants: Vec<String>,
    #[serde(default)]
    pub solver: SolverSpec,
    #[serde(default)]
    pub baseline: BaselineSpec,
    /// Parallel grid cells; 0 uses all cores.
    #[serde(default)]
    pub workers: usize,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
}

fn default_beta() -> f64 {
    1.0
}

fn default_variants() -> Vec<String> {
    Variant::ALL.iter().map(|v| v.name().to_string()).collect()
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ExperimentError> {
        toml::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))
    }

    /// Reads a config file; dataset paths are taken relative to its directory.
    pub fn load(path: &Path) -> Result<Self, ExperimentError> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        let mut cfg = Self::from_toml(&text)?;
        if let Some(dir) = path.parent() {
            for d in &mut cfg.datasets {
                if let Some(f) = &mut d.file {
                    if f.is_relative() {
                        *f = dir.join(&*f);
                    }
                }
            }
        }
        Ok(cfg)
    }

    pub fn parsed_variants(&self) -> Result<Vec<Variant>, ExperimentError> {
        self.variants
            .iter()
            .map(|name| {
                Variant::from_name(name)
                    .ok_or_else(|| ExperimentError::Config(format!("unknown variant `{name}`")))
            })
            .collect()
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: &str| Err(ExperimentError::Config(m.to_string()));
        if self.datasets.is_empty() {
            return bad("no datasets");
        }
        if self.grid.pairs().is_empty() {
            return bad("empty C grid");
        }
        if self.variants.is_empty() && !self.baseline.enabled {
            return bad("no solvers selected");
        }
        self.parsed_variants()?;
        for d in &self.datasets {
            if d.file.is_some() == d.synthetic.is_some() {
                return bad(&format!(
                    "dataset `{}` needs exactly one of `file` or `synthetic`",
                    d.name
                ));
            }
            if d.name.is_empty() || d.name.contains([',', '/', '\\']) {
                return bad("dataset names must be nonempty without `,` or path separators");
            }
        }
        self.split.spec().validate().map_err(|e| ExperimentError::Config(e.to_string()))?;
        if !(self.beta > 0.0) {
            return bad("beta must be positive");
        }
        if self.baseline.enabled && !(self.baseline.alpha > 0.0) {
            return bad("baseline step must be positive");
        }
        Ok(())
    }
}

/// One row of `summary.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub dataset: String,
    pub fold: usize,
    pub c1: f64,
    pub c2: f64,
    pub solver: String,
    pub final_objective: f64,
    pub test_error: f64,
    pub iterations: usize,
    pub skips: usize,
    pub gradient_evaluations: u64,
    pub wall_time_secs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub dataset: String,
    pub fold: usize,
    pub c1: f64,
    pub c2: f64,
    pub solver: String,
    pub message: String,
}

#[derive(Debug, Default)]
pub struct ExperimentReport {
    pub summaries: Vec<CellSummary>,
    pub failures: Vec<CellFailure>,
    /// Best C-pair per (dataset, solver): `(dataset, solver, c1, c2, mean test error)`.
    pub selected: Vec<(String, String, f64, f64, f64)>,
}

#[derive(Debug, Clone, Copy)]
enum SolverKind {
    Ibfgs(Variant),
    Baseline,
}

impl SolverKind {
    fn name(self) -> &'static str {
        match self {
            SolverKind::Ibfgs(v) => v.name(),
            SolverKind::Baseline => BASELINE_NAME,
        }
    }
}

struct PreparedFold {
    dataset: String,
    fold: usize,
    train: Dataset,
    test: Vec<(Vec<f64>, ibfgs_core::Label)>,
}

fn load_samples(spec: &DatasetSpec) -> Result<Vec<RawSample>, DataError> {
    match (&spec.file, &spec.synthetic) {
        (Some(path), _) => {
            let file = fs::File::open(path)?;
            data::read_sparse(std::io::BufReader::new(file))
        }
        (None, Some(s)) => Ok(data::generate_gaussian_pair(s.n, s.count, s.separation, s.seed)),
        (None, None) => unreachable!("validated"),
    }
}

fn prepare(cfg: &ExperimentConfig, spec: &DatasetSpec) -> Result<Vec<PreparedFold>, DataError> {
    let samples = load_samples(spec)?;
    if let Some(i) = samples.iter().position(|s| s.label.is_none()) {
        return Err(DataError::MissingLabel(i));
    }
    let dim = data::max_index(&samples).max(1);
    let split = cfg.split.spec();
    let mut folds = data::holdout_folds(samples.len(), &split)?;
    if let Some(k) = cfg.split.max_folds {
        folds.truncate(k);
    }
    folds
        .into_iter()
        .enumerate()
        .map(|(f, fold)| {
            let mut train: Vec<RawSample> = fold.train.iter().map(|&i| samples[i].clone()).collect();
            let mut test: Vec<RawSample> = fold.test.iter().map(|&i| samples[i].clone()).collect();
            if spec.scale {
                let scaler = data::MinMaxScaler::fit(&train, dim);
                train = scaler.transform(&train);
                test = scaler.transform(&test);
            }
            let seed = split.seed.wrapping_add(f as u64);
            let train = data::mask_labels_with_dim(&train, split.labeled_fraction, seed, dim)?;
            let test = test
                .iter()
                .map(|s| (s.densify(dim), s.label.unwrap()))
                .collect();
            Ok(PreparedFold {
                dataset: spec.name.clone(),
                fold: f,
                train,
                test,
            })
        })
        .collect()
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), ExperimentError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

fn run_cell(
    cfg: &ExperimentConfig,
    fold: &PreparedFold,
    (c1, c2): (f64, f64),
    kind: SolverKind,
    trace_dir: &Path,
    cell_name: &str,
) -> Result<CellSummary, String> {
    let flavor = match cfg.flavor {
        FlavorChoice::Piecewise => SmoothingFlavor::Piecewise,
        FlavorChoice::Sqrt => SmoothingFlavor::Sqrt,
    };
    let obj = ObjectiveConfig::new(c1, c2)
        .and_then(|o| o.with_beta(cfg.beta))
        .map_err(|e| e.to_string())?
        .with_flavor(flavor);
    let m = fold.train.len() + 1;
    let started = Instant::now();
    let outcome = match kind {
        SolverKind::Ibfgs(variant) => {
            let solver_cfg = cfg.solver.config(variant, m);
            tsvm_problem(&fold.train, &obj, &solver_cfg).and_then(|p| run(&p, &solver_cfg))
        }
        SolverKind::Baseline => {
            let budget = cfg.solver.max_iters.unwrap_or_else(|| SolverConfig::default_max_iters(m));
            let bcfg = BaselineConfig {
                step_rule: match cfg.baseline.step_rule {
                    BaselineStep::Constant => StepRule::Constant(cfg.baseline.alpha),
                    BaselineStep::Diminishing => StepRule::Diminishing(cfg.baseline.alpha),
                },
                max_iters: cfg.baseline.max_iters.unwrap_or(budget + m),
                seed: cfg.solver.seed,
                init_box: cfg.solver.init_box,
            };
            let problem = ibfgs_core::TsvmProblem::new(&fold.train, obj, ibfgs_core::Partition::Split);
            run_subgradient(&problem, &bcfg)
        }
    };
    let elapsed = started.elapsed().as_secs_f64();
    let trace_path = trace_dir.join(format!("{cell_name}.csv"));
    let mut trace: RunTrace = match outcome {
        Ok(t) => t,
        Err(SolverError::NonFiniteIterate { iteration, trace }) => {
            let _ = write_atomic(&trace_path, &serialize_trace(&trace));
            return Err(format!("non-finite iterate at iteration {iteration}"));
        }
        Err(e) => return Err(e.to_string()),
    };
    trace.wall_time_secs = elapsed;
    write_atomic(&trace_path, &serialize_trace(&trace)).map_err(|e| e.to_string())?;
    let model = trace.final_model();
    Ok(CellSummary {
        dataset: fold.dataset.clone(),
        fold: fold.fold,
        c1,
        c2,
        solver: kind.name().to_string(),
        final_objective: trace.final_objective().unwrap_or(f64::NAN),
        test_error: test_error(&model, fold.test.iter().map(|(x, y)| (x.as_slice(), *y))),
        iterations: trace.iterations(),
        skips: trace.skip_count(),
        gradient_evaluations: trace.gradient_evaluations,
        wall_time_secs: trace.wall_time_secs,
    })
}

/// Runs every cell, writing `traces/`, `summary.csv`, `timings.csv`,
/// `selected.csv`, `errors.csv` and, with two or more solvers, the profile tables.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate()?;
    let variants = cfg.parsed_variants()?;
    let mut kinds: Vec<SolverKind> = variants.into_iter().map(SolverKind::Ibfgs).collect();
    if cfg.baseline.enabled {
        kinds.push(SolverKind::Baseline);
    }
    let pairs = cfg.grid.pairs();

    let mut folds = Vec::new();
    for spec in &cfg.datasets {
        folds.extend(prepare(cfg, spec).map_err(|source| ExperimentError::Data {
            dataset: spec.name.clone(),
            source,
        })?);
    }

    let out = &cfg.output_dir;
    let trace_dir = out.join("traces");
    fs::create_dir_all(&trace_dir).map_err(io_err(&trace_dir))?;

    let mut cells = Vec::new();
    for fold in &folds {
        for (pi, &pair) in pairs.iter().enumerate() {
            for &kind in &kinds {
                let name = format!("{}_fold{}_c{}_{}", fold.dataset, fold.fold, pi, kind.name());
                cells.push((fold, pair, kind, name));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let results: Vec<Result<CellSummary, CellFailure>> = pool.install(|| {
        cells
            .par_iter()
            .map(|(fold, pair, kind, name)| {
                run_cell(cfg, fold, *pair, *kind, &trace_dir, name).map_err(|message| CellFailure {
                    dataset: fold.dataset.clone(),
                    fold: fold.fold,
                    c1: pair.0,
                    c2: pair.1,
                    solver: kind.name().to_string(),
                    message,
                })
            })
            .collect()
    });

    let mut report = ExperimentReport::default();
    for r in results {
        match r {
            Ok(s) => report.summaries.push(s),
            Err(f) => report.failures.push(f),
        }
    }
    report.selected = select_pairs(&report.summaries);

    write_atomic(&out.join("summary.csv"), &summary_csv(&report.summaries))?;
    write_atomic(&out.join("timings.csv"), &timings_csv(&report.summaries))?;
    write_atomic(&out.join("selected.csv"), &selected_csv(&report.selected))?;
    write_atomic(&out.join("errors.csv"), &errors_csv(&report.failures))?;
    if kinds.len() >= 2 {
        write_profile(&report.summaries, out)?;
    }
    Ok(report)
}

fn summary_csv(rows: &[CellSummary]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{:e},{:e},{},{:.16e},{:.16e},{},{},{}",
            r.dataset,
            r.fold,
            r.c1,
            r.c2,
            r.solver,
            r.final_objective,
            r.test_error,
            r.iterations,
            r.skips,
            r.gradient_evaluations
        )
        .unwrap();
    }
    out
}

fn timings_csv(rows: &[CellSummary]) -> String {
    let mut out = String::from("dataset,fold,c1,c2,solver,wall_time_secs\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{:e},{:e},{},{:.6}",
            r.dataset, r.fold, r.c1, r.c2, r.solver, r.wall_time_secs
        )
        .unwrap();
    }
    out
}

fn errors_csv(rows: &[CellFailure]) -> String {
    let mut out = String::from("dataset,fold,c1,c2,solver,message\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{:e},{:e},{},\"{}\"",
            r.dataset,
            r.fold,
            r.c1,
            r.c2,
            r.solver,
            r.message.replace('"', "'")
        )
        .unwrap();
    }
    out
}

fn selected_csv(rows: &[(String, String, f64, f64, f64)]) -> String {
    let mut out = String::from("dataset,solver,c1,c2,mean_test_error\n");
    for (d, s, c1, c2, e) in rows {
        writeln!(out, "{d},{s},{c1:e},{c2:e},{e:.16e}").unwrap();
    }
    out
}

/// Per (dataset, solver), the C-pair with the lowest fold-averaged test
/// error; ties go to the earlier grid point.
pub fn select_pairs(rows: &[CellSummary]) -> Vec<(String, String, f64, f64, f64)> {
    let mut groups: Vec<(String, String, f64, f64, f64, usize)> = Vec::new();
    for r in rows {
        match groups
            .iter_mut()
            .find(|g| g.0 == r.dataset && g.1 == r.solver && g.2 == r.c1 && g.3 == r.c2)
        {
            Some(g) => {
                g.4 += r.test_error;
                g.5 += 1;
            }
            None => groups.push((r.dataset.clone(), r.solver.clone(), r.c1, r.c2, r.test_error, 1)),
        }
    }
    let mut best: Vec<(String, String, f64, f64, f64)> = Vec::new();
    for (d, s, c1, c2, sum, n) in groups {
        let mean = sum / n as f64;
        match best.iter_mut().find(|b| b.0 == d && b.1 == s) {
            Some(b) if mean < b.4 => *b = (d, s, c1, c2, mean),
            Some(_) => {}
            None => best.push((d, s, c1, c2, mean)),
        }
    }
    best
}

/// Groups summary rows into problems keyed by (dataset, fold, C1, C2) and
/// keeps only problems where every solver finished.
pub fn profile_inputs(rows: &[CellSummary]) -> (Vec<String>, Vec<String>, Vec<Vec<f64>>) {
    let mut solvers: Vec<String> = Vec::new();
    for r in rows {
        if !solvers.contains(&r.solver) {
            solvers.push(r.solver.clone());
        }
    }
    let mut problems: Vec<(String, Vec<f64>)> = Vec::new();
    for r in rows {
        let key = format!("{}/{}/{:e}/{:e}", r.dataset, r.fold, r.c1, r.c2);
        let s = solvers.iter().position(|x| *x == r.solver).unwrap();
        let entry = match problems.iter_mut().position(|p| p.0 == key) {
            Some(i) => &mut problems[i],
            None => {
                problems.push((key, vec![f64::NAN; solvers.len()]));
                problems.last_mut().unwrap()
            }
        };
        entry.1[s] = r.final_objective;
    }
    problems.retain(|p| p.1.iter().all(|v| v.is_finite()));
    let (names, values) = problems.into_iter().unzip();
    (solvers, names, values)
}

/// Writes `profile_ratios.csv` and `profile_curves.csv` into `out`.
pub fn write_profile(rows: &[CellSummary], out: &Path) -> Result<(), ExperimentError> {
    let (solvers, names, values) = profile_inputs(rows);
    let table = performance_profile(&solvers, &values)?;
    write_atomic(&out.join("profile_ratios.csv"), &table.ratios_csv(&names))?;
    write_atomic(&out.join("profile_curves.csv"), &table.curves_csv())
}

/// Reads back a `summary.csv`.
pub fn parse_summary(text: &str) -> Result<Vec<CellSummary>, ExperimentError> {
    let mut lines = text.lines();
    if lines.next() != Some(SUMMARY_HEADER) {
        return Err(ExperimentError::Config("summary header mismatch".into()));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let bad = || ExperimentError::Config(format!("summary line {}: malformed", i + 2));
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 10 {
                return Err(bad());
            }
            let real = |k: usize| f[k].parse::<f64>().map_err(|_| bad());
            Ok(CellSummary {
                dataset: f[0].to_string(),
                fold: f[1].parse().map_err(|_| bad())?,
                c1: real(2)?,
                c2: real(3)?,
                solver: f[4].to_string(),
                final_objective: real(5)?,
                test_error: real(6)?,
                iterations: f[7].parse().map_err(|_| bad())?,
                skips: f[8].parse().map_err(|_| bad())?,
                gradient_evaluations: f[9].parse().map_err(|_| bad())?,
                wall_time_secs: 0.0,
            })
        })
        .collect()
}
