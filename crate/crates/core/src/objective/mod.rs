//! The transductive SVM objective
//!
//! `F(w, b) = 1/2 |w|^2 + C1 sum_{i<p} max{0, 1 - y_i (w.x_i + b)}
//!          + C2 sum_{i>=p} max{0, 1 - |w.x_i + b|}`
//!
//! together with its difference-of-convex split, its smoothing `F^S`, the
//! convexified local model `F^C` and the strongly convex distributed model
//! `F^SC`. Everything is evaluated per component on a flat point
//! `omega = (w_1, .., w_n, b)`.
//!
//! Two component partitions are used. [`Partition::Split`] keeps `1/2 |w|^2`
//! as component 0 followed by one component per sample (`m = p + q + 1`).
//! [`Partition::Distributed`] spreads `1/2 |w|^2` over the samples
//! (`m = p + q`). Weights `C1`, `C2` are folded into each component so that
//! the components always sum to the full objective.

mod dataset;
pub mod smoothing;

use thiserror::Error;

pub use dataset::{Dataset, Label, ModelPoint};
pub use smoothing::{phi, phi_prime, psi, psi_prime, SmoothingFlavor};

use crate::linalg::dot;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ObjectiveError {
    #[error("invalid objective configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("invalid dataset: {0}")]
    InvalidDataset(&'static str),
    #[error("convexification weight {rho} is below the bound {bound}")]
    RhoTooSmall { rho: f64, bound: f64 },
    #[error("no curvature bound is available for the sqrt smoothing flavor")]
    UnsupportedFlavor,
    #[error("component {0} is convex; it has no convexification bound")]
    NotNonconvex(usize),
    #[error("operation requires the {0:?} partition")]
    WrongPartition(Partition),
}

/// Tradeoff weights of the objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveConfig {
    c1: f64,
    c2: f64,
    beta: f64,
    flavor: SmoothingFlavor,
}

impl ObjectiveConfig {
    pub const DEFAULT_BETA: f64 = 1.0;

    pub fn new(c1: f64, c2: f64) -> Result<Self, ObjectiveError> {
        if !(c1 > 0.0 && c1.is_finite()) {
            return Err(ObjectiveError::InvalidConfig("C1 must be positive"));
        }
        if !(c2 > 0.0 && c2.is_finite()) {
            return Err(ObjectiveError::InvalidConfig("C2 must be positive"));
        }
        Ok(Self {
            c1,
            c2,
            beta: Self::DEFAULT_BETA,
            flavor: SmoothingFlavor::Piecewise,
        })
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self, ObjectiveError> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(ObjectiveError::InvalidConfig("beta must be positive"));
        }
        self.beta = beta;
        Ok(self)
    }

    pub fn with_flavor(mut self, flavor: SmoothingFlavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn flavor(&self) -> SmoothingFlavor {
        self.flavor
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Regularizer,
    LabeledHinge,
    UnlabeledHat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convexity {
    StronglyConvex,
    Convex,
    Nonconvex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Partition {
    /// `1/2 |w|^2` is its own component; `m = p + q + 1`.
    Split,
    /// `1/2 |w|^2` is spread over the sample terms; `m = p + q`.
    Distributed,
}

impl Partition {
    pub fn num_components(self, data: &Dataset) -> usize {
        match self {
            Partition::Split => data.len() + 1,
            Partition::Distributed => data.len(),
        }
    }

    pub fn view(self, data: &Dataset, index: usize) -> ComponentView {
        let sample = match self {
            Partition::Split if index == 0 => None,
            Partition::Split => Some(index - 1),
            Partition::Distributed => Some(index),
        };
        assert!(index < self.num_components(data), "component index out of range");
        let kind = match sample {
            None => ComponentKind::Regularizer,
            Some(s) if s < data.labeled_count() => ComponentKind::LabeledHinge,
            Some(_) => ComponentKind::UnlabeledHat,
        };
        ComponentView {
            index,
            kind,
            sample,
            partition: self,
        }
    }

    pub fn views(self, data: &Dataset) -> impl Iterator<Item = ComponentView> + '_ {
        (0..self.num_components(data)).map(move |i| self.view(data, i))
    }
}

/// One term of a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComponentView {
    pub index: usize,
    pub kind: ComponentKind,
    /// Sample row backing the term, `None` for the regularizer.
    pub sample: Option<usize>,
    pub partition: Partition,
}

impl ComponentView {
    /// Convexity of the underlying raw term.
    pub fn convexity(&self) -> Convexity {
        match self.kind {
            ComponentKind::Regularizer => Convexity::StronglyConvex,
            ComponentKind::LabeledHinge => Convexity::Convex,
            ComponentKind::UnlabeledHat => Convexity::Nonconvex,
        }
    }

    pub fn is_nonconvex(&self) -> bool {
        self.kind == ComponentKind::UnlabeledHat
    }
}

/// Selection of a generalized-gradient element at kinks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum TieRule {
    /// Slope 0 where 0 is admissible: the flat side of a hinge, `sign(0) = 0`.
    #[default]
    ZeroSide,
    /// Slope of the piece to the left of the kink.
    Left,
    /// Slope of the piece to the right of the kink.
    Right,
}

fn tie(rule: TieRule, left: f64, right: f64, zero: f64) -> f64 {
    match rule {
        TieRule::ZeroSide => zero,
        TieRule::Left => left,
        TieRule::Right => right,
    }
}

/// Slope of `max{0, t}`.
fn hinge_slope(t: f64, rule: TieRule) -> f64 {
    if t > 0.0 {
        1.0
    } else if t < 0.0 {
        0.0
    } else {
        tie(rule, 0.0, 1.0, 0.0)
    }
}

/// Slope of `|a|`.
fn abs_slope(a: f64, rule: TieRule) -> f64 {
    if a > 0.0 {
        1.0
    } else if a < 0.0 {
        -1.0
    } else {
        tie(rule, -1.0, 1.0, 0.0)
    }
}

/// Slope of `max{0, 1 - |a|}`.
fn hat_slope(a: f64, rule: TieRule) -> f64 {
    if a < -1.0 || a > 1.0 {
        0.0
    } else if a == -1.0 {
        tie(rule, 0.0, 1.0, 0.0)
    } else if a < 0.0 {
        1.0
    } else if a == 0.0 {
        tie(rule, 1.0, -1.0, 0.0)
    } else if a < 1.0 {
        -1.0
    } else {
        tie(rule, -1.0, 0.0, 0.0)
    }
}

/// Slope of `max{0, |a| - 1}`.
fn dc_convex_slope(a: f64, rule: TieRule) -> f64 {
    if a < -1.0 {
        -1.0
    } else if a == -1.0 {
        tie(rule, -1.0, 0.0, 0.0)
    } else if a < 1.0 {
        0.0
    } else if a == 1.0 {
        tie(rule, 0.0, 1.0, 0.0)
    } else {
        1.0
    }
}

fn split_point(omega: &[f64]) -> (&[f64], f64) {
    let (b, w) = omega.split_last().expect("point has at least the intercept");
    (w, *b)
}

fn margin_arg(data: &Dataset, sample: usize, omega: &[f64]) -> f64 {
    let (w, b) = split_point(omega);
    dot(w, data.features(sample)) + b
}

/// `out = scale * (x_sample; 1)`
fn write_feature_direction(data: &Dataset, sample: usize, scale: f64, out: &mut [f64]) {
    let (last, head) = out.split_last_mut().unwrap();
    for (o, x) in head.iter_mut().zip(data.features(sample)) {
        *o = scale * x;
    }
    *last = scale;
}

fn half_sq_norm_w(omega: &[f64]) -> f64 {
    let (w, _) = split_point(omega);
    0.5 * dot(w, w)
}

/// Coefficient on `|w|^2` that a sample component carries in the distributed partition.
pub fn distributed_w_share(data: &Dataset, kind: ComponentKind) -> f64 {
    let p = data.labeled_count();
    let q = data.unlabeled_count();
    if p > 0 && q > 0 {
        match kind {
            ComponentKind::LabeledHinge => 0.25 / p as f64,
            ComponentKind::UnlabeledHat => 0.25 / q as f64,
            ComponentKind::Regularizer => 0.0,
        }
    } else {
        0.5 / data.len() as f64
    }
}

/// Value and gradient of the `|w|^2` share of a component (regularizer or distributed piece).
fn w_part(data: &Dataset, view: &ComponentView, omega: &[f64]) -> f64 {
    match (view.partition, view.kind) {
        (_, ComponentKind::Regularizer) => half_sq_norm_w(omega),
        (Partition::Split, _) => 0.0,
        (Partition::Distributed, kind) => 2.0 * distributed_w_share(data, kind) * half_sq_norm_w(omega),
    }
}

fn add_w_part_gradient(data: &Dataset, view: &ComponentView, omega: &[f64], out: &mut [f64]) {
    let coef = match (view.partition, view.kind) {
        (_, ComponentKind::Regularizer) => 1.0,
        (Partition::Split, _) => return,
        (Partition::Distributed, kind) => 2.0 * distributed_w_share(data, kind),
    };
    let (w, _) = split_point(omega);
    for (o, wi) in out.iter_mut().zip(w) {
        *o += coef * wi;
    }
}

/// Full raw objective.
pub fn eval_f(cfg: &ObjectiveConfig, data: &Dataset, omega: &[f64]) -> f64 {
    let p = data.labeled_count();
    let mut hinge = 0.0;
    let mut hat = 0.0;
    for i in 0..data.len() {
        let a = margin_arg(data, i, omega);
        match data.label(i) {
            Some(y) => hinge += (1.0 - y.sign() * a).max(0.0),
            None => hat += (1.0 - a.abs()).max(0.0),
        }
        debug_assert_eq!(data.label(i).is_some(), i < p);
    }
    half_sq_norm_w(omega) + cfg.c1 * hinge + cfg.c2 * hat
}

/// Value of one raw component, weights folded in.
pub fn component_value(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    omega: &[f64],
) -> f64 {
    let base = w_part(data, view, omega);
    match (view.kind, view.sample) {
        (ComponentKind::LabeledHinge, Some(s)) => {
            let y = data.label(s).unwrap().sign();
            base + cfg.c1 * (1.0 - y * margin_arg(data, s, omega)).max(0.0)
        }
        (ComponentKind::UnlabeledHat, Some(s)) => {
            base + cfg.c2 * (1.0 - margin_arg(data, s, omega).abs()).max(0.0)
        }
        _ => base,
    }
}

/// Writes one element of the generalized gradient of a raw component.
pub fn generalized_gradient(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    omega: &[f64],
    rule: TieRule,
    out: &mut [f64],
) {
    match (view.kind, view.sample) {
        (ComponentKind::LabeledHinge, Some(s)) => {
            let y = data.label(s).unwrap().sign();
            let t = 1.0 - y * margin_arg(data, s, omega);
            write_feature_direction(data, s, -cfg.c1 * y * hinge_slope(t, rule), out);
        }
        (ComponentKind::UnlabeledHat, Some(s)) => {
            let a = margin_arg(data, s, omega);
            write_feature_direction(data, s, cfg.c2 * hat_slope(a, rule), out);
        }
        _ => out.fill(0.0),
    }
    add_w_part_gradient(data, view, omega, out);
}

/// Returns `(g, h)` with `component_value = g - h`, both convex.
///
/// Only the hat term has a nontrivial split,
/// `max{0, 1 - |a|} = max{0, |a| - 1} - (|a| - 1)`; other components return `h = 0`.
pub fn dc_split_value(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    omega: &[f64],
) -> (f64, f64) {
    match (view.kind, view.sample) {
        (ComponentKind::UnlabeledHat, Some(s)) => {
            let a = margin_arg(data, s, omega).abs();
            let g = w_part(data, view, omega) + cfg.c2 * (a - 1.0).max(0.0);
            (g, cfg.c2 * (a - 1.0))
        }
        _ => (component_value(cfg, data, view, omega), 0.0),
    }
}

/// Subgradients of the two convex pieces of [`dc_split_value`].
pub fn dc_subgradients(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    omega: &[f64],
    rule: TieRule,
    g_out: &mut [f64],
    h_out: &mut [f64],
) {
    match (view.kind, view.sample) {
        (ComponentKind::UnlabeledHat, Some(s)) => {
            let a = margin_arg(data, s, omega);
            write_feature_direction(data, s, cfg.c2 * dc_convex_slope(a, rule), g_out);
            add_w_part_gradient(data, view, omega, g_out);
            write_feature_direction(data, s, cfg.c2 * abs_slope(a, rule), h_out);
        }
        _ => {
            generalized_gradient(cfg, data, view, omega, rule, g_out);
            h_out.fill(0.0);
        }
    }
}

/// Value of one smoothed component.
pub fn fs_value(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    omega: &[f64],
    mu: f64,
) -> f64 {
    let base = w_part(data, view, omega);
    let flavor = cfg.flavor;
    match (view.kind, view.sample) {
        (ComponentKind::LabeledHinge, Some(s)) => {
            let y = data.label(s).unwrap().sign();
            base + cfg.c1 * phi(1.0 - y * margin_arg(data, s, omega), mu, flavor)
        }
        (ComponentKind::UnlabeledHat, Some(s)) => {
            let a = margin_arg(data, s, omega);
            base + cfg.c2 * phi(1.0 - psi(a, mu, flavor), mu, flavor)
        }
        _ => base,
    }
}

/// Gradient of one smoothed component.
pub fn fs_gradient(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    omega: &[f64],
    mu: f64,
    out: &mut [f64],
) {
    let flavor = cfg.flavor;
    match (view.kind, view.sample) {
        (ComponentKind::LabeledHinge, Some(s)) => {
            let y = data.label(s).unwrap().sign();
            let t = 1.0 - y * margin_arg(data, s, omega);
            write_feature_direction(data, s, -cfg.c1 * y * phi_prime(t, mu, flavor), out);
        }
        (ComponentKind::UnlabeledHat, Some(s)) => {
            let a = margin_arg(data, s, omega);
            let outer = phi_prime(1.0 - psi(a, mu, flavor), mu, flavor);
            write_feature_direction(data, s, -cfg.c2 * outer * psi_prime(a, mu, flavor), out);
        }
        _ => out.fill(0.0),
    }
    add_w_part_gradient(data, view, omega, out);
}

/// Full smoothed objective with a common smoothing level.
pub fn eval_fs(cfg: &ObjectiveConfig, data: &Dataset, omega: &[f64], mu: f64) -> f64 {
    Partition::Split
        .views(data)
        .map(|v| fs_value(cfg, data, &v, omega, mu))
        .sum()
}

/// Lipschitz constant `2 (|x_i|^2 + 1) / mu` of the gradient of `1 - psi(w.x_i + b, mu)`.
///
/// Adding `rho/2 |omega - base|^2` with `rho` at least this value makes the
/// smoothed hat term convex.
pub fn rho_lower_bound(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    mu: f64,
) -> Result<f64, ObjectiveError> {
    let sample = match (view.kind, view.sample) {
        (ComponentKind::UnlabeledHat, Some(s)) => s,
        _ => return Err(ObjectiveError::NotNonconvex(view.index)),
    };
    if cfg.flavor != SmoothingFlavor::Piecewise {
        return Err(ObjectiveError::UnsupportedFlavor);
    }
    let x = data.features(sample);
    Ok(2.0 * (dot(x, x) + 1.0) / mu)
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn check_rho(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    mu: f64,
    rho: f64,
) -> Result<(), ObjectiveError> {
    let bound = rho_lower_bound(cfg, data, view, mu)?;
    if rho < bound {
        Err(ObjectiveError::RhoTooSmall { rho, bound })
    } else {
        Ok(())
    }
}

/// Convexified local model of one smoothed component about `base`:
/// `f^S + C2 rho/2 |omega - base|^2` on hat terms, `f^S` elsewhere.
pub fn fc_value(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    omega: &[f64],
    mu: f64,
    base: &[f64],
    rho: f64,
) -> Result<f64, ObjectiveError> {
    let fs = fs_value(cfg, data, view, omega, mu);
    if !view.is_nonconvex() {
        return Ok(fs);
    }
    check_rho(cfg, data, view, mu, rho)?;
    Ok(fs + 0.5 * cfg.c2 * rho * sq_dist(omega, base))
}

pub fn fc_gradient(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    omega: &[f64],
    mu: f64,
    base: &[f64],
    rho: f64,
    out: &mut [f64],
) -> Result<(), ObjectiveError> {
    if view.is_nonconvex() {
        check_rho(cfg, data, view, mu, rho)?;
    }
    fs_gradient(cfg, data, view, omega, mu, out);
    if view.is_nonconvex() {
        for ((o, x), b) in out.iter_mut().zip(omega).zip(base) {
            *o += cfg.c2 * rho * (x - b);
        }
    }
    Ok(())
}

/// Strongly convex model of one component of the distributed partition.
///
/// Labeled: `f^S + |w|^2 share + beta/(2p) (b - b_base)^2`.
/// Unlabeled: `f^S + |w|^2 share + C2 rho/2 |omega - base|^2`.
pub fn fsc_value(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    omega: &[f64],
    mu: f64,
    base: &[f64],
    rho: f64,
) -> Result<f64, ObjectiveError> {
    if view.partition != Partition::Distributed {
        return Err(ObjectiveError::WrongPartition(Partition::Distributed));
    }
    let fs = fs_value(cfg, data, view, omega, mu);
    match view.kind {
        ComponentKind::LabeledHinge => {
            let db = omega[omega.len() - 1] - base[base.len() - 1];
            Ok(fs + cfg.beta / (2.0 * data.labeled_count() as f64) * db * db)
        }
        ComponentKind::UnlabeledHat => {
            check_rho(cfg, data, view, mu, rho)?;
            Ok(fs + 0.5 * cfg.c2 * rho * sq_dist(omega, base))
        }
        ComponentKind::Regularizer => Ok(fs),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn fsc_gradient(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    omega: &[f64],
    mu: f64,
    base: &[f64],
    rho: f64,
    out: &mut [f64],
) -> Result<(), ObjectiveError> {
    if view.partition != Partition::Distributed {
        return Err(ObjectiveError::WrongPartition(Partition::Distributed));
    }
    if view.kind == ComponentKind::UnlabeledHat {
        check_rho(cfg, data, view, mu, rho)?;
    }
    fs_gradient(cfg, data, view, omega, mu, out);
    let d: alloc::vec::Vec<f64> = omega.iter().zip(base).map(|(x, b)| x - b).collect();
    add_model_curvature(cfg, data, view, rho, &d, out);
    Ok(())
}

/// `out += H d` where `H` is the Hessian of the quadratic that turns a
/// smoothed component into its convexified (split partition) or strongly
/// convex (distributed partition) model.
pub fn add_model_curvature(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    rho: f64,
    d: &[f64],
    out: &mut [f64],
) {
    match view.kind {
        ComponentKind::UnlabeledHat => {
            for (o, x) in out.iter_mut().zip(d) {
                *o += cfg.c2 * rho * x;
            }
        }
        ComponentKind::LabeledHinge if view.partition == Partition::Distributed => {
            let last = out.len() - 1;
            out[last] += cfg.beta / data.labeled_count() as f64 * d[last];
        }
        _ => {}
    }
}

/// Strong convexity modulus of an [`fsc_value`] component for a given `rho`.
pub fn fsc_strong_convexity(
    cfg: &ObjectiveConfig,
    data: &Dataset,
    view: &ComponentView,
    mu: f64,
    rho: f64,
) -> Result<f64, ObjectiveError> {
    let share = 2.0 * distributed_w_share(data, view.kind);
    match view.kind {
        ComponentKind::LabeledHinge => Ok(share.min(cfg.beta / data.labeled_count() as f64)),
        ComponentKind::UnlabeledHat => {
            let bound = rho_lower_bound(cfg, data, view, mu)?;
            Ok(cfg.c2 * (rho - bound))
        }
        ComponentKind::Regularizer => Ok(1.0),
    }
}
