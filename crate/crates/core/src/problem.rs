//! Finite-sum problems as seen by the incremental solvers.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{axpy, dense_sum_invert, dot, LinalgError, SymMatrix};

use crate::objective::{
    add_model_curvature, dc_subgradients, eval_f, fs_gradient, fs_value, generalized_gradient,
    rho_lower_bound, ComponentView, Dataset, ObjectiveConfig, ObjectiveError, Partition,
    SmoothingFlavor, TieRule,
};

/// `f(omega) = sum_i f_i(omega)`, exposed one component at a time.
///
/// Only [`objective`](FiniteSum::objective) and
/// [`gradient`](FiniteSum::gradient) are required; the remaining hooks
/// default to the unsmoothed, single-convex-piece behavior, which is what a
/// smooth convex problem needs.
pub trait FiniteSum {
    /// Length of a point.
    fn dim(&self) -> usize;

    fn num_components(&self) -> usize;

    fn is_nonconvex(&self, _index: usize) -> bool {
        false
    }

    fn objective(&self, point: &[f64]) -> f64;

    /// Writes an element of the generalized gradient of component `index`.
    fn gradient(&self, index: usize, point: &[f64], out: &mut [f64]);

    /// Smoothed objective with one smoothing level per component.
    fn smoothed_objective(&self, point: &[f64], _mus: &[f64]) -> f64 {
        self.objective(point)
    }

    fn smoothed_gradient(&self, index: usize, point: &[f64], _mu: f64, out: &mut [f64]) {
        self.gradient(index, point, out)
    }

    /// Subgradients of `g` and `h` in a difference-of-convex split `f_i = g - h`.
    fn dc_subgradients(&self, index: usize, point: &[f64], g_out: &mut [f64], h_out: &mut [f64]) {
        self.gradient(index, point, g_out);
        h_out.fill(0.0);
    }

    /// `y += H s`, where `H` is the Hessian of the quadratic that convexifies
    /// component `index` at smoothing level `mu`.
    fn add_convexification(&self, _index: usize, _mu: f64, _s: &[f64], _y: &mut [f64]) {}
}

/// The TSVM objective over a fixed dataset and partition.
#[derive(Debug, Clone)]
pub struct TsvmProblem<'a> {
    data: &'a Dataset,
    cfg: ObjectiveConfig,
    partition: Partition,
    tie_rule: TieRule,
    rho_factor: f64,
}

impl<'a> TsvmProblem<'a> {
    pub fn new(data: &'a Dataset, cfg: ObjectiveConfig, partition: Partition) -> Self {
        Self {
            data,
            cfg,
            partition,
            tie_rule: TieRule::default(),
            rho_factor: 1.0,
        }
    }

    pub fn with_tie_rule(mut self, rule: TieRule) -> Self {
        self.tie_rule = rule;
        self
    }

    /// Convexification uses `rho = factor * rho_lower_bound`; the factor must be at least 1.
    pub fn with_rho_factor(mut self, factor: f64) -> Result<Self, ObjectiveError> {
        if !(factor >= 1.0 && factor.is_finite()) {
            return Err(ObjectiveError::InvalidConfig("rho factor must be at least 1"));
        }
        if self.cfg.flavor() != SmoothingFlavor::Piecewise {
            return Err(ObjectiveError::UnsupportedFlavor);
        }
        self.rho_factor = factor;
        Ok(self)
    }

    pub fn data(&self) -> &Dataset {
        self.data
    }

    pub fn config(&self) -> &ObjectiveConfig {
        &self.cfg
    }

    pub fn partition(&self) -> Partition {
        self.partition
    }

    pub fn rho_factor(&self) -> f64 {
        self.rho_factor
    }

    pub fn view(&self, index: usize) -> ComponentView {
        self.partition.view(self.data, index)
    }

    /// `rho` used to convexify component `index` at smoothing level `mu`.
    pub fn rho(&self, index: usize, mu: f64) -> Result<f64, ObjectiveError> {
        Ok(self.rho_factor * rho_lower_bound(&self.cfg, self.data, &self.view(index), mu)?)
    }
}

impl FiniteSum for TsvmProblem<'_> {
    fn dim(&self) -> usize {
        self.data.dim() + 1
    }

    fn num_components(&self) -> usize {
        self.partition.num_components(self.data)
    }

    fn is_nonconvex(&self, index: usize) -> bool {
        self.view(index).is_nonconvex()
    }

    fn objective(&self, point: &[f64]) -> f64 {
        eval_f(&self.cfg, self.data, point)
    }

    fn gradient(&self, index: usize, point: &[f64], out: &mut [f64]) {
        generalized_gradient(&self.cfg, self.data, &self.view(index), point, self.tie_rule, out)
    }

    fn smoothed_objective(&self, point: &[f64], mus: &[f64]) -> f64 {
        self.partition
            .views(self.data)
            .zip(mus)
            .map(|(v, &mu)| fs_value(&self.cfg, self.data, &v, point, mu))
            .sum()
    }

    fn smoothed_gradient(&self, index: usize, point: &[f64], mu: f64, out: &mut [f64]) {
        fs_gradient(&self.cfg, self.data, &self.view(index), point, mu, out)
    }

    fn dc_subgradients(&self, index: usize, point: &[f64], g_out: &mut [f64], h_out: &mut [f64]) {
        let view = self.view(index);
        dc_subgradients(&self.cfg, self.data, &view, point, self.tie_rule, g_out, h_out)
    }

    fn add_convexification(&self, index: usize, mu: f64, s: &[f64], y: &mut [f64]) {
        let view = self.view(index);
        // piecewise flavor is enforced by `with_rho_factor`; other flavors fall back to no shift
        let rho = if view.is_nonconvex() {
            match self.rho(index, mu) {
                Ok(r) => r,
                Err(_) => return,
            }
        } else {
            0.0
        };
        add_model_curvature(&self.cfg, self.data, &view, rho, s, y);
    }
}

/// `f_i(x) = 1/2 x^T A_i x + b_i^T x`; used for convergence checks.
#[derive(Debug, Clone)]
pub struct QuadraticSum {
    dim: usize,
    hessians: Vec<SymMatrix>,
    linear: Vec<Vec<f64>>,
}

impl QuadraticSum {
    pub fn new(
        hessians: Vec<SymMatrix>,
        linear: Vec<Vec<f64>>,
    ) -> Self {
        assert!(!hessians.is_empty() && hessians.len() == linear.len());
        let dim = hessians[0].dim();
        assert!(hessians.iter().all(|h| h.dim() == dim));
        assert!(linear.iter().all(|b| b.len() == dim));
        Self {
            dim,
            hessians,
            linear,
        }
    }

    /// Closed-form minimizer `-(sum A_i)^{-1} sum b_i`.
    pub fn minimizer(&self) -> Result<Vec<f64>, LinalgError> {
        let inv = dense_sum_invert(&self.hessians)?;
        let mut b = vec![0.0; self.dim];
        for bi in &self.linear {
            axpy(-1.0, bi, &mut b);
        }
        Ok(inv.mul_vec(&b).into_inner())
    }
}

impl FiniteSum for QuadraticSum {
    fn dim(&self) -> usize {
        self.dim
    }

    fn num_components(&self) -> usize {
        self.hessians.len()
    }

    fn objective(&self, point: &[f64]) -> f64 {
        self.hessians
            .iter()
            .zip(&self.linear)
            .map(|(a, b)| 0.5 * a.quad_form(point) + dot(b, point))
            .sum()
    }

    fn gradient(&self, index: usize, point: &[f64], out: &mut [f64]) {
        self.hessians[index].mul_vec_into(point, out);
        axpy(1.0, &self.linear[index], out);
    }
}
