//! Dense symmetric matrices and the rank-two update kernels shared by every
//! incremental BFGS variant.
//!
//! [`SymMatrix`] stores only the lower triangle (packed, row-major), so
//! symmetry holds bit-exactly by construction: `get(i, j)` and `get(j, i)`
//! read the same memory cell.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Deref, DerefMut};

use thiserror::Error;

/// Relative tolerance applied to the denominators of the rank-two updates.
pub const DEFAULT_EPS_DENOMINATOR: f64 = 1e-12;

/// Pivot threshold of the dense factorization, relative to the largest diagonal entry.
pub const SINGULAR_PIVOT_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum LinalgError {
    #[error("update denominator {value:e} is not safely away from zero")]
    DegenerateDenominator { value: f64 },
    #[error("matrix is singular or not positive definite (pivot {pivot:e} at row {row})")]
    SingularMatrix { row: usize, pivot: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty input")]
    Empty,
}

/// Dense real vector.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl From<&[f64]> for Vector {
    fn from(v: &[f64]) -> Self {
        Self(v.to_vec())
    }
}

impl Deref for Vector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Vector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// `y += alpha * x`
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[inline]
fn packed_index(i: usize, j: usize) -> usize {
    let (r, c) = if i >= j { (i, j) } else { (j, i) };
    r * (r + 1) / 2 + c
}

/// Dense symmetric matrix with lower-triangle packed storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    lower: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "SymMatrix dimension must be positive");
        Self {
            dim,
            lower: vec![0.0; dim * (dim + 1) / 2],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    pub fn scaled_identity(dim: usize, scale: f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, scale);
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds from a row-major square matrix, reading only the lower triangle.
    pub fn from_lower_rows(dim: usize, rows: &[f64]) -> Result<Self, LinalgError> {
        if rows.len() != dim * dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim * dim,
                got: rows.len(),
            });
        }
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                m.set(i, j, rows[i * dim + j]);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.lower[packed_index(i, j)]
    }

    /// Writes entry `(i, j)`, which is the same cell as `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.lower[packed_index(i, j)] = value;
    }

    /// Row-major copy of the full square matrix.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self.get(i, j);
            }
        }
        out
    }

    /// `out = self * x`
    pub fn mul_vec_into(&self, x: &[f64], out: &mut [f64]) {
        let n = self.dim;
        debug_assert_eq!(x.len(), n);
        debug_assert_eq!(out.len(), n);
        out.fill(0.0);
        let mut k = 0;
        for i in 0..n {
            let xi = x[i];
            let mut acc = 0.0;
            for j in 0..i {
                let a = self.lower[k];
                acc += a * x[j];
                out[j] += a * xi;
                k += 1;
            }
            acc += self.lower[k] * xi;
            k += 1;
            out[i] += acc;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vector {
        let mut out = Vector::zeros(self.dim);
        self.mul_vec_into(x, &mut out);
        out
    }

    /// `x^T self x`
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.mul_vec(x))
    }

    /// `self += alpha * a a^T`
    pub fn rank_one_update(&mut self, alpha: f64, a: &[f64]) {
        let mut k = 0;
        for i in 0..self.dim {
            let s = alpha * a[i];
            for j in 0..=i {
                self.lower[k] += s * a[j];
                k += 1;
            }
        }
    }

    pub fn add_assign(&mut self, other: &SymMatrix) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.lower.iter_mut().zip(&other.lower) {
            *a += b;
        }
    }

    pub fn max_abs_diag(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).abs()).fold(0.0, f64::max)
    }

    /// Frobenius norm of the full square matrix.
    pub fn frobenius_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..=i {
                let v = self.get(i, j);
                acc += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        libm::sqrt(acc)
    }

    pub fn is_finite(&self) -> bool {
        self.lower.iter().all(|v| v.is_finite())
    }
}

fn check_dim(expected: usize, got: usize) -> Result<(), LinalgError> {
    if expected == got {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { expected, got })
    }
}

/// BFGS update of a Hessian approximation:
/// `B - (B s)(B s)^T / (s^T B s) + y y^T / (y^T s)`.
///
/// `eps_denominator` is relative: `s^T B s` must exceed `eps * |s| |B s|` and
/// `s^T y` must exceed `eps * |s| |y|`, otherwise the update is degenerate and
/// the caller treats it as skipped.
pub fn bfgs_update(
    b: &SymMatrix,
    s: &[f64],
    y: &[f64],
    eps_denominator: f64,
) -> Result<SymMatrix, LinalgError> {
    check_dim(b.dim(), s.len())?;
    check_dim(b.dim(), y.len())?;
    let bs = b.mul_vec(s);
    let s_bs = dot(s, &bs);
    if !(s_bs > eps_denominator * norm(s) * norm(&bs)) || s_bs <= 0.0 {
        return Err(LinalgError::DegenerateDenominator { value: s_bs });
    }
    let sy = dot(s, y);
    if !(sy > eps_denominator * norm(s) * norm(y)) || sy <= 0.0 {
        return Err(LinalgError::DegenerateDenominator { value: sy });
    }
    let mut out = b.clone();
    out.rank_one_update(-1.0 / s_bs, &bs);
    out.rank_one_update(1.0 / sy, y);
    Ok(out)
}

/// Updates the inverse of the aggregate `sum_i B_i` after component `i` had
/// its matrix `b_old` replaced by `bfgs_update(b_old, s, y)`.
///
/// Two Sherman-Morrison stages: the first adds `y y^T / (y^T s)`,
///
/// `U = Binv - (Binv y)(Binv y)^T / (y^T s + y^T Binv y)`,
///
/// the second removes `(B s)(B s)^T / (s^T B s)`,
///
/// `Binv' = U + (U B s)(U B s)^T / (s^T B s - (B s)^T U (B s))`.
///
/// Each denominator must exceed `eps_denominator` times the magnitude of its
/// leading term; otherwise [`LinalgError::DegenerateDenominator`] is returned and
/// the caller falls back to [`dense_sum_invert`].
pub fn aggregate_inverse_update(
    binv: &SymMatrix,
    b_old: &SymMatrix,
    s: &[f64],
    y: &[f64],
    eps_denominator: f64,
) -> Result<SymMatrix, LinalgError> {
    let n = binv.dim();
    check_dim(n, b_old.dim())?;
    check_dim(n, s.len())?;
    check_dim(n, y.len())?;

    let binv_y = binv.mul_vec(y);
    let sy = dot(s, y);
    let y_binv_y = dot(y, &binv_y);
    let d1 = sy + y_binv_y;
    if !(d1.abs() > eps_denominator * (sy.abs() + y_binv_y.abs())) {
        return Err(LinalgError::DegenerateDenominator { value: d1 });
    }
    let mut u = binv.clone();
    u.rank_one_update(-1.0 / d1, &binv_y);

    let bs = b_old.mul_vec(s);
    let s_bs = dot(s, &bs);
    let u_bs = u.mul_vec(&bs);
    let bs_u_bs = dot(&bs, &u_bs);
    let d2 = s_bs - bs_u_bs;
    if !(d2.abs() > eps_denominator * s_bs.abs()) {
        return Err(LinalgError::DegenerateDenominator { value: d2 });
    }
    u.rank_one_update(1.0 / d2, &u_bs);
    Ok(u)
}

/// `binv * rhs`
pub fn solve_apply(binv: &SymMatrix, rhs: &[f64]) -> Vector {
    binv.mul_vec(rhs)
}

/// LDL^T factorization of a symmetric positive definite matrix.
#[derive(Debug, Clone)]
pub struct Ldlt {
    /// Unit lower-triangular factor, strict lower part in packed storage.
    l: SymMatrix,
    d: Vec<f64>,
}

impl Ldlt {
    pub fn factor(a: &SymMatrix) -> Result<Self, LinalgError> {
        let n = a.dim();
        let tol = SINGULAR_PIVOT_TOL * a.max_abs_diag();
        let mut l = SymMatrix::zeros(n);
        let mut d = vec![0.0; n];
        for j in 0..n {
            let mut dj = a.get(j, j);
            for k in 0..j {
                let ljk = l.get(j, k);
                dj -= ljk * ljk * d[k];
            }
            if !(dj > tol) {
                return Err(LinalgError::SingularMatrix { row: j, pivot: dj });
            }
            d[j] = dj;
            for i in (j + 1)..n {
                let mut v = a.get(i, j);
                for k in 0..j {
                    v -= l.get(i, k) * l.get(j, k) * d[k];
                }
                l.set(i, j, v / dj);
            }
        }
        Ok(Self { l, d })
    }

    pub fn pivots(&self) -> &[f64] {
        &self.d
    }

    pub fn solve_in_place(&self, x: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n {
            let mut v = x[i];
            for k in 0..i {
                v -= self.l.get(i, k) * x[k];
            }
            x[i] = v;
        }
        for i in 0..n {
            x[i] /= self.d[i];
        }
        for i in (0..n).rev() {
            let mut v = x[i];
            for k in (i + 1)..n {
                v -= self.l.get(k, i) * x[k];
            }
            x[i] = v;
        }
    }

    pub fn inverse(&self) -> SymMatrix {
        let n = self.d.len();
        let mut inv = SymMatrix::zeros(n);
        let mut col = vec![0.0; n];
        for j in 0..n {
            col.fill(0.0);
            col[j] = 1.0;
            self.solve_in_place(&mut col);
            for (i, &v) in col.iter().enumerate().skip(j) {
                inv.set(i, j, v);
            }
        }
        inv
    }
}

/// Positive definiteness probe via factorization.
pub fn is_positive_definite(a: &SymMatrix) -> bool {
    a.is_finite() && Ldlt::factor(a).is_ok()
}

/// Inverse of `sum_i components[i]`, computed by dense factorization.
///
/// The components are Hessian approximations, hence the sum is expected to be
/// positive definite; a pivot at or below `1e-14` times the largest diagonal
/// entry is reported as [`LinalgError::SingularMatrix`].
pub fn dense_sum_invert<'a, I>(components: I) -> Result<SymMatrix, LinalgError>
where
    I: IntoIterator<Item = &'a SymMatrix>,
{
    let mut iter = components.into_iter();
    let mut sum = iter.next().ok_or(LinalgError::Empty)?.clone();
    for c in iter {
        check_dim(sum.dim(), c.dim())?;
        sum.add_assign(c);
    }
    Ok(Ldlt::factor(&sum)?.inverse())
}
