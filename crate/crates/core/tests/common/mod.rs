//! Dense reference implementations used as test oracles.
#![allow(dead_code)]

use ibfgs_core::SymMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vec(rng: &mut impl Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-scale..scale)).collect()
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let k = b.len();
    let p = b[0].len();
    let mut out = vec![vec![0.0; p]; n];
    for i in 0..n {
        for j in 0..p {
            let mut acc = 0.0;
            for l in 0..k {
                acc += a[i][l] * b[l][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn matvec(a: &Dense, x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| {
            let mut acc = 0.0;
            for j in 0..x.len() {
                acc += row[j] * x[j];
            }
            acc
        })
        .collect()
}

pub fn outer(a: &[f64], b: &[f64]) -> Dense {
    a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect()
}

pub fn add_scaled(a: &Dense, alpha: f64, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + alpha * y).collect())
        .collect()
}

pub fn dense(m: &SymMatrix) -> Dense {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect()
}

pub fn from_dense(a: &Dense) -> SymMatrix {
    let n = a.len();
    let mut m = SymMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            m.set(i, j, 0.5 * (a[i][j] + a[j][i]));
        }
    }
    m
}

pub fn frob_dist(a: &Dense, b: &Dense) -> f64 {
    let mut acc = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            acc += (x - y) * (x - y);
        }
    }
    acc.sqrt()
}

pub fn vdot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vnorm(a: &[f64]) -> f64 {
    vdot(a, a).sqrt()
}

/// Gauss-Jordan with partial pivoting.
pub fn gauss_jordan_inverse(a: &Dense) -> Dense {
    let n = a.len();
    let mut m: Dense = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        let p = m[col][col];
        assert!(p.abs() > 1e-300, "singular oracle input");
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != 0.0 {
                    for c in 0..2 * n {
                        m[r][c] -= f * m[col][c];
                    }
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Plain Cholesky; `None` when a pivot is not positive.
pub fn cholesky(a: &Dense) -> Option<Dense> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                if !(sum > 0.0) {
                    return None;
                }
                l[i][i] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    Some(l)
}

/// `M M^T + shift I` with `M` uniform in `[-1, 1]`.
pub fn random_spd(rng: &mut impl Rng, n: usize, shift: f64) -> Dense {
    let m: Dense = (0..n).map(|_| random_vec(rng, n, 1.0)).collect();
    let mt: Dense = (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect();
    add_scaled(&matmul(&m, &mt), shift, &identity(n))
}

/// Textbook BFGS on dense matrices.
pub fn naive_bfgs(b: &Dense, s: &[f64], y: &[f64]) -> Dense {
    let bs = matvec(b, s);
    let sbs = vdot(s, &bs);
    let sy = vdot(s, y);
    let step = add_scaled(b, -1.0 / sbs, &outer(&bs, &bs));
    add_scaled(&step, 1.0 / sy, &outer(y, y))
}

/// A pair with `s^T y > 0`: `y = H s` for a random SPD `H`, plus a small perturbation.
pub fn curvature_pair(rng: &mut impl Rng, n: usize) -> (Vec<f64>, Vec<f64>) {
    loop {
        let s = random_vec(rng, n, 1.0);
        let h = random_spd(rng, n, 0.1);
        let mut y = matvec(&h, &s);
        for v in y.iter_mut() {
            *v += rng.random_range(-0.05..0.05);
        }
        if vdot(&s, &y) > 1e-3 * vnorm(&s) * vnorm(&y) {
            return (s, y);
        }
    }
}

use ibfgs_core::{Dataset, Label};

/// Features uniform in `[-2, 2]`, `p` labeled rows first.
pub fn instance(seed: u64, n: usize, p: usize, q: usize) -> Dataset {
    let mut r = rng(seed);
    let features = (0..p + q).map(|_| random_vec(&mut r, n, 2.0)).collect();
    let labels = (0..p)
        .map(|_| if r.random::<bool>() { Label::Positive } else { Label::Negative })
        .collect();
    Dataset::new(features, labels).unwrap()
}

pub fn affine(x: &[f64], omega: &[f64]) -> f64 {
    let n = x.len();
    let mut a = omega[n];
    for j in 0..n {
        a += omega[j] * x[j];
    }
    a
}

/// Scalar re-implementation of the raw objective.
pub fn objective_oracle(data: &Dataset, c1: f64, c2: f64, omega: &[f64]) -> f64 {
    let n = data.dim();
    let mut total = 0.0;
    for j in 0..n {
        total += 0.5 * omega[j] * omega[j];
    }
    for i in 0..data.len() {
        let a = affine(data.features(i), omega);
        total += match data.label(i) {
            Some(l) => c1 * f64::max(0.0, 1.0 - l.sign() * a),
            None => c2 * f64::max(0.0, 1.0 - a.abs()),
        };
    }
    total
}

pub fn phi_oracle(t: f64, mu: f64) -> f64 {
    if t <= -mu / 2.0 {
        0.0
    } else if t >= mu / 2.0 {
        t
    } else {
        (t + mu / 2.0) * (t + mu / 2.0) / (2.0 * mu)
    }
}

pub fn psi_oracle(t: f64, mu: f64) -> f64 {
    phi_oracle(t, mu) + phi_oracle(-t, mu)
}

/// Scalar re-implementation of the smoothed objective with one common level.
pub fn smoothed_oracle(data: &Dataset, c1: f64, c2: f64, omega: &[f64], mu: f64) -> f64 {
    let n = data.dim();
    let mut total = 0.0;
    for j in 0..n {
        total += 0.5 * omega[j] * omega[j];
    }
    for i in 0..data.len() {
        let a = affine(data.features(i), omega);
        total += match data.label(i) {
            Some(l) => c1 * phi_oracle(1.0 - l.sign() * a, mu),
            None => c2 * phi_oracle(1.0 - psi_oracle(a, mu), mu),
        };
    }
    total
}

pub fn central_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut p = x.to_vec();
    (0..x.len())
        .map(|j| {
            p[j] = x[j] + h;
            let up = f(&p);
            p[j] = x[j] - h;
            let down = f(&p);
            p[j] = x[j];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// `|a - b| / max(|a|, floor)`
pub fn rel_err(a: &[f64], b: &[f64], floor: f64) -> f64 {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    vnorm(&d) / vnorm(a).max(floor)
}

/// Random orthonormal basis by Gram-Schmidt.
pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> Dense {
    let mut q: Dense = Vec::with_capacity(n);
    while q.len() < n {
        let mut v = random_vec(rng, n, 1.0);
        for u in &q {
            let c = vdot(&v, u);
            for (a, b) in v.iter_mut().zip(u) {
                *a -= c * b;
            }
        }
        let len = vnorm(&v);
        if len > 1e-3 {
            q.push(v.iter().map(|a| a / len).collect());
        }
    }
    q
}

/// SPD matrix with eigenvalues drawn log-uniformly from `[lo, hi]`.
pub fn spd_with_spectrum(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Dense {
    let q = random_orthogonal(rng, n);
    let lam: Vec<f64> = (0..n)
        .map(|_| (lo.ln() + rng.random::<f64>() * (hi / lo).ln()).exp())
        .collect();
    let mut a = vec![vec![0.0; n]; n];
    for (k, qk) in q.iter().enumerate() {
        a = add_scaled(&a, lam[k], &outer(qk, qk));
    }
    a
}

/// Strongly convex quadratic sum whose terms all have condition number at most `cond`.
pub fn quadratic_sum(seed: u64, m: usize, n: usize, cond: f64) -> ibfgs_core::QuadraticSum {
    let mut r = rng(seed);
    let hessians = (0..m).map(|_| from_dense(&spd_with_spectrum(&mut r, n, 1.0, cond))).collect();
    let linear = (0..m).map(|_| random_vec(&mut r, n, 1.0)).collect();
    ibfgs_core::QuadraticSum::new(hessians, linear)
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
