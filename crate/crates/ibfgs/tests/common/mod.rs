//! Dense and scalar reference implementations for the acceptance checks.
#![allow(dead_code)]

use ibfgs::core::SymMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Dense = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_vec(rng: &mut impl Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-scale..scale)).collect()
}

pub fn vdot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vnorm(a: &[f64]) -> f64 {
    vdot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
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

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![0.0; p]; n];
    for i in 0..n {
        for j in 0..p {
            for (l, bl) in b.iter().enumerate() {
                out[i][j] += a[i][l] * bl[j];
            }
        }
    }
    out
}

pub fn matvec(a: &Dense, x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| vdot(row, x)).collect()
}

pub fn add_scaled(a: &Dense, alpha: f64, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + alpha * y).collect())
        .collect()
}

pub fn outer(a: &[f64], b: &[f64]) -> Dense {
    a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect()
}

pub fn frob(a: &Dense) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

/// Plain Cholesky; `false` when a pivot is not positive.
pub fn cholesky_ok(a: &Dense) -> bool {
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
                    return false;
                }
                l[i][i] = sum.sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    true
}

/// Gauss-Jordan with partial pivoting.
pub fn inverse(a: &Dense) -> Dense {
    let n = a.len();
    let mut m: Dense = a
        .iter()
        .zip(identity(n))
        .map(|(row, e)| row.iter().copied().chain(e).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        let p = m[col][col];
        m[col].iter_mut().for_each(|v| *v /= p);
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                for c in 0..2 * n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn random_spd(rng: &mut impl Rng, n: usize, shift: f64) -> Dense {
    let m: Dense = (0..n).map(|_| random_vec(rng, n, 1.0)).collect();
    let mt: Dense = (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect();
    add_scaled(&matmul(&m, &mt), shift, &identity(n))
}

/// `y = H s` for a random SPD `H`, perturbed, keeping `s^T y > 0`.
pub fn curvature_pair(rng: &mut impl Rng, n: usize) -> (Vec<f64>, Vec<f64>) {
    loop {
        let s = random_vec(rng, n, 1.0);
        let mut y = matvec(&random_spd(rng, n, 0.1), &s);
        y.iter_mut().for_each(|v| *v += rng.random_range(-0.05..0.05));
        if vdot(&s, &y) > 1e-3 * vnorm(&s) * vnorm(&y) {
            return (s, y);
        }
    }
}

/// SPD matrix with log-uniform eigenvalues in `[lo, hi]`.
pub fn spd_with_spectrum(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Dense {
    let mut q: Dense = Vec::new();
    while q.len() < n {
        let mut v = random_vec(rng, n, 1.0);
        for u in &q {
            let c = vdot(&v, u);
            v.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
        }
        let len = vnorm(&v);
        if len > 1e-3 {
            q.push(v.iter().map(|a| a / len).collect());
        }
    }
    let mut a = vec![vec![0.0; n]; n];
    for qk in &q {
        let lam = (lo.ln() + rng.random::<f64>() * (hi / lo).ln()).exp();
        a = add_scaled(&a, lam, &outer(qk, qk));
    }
    a
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

/// Scalar raw objective.
pub fn objective_oracle(data: &ibfgs::core::Dataset, c1: f64, c2: f64, omega: &[f64]) -> f64 {
    let n = data.dim();
    let mut total = 0.5 * vdot(&omega[..n], &omega[..n]);
    for i in 0..data.len() {
        let a = vdot(data.features(i), &omega[..n]) + omega[n];
        total += match data.label(i) {
            Some(l) => c1 * f64::max(0.0, 1.0 - l.sign() * a),
            None => c2 * f64::max(0.0, 1.0 - a.abs()),
        };
    }
    total
}
