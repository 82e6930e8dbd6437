//! Smoothing functions for `max{0, t}` and `|t|`.
//!
//! The piecewise flavor is exact outside `|t| < mu/2` and quadratic inside;
//! the sqrt flavor is twice continuously differentiable everywhere.

/// Which smoothing pair to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum SmoothingFlavor {
    #[default]
    Piecewise,
    Sqrt,
}

/// Smoothing of `max{0, t}`.
pub fn phi(t: f64, mu: f64, flavor: SmoothingFlavor) -> f64 {
    debug_assert!(mu > 0.0);
    match flavor {
        SmoothingFlavor::Piecewise => {
            if t.abs() >= 0.5 * mu {
                t.max(0.0)
            } else {
                t * t / (2.0 * mu) + 0.5 * t + mu / 8.0
            }
        }
        SmoothingFlavor::Sqrt => 0.5 * (t + libm::sqrt(t * t + 4.0 * mu * mu)),
    }
}

pub fn phi_prime(t: f64, mu: f64, flavor: SmoothingFlavor) -> f64 {
    debug_assert!(mu > 0.0);
    match flavor {
        SmoothingFlavor::Piecewise => {
            if t >= 0.5 * mu {
                1.0
            } else if t <= -0.5 * mu {
                0.0
            } else {
                t / mu + 0.5
            }
        }
        SmoothingFlavor::Sqrt => 0.5 * (1.0 + t / libm::sqrt(t * t + 4.0 * mu * mu)),
    }
}

/// Smoothing of `|t|`, built as `phi(t) + phi(-t)`.
pub fn psi(t: f64, mu: f64, flavor: SmoothingFlavor) -> f64 {
    debug_assert!(mu > 0.0);
    match flavor {
        SmoothingFlavor::Piecewise => {
            if t.abs() >= 0.5 * mu {
                t.abs()
            } else {
                t * t / mu + mu / 4.0
            }
        }
        SmoothingFlavor::Sqrt => libm::sqrt(t * t + 4.0 * mu * mu),
    }
}

pub fn psi_prime(t: f64, mu: f64, flavor: SmoothingFlavor) -> f64 {
    debug_assert!(mu > 0.0);
    match flavor {
        SmoothingFlavor::Piecewise => {
            if t >= 0.5 * mu {
                1.0
            } else if t <= -0.5 * mu {
                -1.0
            } else {
                2.0 * t / mu
            }
        }
        SmoothingFlavor::Sqrt => t / libm::sqrt(t * t + 4.0 * mu * mu),
    }
}
