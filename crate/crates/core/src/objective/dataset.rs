use alloc::vec::Vec;

use super::ObjectiveError;

/// Binary class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn sign(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Negative => -1.0,
        }
    }

    pub fn from_sign(v: f64) -> Option<Self> {
        if v == 1.0 {
            Some(Label::Positive)
        } else if v == -1.0 {
            Some(Label::Negative)
        } else {
            None
        }
    }
}

/// Labeled samples first (`0..p`), unlabeled after (`p..p+q`).
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dim: usize,
    features: Vec<f64>,
    labels: Vec<Label>,
}

impl Dataset {
    /// `features.len()` is `p + q`; the first `labels.len()` rows are labeled.
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Self, ObjectiveError> {
        let first = features
            .first()
            .ok_or(ObjectiveError::InvalidDataset("dataset has no samples"))?;
        let dim = first.len();
        if dim == 0 {
            return Err(ObjectiveError::InvalidDataset("feature dimension must be positive"));
        }
        if labels.len() > features.len() {
            return Err(ObjectiveError::InvalidDataset("more labels than samples"));
        }
        let mut flat = Vec::with_capacity(dim * features.len());
        for x in &features {
            if x.len() != dim {
                return Err(ObjectiveError::InvalidDataset("ragged feature vectors"));
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(ObjectiveError::InvalidDataset("non-finite feature value"));
            }
            flat.extend_from_slice(x);
        }
        Ok(Self {
            dim,
            features: flat,
            labels,
        })
    }

    /// Feature dimension `n`; a model point has `n + 1` coordinates.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.features.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn labeled_count(&self) -> usize {
        self.labels.len()
    }

    pub fn unlabeled_count(&self) -> usize {
        self.len() - self.labels.len()
    }

    pub fn features(&self, i: usize) -> &[f64] {
        &self.features[i * self.dim..(i + 1) * self.dim]
    }

    pub fn label(&self, i: usize) -> Option<Label> {
        self.labels.get(i).copied()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }
}

/// Hyperplane normal `w` and intercept `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelPoint {
    pub w: Vec<f64>,
    pub b: f64,
}

impl ModelPoint {
    pub fn zeros(dim: usize) -> Self {
        Self {
            w: alloc::vec![0.0; dim],
            b: 0.0,
        }
    }

    /// Splits `(w_1, .., w_n, b)`.
    pub fn from_flat(omega: &[f64]) -> Self {
        let (b, w) = omega.split_last().expect("model point needs at least the intercept");
        Self { w: w.to_vec(), b: *b }
    }

    pub fn to_flat(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.w.len() + 1);
        v.extend_from_slice(&self.w);
        v.push(self.b);
        v
    }

    pub fn decision_value(&self, x: &[f64]) -> f64 {
        crate::linalg::dot(&self.w, x) + self.b
    }

    pub fn is_finite(&self) -> bool {
        self.b.is_finite() && self.w.iter().all(|v| v.is_finite())
    }
}
