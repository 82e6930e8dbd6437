//! Sparse sample files, label masking, fold splits and synthetic generators.

use std::fmt::Write as _;
use std::io::BufRead;

use ibfgs_core::rng::{seeded, Stream};
use ibfgs_core::{Dataset, Label, ObjectiveError};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("labeled fraction leaves no labeled samples")]
    EmptyLabeledSet,
    #[error("sample {0} has no label")]
    MissingLabel(usize),
    #[error("invalid split: {0}")]
    InvalidSplit(&'static str),
    #[error(transparent)]
    Dataset(#[from] ObjectiveError),
}

/// One line of a sparse file: optional label and `(1-based index, value)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSample {
    pub label: Option<Label>,
    pub features: Vec<(u32, f64)>,
}

impl RawSample {
    /// Dense feature vector of length `dim`; indices beyond `dim` are dropped.
    pub fn densify(&self, dim: usize) -> Vec<f64> {
        let mut x = vec![0.0; dim];
        for &(j, v) in &self.features {
            if let Some(slot) = x.get_mut(j as usize - 1) {
                *slot = v;
            }
        }
        x
    }

    pub fn max_index(&self) -> u32 {
        self.features.last().map_or(0, |&(j, _)| j)
    }
}

fn parse_line(text: &str, line: usize) -> Result<Option<RawSample>, DataError> {
    let err = |reason: String| DataError::Parse { line, reason };
    let mut tokens = text.split_whitespace().peekable();
    let Some(&first) = tokens.peek() else {
        return Ok(None);
    };
    let label = if first.contains(':') {
        None
    } else {
        tokens.next();
        let value: f64 = first
            .parse()
            .map_err(|_| err(format!("non-numeric label `{first}`")))?;
        match Label::from_sign(value) {
            Some(l) => Some(l),
            None => return Err(err(format!("label `{first}` is not +1 or -1"))),
        }
    };
    let mut features = Vec::new();
    let mut last = 0u32;
    for tok in tokens {
        let (idx, val) = tok
            .split_once(':')
            .ok_or_else(|| err(format!("missing colon in `{tok}`")))?;
        let idx: u32 = idx
            .parse()
            .map_err(|_| err(format!("non-numeric index `{idx}`")))?;
        let val: f64 = val
            .parse()
            .map_err(|_| err(format!("non-numeric value `{val}`")))?;
        if idx == 0 {
            return Err(err("indices are 1-based".into()));
        }
        if idx <= last {
            return Err(err(format!("non-increasing index {idx} after {last}")));
        }
        if !val.is_finite() {
            return Err(err(format!("non-finite value `{val}`")));
        }
        last = idx;
        features.push((idx, val));
    }
    Ok(Some(RawSample { label, features }))
}

/// Parses `<label> <idx>:<val> ...` lines. Blank lines are skipped; a line
/// starting with an `idx:val` pair is an unlabeled sample.
pub fn parse_sparse(text: &str) -> Result<Vec<RawSample>, DataError> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| parse_line(l, i + 1).transpose())
        .collect()
}

pub fn read_sparse<R: BufRead>(reader: R) -> Result<Vec<RawSample>, DataError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        if let Some(s) = parse_line(&line?, i + 1)? {
            out.push(s);
        }
    }
    Ok(out)
}

pub fn serialize_sparse(samples: &[RawSample]) -> String {
    let mut out = String::new();
    for s in samples {
        let mut first = true;
        if let Some(l) = s.label {
            out.push_str(if l == Label::Positive { "+1" } else { "-1" });
            first = false;
        }
        for &(j, v) in &s.features {
            if !first {
                out.push(' ');
            }
            write!(out, "{j}:{v:?}").unwrap();
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Feature dimension of a collection: the largest index used.
pub fn max_index(samples: &[RawSample]) -> usize {
    samples.iter().map(|s| s.max_index()).max().unwrap_or(0) as usize
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Holdout {
    KFold,
    /// The first `train_count` samples train, the rest test.
    FixedSplit { train_count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    pub labeled_fraction: f64,
    pub fold_count: usize,
    pub seed: u64,
    pub holdout: Holdout,
}

impl SplitSpec {
    pub fn validate(&self) -> Result<(), DataError> {
        if !(self.labeled_fraction > 0.0 && self.labeled_fraction <= 1.0) {
            return Err(DataError::InvalidSplit("labeled fraction must lie in (0, 1]"));
        }
        if self.fold_count == 0 {
            return Err(DataError::InvalidSplit("fold count must be positive"));
        }
        Ok(())
    }
}

/// Keeps labels on `ceil(fraction * count)` samples, chosen per class so the
/// retained labels follow the class proportions, and puts them first.
pub fn mask_labels(samples: &[RawSample], spec: &SplitSpec) -> Result<Dataset, DataError> {
    spec.validate()?;
    let dim = max_index(samples).max(1);
    mask_labels_with_dim(samples, spec.labeled_fraction, spec.seed, dim)
}

pub fn mask_labels_with_dim(
    samples: &[RawSample],
    fraction: f64,
    seed: u64,
    dim: usize,
) -> Result<Dataset, DataError> {
    let count = samples.len();
    let target = (fraction * count as f64 - 1e-9).ceil().max(0.0) as usize;
    if target == 0 {
        return Err(DataError::EmptyLabeledSet);
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, s) in samples.iter().enumerate() {
        match s.label {
            Some(Label::Positive) => pos.push(i),
            Some(Label::Negative) => neg.push(i),
            None => return Err(DataError::MissingLabel(i)),
        }
    }
    let mut rng = seeded(seed, Stream::LabelMask);
    pos.shuffle(&mut rng);
    neg.shuffle(&mut rng);
    let want_pos = target as f64 * pos.len() as f64 / count as f64;
    let mut take_pos = (want_pos.round() as usize).min(pos.len());
    let mut take_neg = target - take_pos;
    if take_neg > neg.len() {
        take_neg = neg.len();
        take_pos = target - take_neg;
    }
    let mut labeled: Vec<usize> = pos[..take_pos].iter().chain(&neg[..take_neg]).copied().collect();
    labeled.sort_unstable();
    let mut is_labeled = vec![false; count];
    for &i in &labeled {
        is_labeled[i] = true;
    }
    let mut features = Vec::with_capacity(count);
    let mut labels = Vec::with_capacity(target);
    for &i in &labeled {
        features.push(samples[i].densify(dim));
        labels.push(samples[i].label.unwrap());
    }
    for (i, s) in samples.iter().enumerate() {
        if !is_labeled[i] {
            features.push(s.densify(dim));
        }
    }
    Ok(Dataset::new(features, labels)?)
}

/// A test fold and its complement, both in increasing index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Shuffled k-fold partition; the first `count % folds` folds get one extra sample.
pub fn kfold_split(count: usize, folds: usize, seed: u64) -> Result<Vec<Fold>, DataError> {
    if folds == 0 || folds > count {
        return Err(DataError::InvalidSplit("fold count must lie in 1..=sample count"));
    }
    let mut order: Vec<usize> = (0..count).collect();
    order.shuffle(&mut seeded(seed, Stream::Folds));
    let base = count / folds;
    let extra = count % folds;
    let mut start = 0;
    let mut out = Vec::with_capacity(folds);
    for f in 0..folds {
        let size = base + usize::from(f < extra);
        let mut test = order[start..start + size].to_vec();
        test.sort_unstable();
        let mut train: Vec<usize> = order[..start]
            .iter()
            .chain(&order[start + size..])
            .copied()
            .collect();
        train.sort_unstable();
        out.push(Fold { train, test });
        start += size;
    }
    Ok(out)
}

/// Holdout folds for `spec`: k shuffled folds, or the single prefix split.
pub fn holdout_folds(count: usize, spec: &SplitSpec) -> Result<Vec<Fold>, DataError> {
    match spec.holdout {
        Holdout::KFold => kfold_split(count, spec.fold_count, spec.seed),
        Holdout::FixedSplit { train_count } => {
            if train_count == 0 || train_count >= count {
                return Err(DataError::InvalidSplit("train count must leave both parts nonempty"));
            }
            Ok(vec![Fold {
                train: (0..train_count).collect(),
                test: (train_count..count).collect(),
            }])
        }
    }
}

/// Two unit-variance spherical Gaussians in `R^n` whose means sit at
/// `+-separation/2` along a random unit direction. Classes alternate, so
/// they are balanced.
pub fn generate_gaussian_pair(n: usize, count: usize, separation: f64, seed: u64) -> Vec<RawSample> {
    assert!(n >= 1 && count >= 2, "need n >= 1 and count >= 2");
    let mut rng = seeded(seed, Stream::Generator);
    let mut dir: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let len = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    if len > 0.0 {
        dir.iter_mut().for_each(|v| *v /= len);
    } else {
        dir[0] = 1.0;
    }
    (0..count)
        .map(|i| {
            let label = if i % 2 == 0 { Label::Positive } else { Label::Negative };
            let shift = label.sign() * separation / 2.0;
            let features = dir
                .iter()
                .enumerate()
                .map(|(j, d)| {
                    let noise: f64 = rng.sample(StandardNormal);
                    (j as u32 + 1, shift * d + noise)
                })
                .collect();
            RawSample {
                label: Some(label),
                features,
            }
        })
        .collect()
}

/// Per-feature affine map onto `[0, 1]`, fitted on one sample set and applied to others.
#[derive(Debug, Clone, PartialEq)]
pub struct MinMaxScaler {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl MinMaxScaler {
    pub fn fit(samples: &[RawSample], dim: usize) -> Self {
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for s in samples {
            for (j, v) in s.densify(dim).into_iter().enumerate() {
                lo[j] = lo[j].min(v);
                hi[j] = hi[j].max(v);
            }
        }
        Self { lo, hi }
    }

    pub fn transform(&self, samples: &[RawSample]) -> Vec<RawSample> {
        let dim = self.lo.len();
        samples
            .iter()
            .map(|s| {
                let features = s
                    .densify(dim)
                    .into_iter()
                    .enumerate()
                    .filter_map(|(j, v)| {
                        let range = self.hi[j] - self.lo[j];
                        let scaled = if range > 0.0 { (v - self.lo[j]) / range } else { 0.0 };
                        (scaled != 0.0).then_some((j as u32 + 1, scaled))
                    })
                    .collect();
                RawSample {
                    label: s.label,
                    features,
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let s = parse_sparse("+1 1:0.5 3:2\n\n-1\n").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].label, Some(Label::Positive));
        assert_eq!(s[0].densify(3), vec![0.5, 0.0, 2.0]);
        assert_eq!(s[1].label, Some(Label::Negative));
        assert_eq!(s[1].densify(3), vec![0.0; 3]);
    }

    #[test]
    fn rejects_bad_lines() {
        let e = parse_sparse("1 2:1 1:1").unwrap_err();
        assert!(matches!(e, DataError::Parse { line: 1, ref reason } if reason.contains("non-increasing")));
        assert!(matches!(parse_sparse("+1 1:0\n0 1:1"), Err(DataError::Parse { line: 2, .. })));
        assert!(matches!(parse_sparse("+1 1-2"), Err(DataError::Parse { .. })));
        assert!(matches!(parse_sparse("+1 1:x"), Err(DataError::Parse { .. })));
        assert!(matches!(parse_sparse("abc 1:1"), Err(DataError::Parse { .. })));
    }

    #[test]
    fn crlf_and_unlabeled_lines() {
        let s = parse_sparse("-1 2:3\r\n1:1 4:2\r\n").unwrap();
        assert_eq!(s[1].label, None);
        assert_eq!(max_index(&s), 4);
    }

    #[test]
    fn fold_sizes() {
        let folds = kfold_split(10, 3, 1).unwrap();
        let sizes: Vec<usize> = folds.iter().map(|f| f.test.len()).collect();
        assert_eq!(sizes, vec![4, 3, 3]);
        assert!(kfold_split(10, 10, 1).unwrap().iter().all(|f| f.test.len() == 1));
        assert!(kfold_split(3, 4, 0).is_err());
    }

    #[test]
    fn balanced_masking() {
        let samples = generate_gaussian_pair(2, 10, 1.0, 3);
        let spec = SplitSpec {
            labeled_fraction: 0.2,
            fold_count: 1,
            seed: 9,
            holdout: Holdout::KFold,
        };
        let data = mask_labels(&samples, &spec).unwrap();
        assert_eq!(data.labeled_count(), 2);
        assert!(data.labels().contains(&Label::Positive));
        assert!(data.labels().contains(&Label::Negative));
    }

    #[test]
    fn scaler_maps_to_unit_interval() {
        let samples = parse_sparse("+1 1:2 2:-1\n-1 1:4 2:1\n").unwrap();
        let scaler = MinMaxScaler::fit(&samples, 2);
        let scaled = scaler.transform(&samples);
        assert_eq!(scaled[0].densify(2), vec![0.0, 0.0]);
        assert_eq!(scaled[1].densify(2), vec![1.0, 1.0]);
    }
}
