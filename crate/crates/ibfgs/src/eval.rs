use ibfgs_core::{Label, ModelPoint};

/// Fraction of `(x, y)` pairs misclassified by `sign(w^T x + b)`, with `sign(0) = +1`.
pub fn test_error<'a, I>(model: &ModelPoint, samples: I) -> f64
where
    I: IntoIterator<Item = (&'a [f64], Label)>,
{
    let mut total = 0usize;
    let mut wrong = 0usize;
    for (x, y) in samples {
        let predicted = if model.decision_value(x) >= 0.0 {
            Label::Positive
        } else {
            Label::Negative
        };
        total += 1;
        wrong += usize::from(predicted != y);
    }
    if total == 0 {
        0.0
    } else {
        wrong as f64 / total as f64
    }
}
