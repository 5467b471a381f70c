use serde::Serialize;

/// Outcome of a numerical certificate. `pass` is always `margin > 0`.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub pass: bool,
    /// Point (or corner of the cell) where the margin was smallest.
    pub witness: Vec<f64>,
    pub margin: f64,
    pub method: String,
    /// Free-form qualifiers, e.g. whether a hypothesis was verified.
    pub labels: Vec<String>,
}

impl Certificate {
    pub fn new(margin: f64, witness: Vec<f64>, method: impl Into<String>) -> Self {
        Certificate {
            pass: margin > 0.0,
            witness,
            margin,
            method: method.into(),
            labels: Vec::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.labels.push(label.into());
        self
    }
}

/// Keeps the smaller-margin record.
pub(crate) fn track_min(best: &mut (f64, Vec<f64>), margin: f64, at: &[f64]) {
    if margin < best.0 || margin.is_nan() {
        *best = (margin, at.to_vec());
    }
}
