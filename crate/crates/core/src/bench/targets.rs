use crate::{Error, Result};

/// Smallest precision every target set must contain.
pub const FINAL_PRECISION: f64 = 1e-8;

/// Target precisions `delta_f`, strictly decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSet {
    precisions: Vec<f64>,
}

impl Default for TargetSet {
    /// `1e2, 1e1, ..., 1e-8`.
    fn default() -> Self {
        Self {
            precisions: vec![
                1e2, 1e1, 1e0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8,
            ],
        }
    }
}

impl TargetSet {
    pub fn new(mut precisions: Vec<f64>) -> Result<Self> {
        precisions.sort_by(|a, b| b.total_cmp(a));
        if precisions.iter().any(|p| !(*p > 0.0 && p.is_finite())) {
            return Err(Error::invalid(
                "target precisions must be positive and finite",
            ));
        }
        if precisions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate target precision"));
        }
        if !precisions.contains(&FINAL_PRECISION) {
            return Err(Error::invalid("target set must contain 1e-8"));
        }
        Ok(Self { precisions })
    }

    pub fn precisions(&self) -> &[f64] {
        &self.precisions
    }

    pub fn smallest(&self) -> f64 {
        *self.precisions.last().expect("non-empty")
    }

    pub fn len(&self) -> usize {
        self.precisions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.precisions.is_empty()
    }
}
