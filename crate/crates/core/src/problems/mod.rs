//! BBOB-style scalable test functions and evaluation bookkeeping.

mod functions;
mod recorder;
pub mod rng;
pub mod transforms;

pub use functions::{make_problem, FunctionId, Problem, Rotation};
pub use recorder::EvaluationRecorder;
pub use transforms::{lambda_alpha, t_asy, t_osz};

/// A box-constrained objective. Implemented by [`Problem`] and by
/// [`BoxObjective`] for ad hoc functions.
pub trait Objective: Sync {
    fn dimension(&self) -> usize;
    fn lower_bounds(&self) -> &[f64];
    fn upper_bounds(&self) -> &[f64];
    /// Raw objective value. Does not touch any recorder.
    fn value(&self, x: &[f64]) -> f64;

    /// Evaluates `x` and registers the call with `recorder`.
    fn evaluate(&self, x: &[f64], recorder: &mut EvaluationRecorder) -> crate::Result<f64> {
        if x.len() != self.dimension() {
            return Err(crate::Error::invalid(format!(
                "point has {} components, problem dimension is {}",
                x.len(),
                self.dimension()
            )));
        }
        let f = self.value(x);
        recorder.observe(x, f);
        Ok(f)
    }
}

/// Wraps a closure with box bounds.
pub struct BoxObjective<F> {
    lower: Vec<f64>,
    upper: Vec<f64>,
    func: F,
}

impl<F: Fn(&[f64]) -> f64 + Sync> BoxObjective<F> {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, func: F) -> crate::Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(crate::Error::invalid(
                "bounds must be non-empty and of equal length",
            ));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u)) {
            return Err(crate::Error::invalid(
                "every lower bound must be below its upper bound",
            ));
        }
        Ok(Self { lower, upper, func })
    }
}

impl<F: Fn(&[f64]) -> f64 + Sync> Objective for BoxObjective<F> {
    fn dimension(&self) -> usize {
        self.lower.len()
    }

    fn lower_bounds(&self) -> &[f64] {
        &self.lower
    }

    fn upper_bounds(&self) -> &[f64] {
        &self.upper
    }

    fn value(&self, x: &[f64]) -> f64 {
        (self.func)(x)
    }
}
