//! Univariate minimizers (Brent, STEP, and their hybrid) and BSrr, which runs
//! one hybrid per coordinate in round-robin order.

mod brent;
mod bsrr;
mod hybrid;
mod step;

pub use brent::{brent_minimize, BrentState};
pub use bsrr::{bsrr_run_trial, run_bsrr, BsrrState};
pub use hybrid::{brent_step_minimize, BrentStep, BrentStepResult, Phase, PARTITIONS};
pub use step::{interval_difficulty, step_minimize, StepState};

/// Absolute x-tolerance handed to Brent.
pub const BRENT_TOL: f64 = 1e-9;
/// Improvement below which a Brent round counts as failed; also the STEP
/// target margin.
pub const BSRR_EPSILON: f64 = 1e-10;
