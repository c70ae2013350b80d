//! Coordinate pattern search: Hooke-Jeeves and MTS-LS1, plus the trial driver
//! shared with BSrr.

mod hj;
mod mts_ls1;
mod trial;
mod variant;

pub use hj::{hj_sweep, HjState};
pub use mts_ls1::{mts_ls1_sweep, MtsLs1State};
pub use trial::{initialize, run_on_recorder, run_trial, ReinitRule, RestartPolicy};
pub use variant::{AlgorithmKind, AlgorithmVariant};

use crate::problems::{EvaluationRecorder, Objective};
use crate::{Error, Result};

pub const DEFAULT_SIGMA_INIT: f64 = 0.4;
pub const DEFAULT_C: f64 = 0.5;
/// MTS-LS1 resets sigma once `sigma * range_1` drops below this.
pub const DEFAULT_REINIT_THRESHOLD: f64 = 1e-15;

/// What one sweep did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOutcome {
    pub evaluations: u64,
    /// False when the budget (or the final target) interrupted the sweep.
    pub completed: bool,
    /// At least one coordinate or pattern move was accepted.
    pub improved: bool,
    pub sigma_decayed: bool,
}

/// Projects every component onto `[lower_i, upper_i]`.
pub fn clamp_to_bounds<O: Objective + ?Sized>(x: &[f64], objective: &O) -> Vec<f64> {
    x.iter()
        .zip(
            objective
                .lower_bounds()
                .iter()
                .zip(objective.upper_bounds()),
        )
        .map(|(&v, (&lo, &hi))| v.clamp(lo, hi))
        .collect()
}

pub(crate) fn validate_step_params(sigma_init: f64, c: f64) -> Result<()> {
    if !(sigma_init > 0.0 && sigma_init.is_finite()) {
        return Err(Error::invalid(format!(
            "sigma_init must be positive, got {sigma_init}"
        )));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::invalid(format!(
            "learning rate c must lie in (0, 1), got {c}"
        )));
    }
    Ok(())
}

enum Probe {
    Accepted,
    Rejected,
    Exhausted,
}

/// Moves coordinate `i` of `x` to `target` (clamped), evaluates, and keeps the
/// move only on strict improvement over `fx`.
fn probe_coordinate<O: Objective + ?Sized>(
    objective: &O,
    recorder: &mut EvaluationRecorder,
    budget: u64,
    x: &mut [f64],
    fx: &mut f64,
    i: usize,
    target: f64,
) -> Probe {
    if recorder.exhausted(budget) {
        return Probe::Exhausted;
    }
    let old = x[i];
    x[i] = target.clamp(objective.lower_bounds()[i], objective.upper_bounds()[i]);
    let f = objective.value(x);
    recorder.observe(x, f);
    if f < *fx {
        *fx = f;
        Probe::Accepted
    } else {
        x[i] = old;
        Probe::Rejected
    }
}
