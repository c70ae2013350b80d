use super::{check_same_key, TrialLog};
use crate::Result;

/// Expected running time to reach one target precision.
#[derive(Debug, Clone, PartialEq)]
pub struct ErtResult {
    pub target_precision: f64,
    /// `None` when no trial reached the target.
    pub ert: Option<f64>,
    pub n_success: usize,
    pub n_trials: usize,
    pub total_evals_counted: u64,
}

/// Sums the evaluations spent by all trials until they hit `precision`
/// (their full run if they never did) and divides by the number of hits.
pub fn compute_ert(logs: &[&TrialLog], precision: f64) -> Result<ErtResult> {
    check_same_key(logs, true)?;
    let mut total = 0u64;
    let mut n_success = 0;
    for log in logs {
        match log.hit_index(precision) {
            Some(idx) => {
                total += idx;
                n_success += 1;
            }
            None => total += log.total_evals,
        }
    }
    Ok(ErtResult {
        target_precision: precision,
        ert: (n_success > 0).then(|| total as f64 / n_success as f64),
        n_success,
        n_trials: logs.len(),
        total_evals_counted: total,
    })
}
