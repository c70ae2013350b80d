//! Trial logs, performance measures, significance testing, timing, and
//! suite orchestration.

mod config;
mod ecdf;
mod ert;
mod log;
mod ranksum;
pub mod report;
mod suite;
mod targets;
mod timing;

pub use config::{BudgetMultipliers, SuiteConfig};
pub use ecdf::{compute_ecdf, log_grid};
pub use ert::{compute_ert, ErtResult};
pub use log::TrialLog;
pub use ranksum::{build_comparison_samples, rank_sum_test, RankSumMethod, RankSumResult};
pub use suite::{load_suite, run_suite, trial_seed, Manifest, ManifestEntry, MANIFEST_FILE};
pub use targets::TargetSet;
pub use timing::{timing_experiment, TimingCell, TimingReport, TimingRow};

use crate::{Error, Result};

/// Checks that all logs describe the same function and dimension, and
/// optionally the same algorithm.
pub(crate) fn check_same_key(logs: &[&TrialLog], same_algorithm: bool) -> Result<()> {
    let first = logs
        .first()
        .ok_or_else(|| Error::invalid("empty log set"))?;
    for log in logs {
        if log.function_id != first.function_id || log.dimension != first.dimension {
            return Err(Error::invalid(format!(
                "mixed problems: {}/{}D and {}/{}D",
                first.function_id, first.dimension, log.function_id, log.dimension
            )));
        }
        if same_algorithm && log.algorithm_id != first.algorithm_id {
            return Err(Error::invalid(format!(
                "mixed algorithms: {} and {}",
                first.algorithm_id, log.algorithm_id
            )));
        }
    }
    Ok(())
}
