use super::TrialLog;
use crate::{Error, Result};

/// Fraction of `(trial, target)` pairs reached within each budget of `grid`.
pub fn compute_ecdf(logs: &[&TrialLog], precisions: &[f64], grid: &[u64]) -> Result<Vec<f64>> {
    if logs.is_empty() || precisions.is_empty() {
        return Err(Error::invalid(
            "ECDF needs at least one trial and one target",
        ));
    }
    let hits: Vec<u64> = logs
        .iter()
        .flat_map(|log| precisions.iter().filter_map(|&p| log.hit_index(p)))
        .collect();
    let pairs = (logs.len() * precisions.len()) as f64;
    Ok(grid
        .iter()
        .map(|&g| hits.iter().filter(|&&h| h <= g).count() as f64 / pairs)
        .collect())
}

/// Budgets `ceil(dim * 10^(k/5))` for `k = 0, 1, ...` up to `max_budget`.
pub fn log_grid(dim: usize, max_budget: u64) -> Vec<u64> {
    let mut grid = Vec::new();
    for k in 0.. {
        let b = (dim as f64 * 10f64.powf(k as f64 / 5.0)).ceil() as u64;
        if b > max_budget {
            break;
        }
        if grid.last() != Some(&b) {
            grid.push(b);
        }
    }
    grid
}
