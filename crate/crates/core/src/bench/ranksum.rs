use statrs::function::erf::erfc;

use super::{check_same_key, TrialLog};
use crate::{Error, Result};

/// Largest per-sample size for which the exact null distribution is used.
pub const EXACT_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankSumMethod {
    Exact,
    NormalApprox,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankSumResult {
    /// Mann-Whitney U of sample `a`: pairs with `a > b`, ties counting one half.
    pub u_statistic: f64,
    pub n_a: usize,
    pub n_b: usize,
    /// Two-sided.
    pub p_value: f64,
    pub method: RankSumMethod,
}

/// Turns two log sets into comparable samples where smaller is better.
///
/// A trial reaching `precision` after `k` evaluations maps to `-1/k`. A trial
/// that never reaches it maps to its best `delta_f` within the first `m`
/// evaluations, `m` being the smallest `total_evals` of any unsuccessful
/// trial in either set.
pub fn build_comparison_samples(
    logs_a: &[&TrialLog],
    logs_b: &[&TrialLog],
    precision: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if logs_a.is_empty() || logs_b.is_empty() {
        return Err(Error::invalid("comparison needs two non-empty log sets"));
    }
    let all: Vec<&TrialLog> = logs_a.iter().chain(logs_b).copied().collect();
    check_same_key(&all, false)?;
    let m = all
        .iter()
        .filter(|l| l.hit_index(precision).is_none())
        .map(|l| l.total_evals)
        .min()
        .unwrap_or(u64::MAX);
    let value = |log: &TrialLog| match log.hit_index(precision) {
        Some(k) => -1.0 / k as f64,
        None => log.best_delta_within(m).unwrap_or(f64::INFINITY),
    };
    Ok((
        logs_a.iter().map(|l| value(l)).collect(),
        logs_b.iter().map(|l| value(l)).collect(),
    ))
}

/// Midranks (1-based) of `values`, plus the tie-group sizes.
fn midranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = rank;
        }
        ties.push(end - start);
        start = end;
    }
    (ranks, ties)
}

/// Two-sided Mann-Whitney U test.
pub fn rank_sum_test(a: &[f64], b: &[f64]) -> Result<RankSumResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("rank-sum test needs two non-empty samples"));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::invalid("rank-sum samples must not contain NaN"));
    }
    let (n_a, n_b) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let rank_sum_a: f64 = ranks[..n_a].iter().sum();
    let u = rank_sum_a - (n_a * (n_a + 1)) as f64 / 2.0;

    let (p_value, method) = if n_a <= EXACT_LIMIT && n_b <= EXACT_LIMIT {
        // Midranks are multiples of 1/2, so doubled ranks are integers.
        let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
        let observed: usize = doubled[..n_a].iter().sum();
        (exact_p(&doubled, n_a, observed), RankSumMethod::Exact)
    } else {
        (normal_p(u, n_a, n_b, &ties), RankSumMethod::NormalApprox)
    };
    Ok(RankSumResult {
        u_statistic: u,
        n_a,
        n_b,
        p_value,
        method,
    })
}

/// Share of size-`k` subsets of `doubled` whose sum lies at least as far
/// from its mean as `observed` does.
fn exact_p(doubled: &[usize], k: usize, observed: usize) -> f64 {
    let max_sum: usize = doubled.iter().sum();
    // counts[j][s]: subsets of size j with sum s.
    let mut counts = vec![vec![0f64; max_sum + 1]; k + 1];
    counts[0][0] = 1.0;
    for &r in doubled {
        for j in (1..=k).rev() {
            for s in (r..=max_sum).rev() {
                let add = counts[j - 1][s - r];
                if add != 0.0 {
                    counts[j][s] += add;
                }
            }
        }
    }
    // Twice the mean sum, kept integral.
    let twice_mean = 2 * k * max_sum / doubled.len();
    let dev = |s: usize| (2 * s).abs_diff(twice_mean);
    let threshold = dev(observed);
    let total: f64 = counts[k].iter().sum();
    let extreme: f64 = counts[k]
        .iter()
        .enumerate()
        .filter(|&(s, _)| dev(s) >= threshold)
        .map(|(_, c)| c)
        .sum();
    (extreme / total).min(1.0)
}

fn normal_p(u: f64, n_a: usize, n_b: usize, ties: &[usize]) -> f64 {
    let (na, nb) = (n_a as f64, n_b as f64);
    let n = na + nb;
    let mean = na * nb / 2.0;
    let tie_term: f64 = ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / (n * (n - 1.0));
    let var = na * nb / 12.0 * ((n + 1.0) - tie_term);
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((u - mean).abs() - 0.5).max(0.0) / var.sqrt();
    erfc(z / std::f64::consts::SQRT_2).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::FunctionId;

    fn log(events: Vec<(u64, f64)>, total: u64) -> TrialLog {
        TrialLog {
            algorithm_id: "A".into(),
            function_id: FunctionId::F3,
            dimension: 2,
            instance_id: 1,
            seed: 0,
            budget: 1000,
            events,
            total_evals: total,
            targets_hit: vec![],
        }
    }

    #[test]
    fn identical_samples() {
        let r = rank_sum_test(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(r.u_statistic, 4.5);
        assert!(r.p_value >= 0.99);
        assert_eq!(r.method, RankSumMethod::Exact);
    }

    #[test]
    fn separated_samples() {
        let r = rank_sum_test(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(r.u_statistic, 0.0);
        assert!((r.p_value - 0.1).abs() < 1e-15);
        let r = rank_sum_test(&[0.0], &[1.0]).unwrap();
        assert_eq!(r.u_statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn large_samples_use_normal_approximation() {
        let a: Vec<f64> = (0..30).map(f64::from).collect();
        let b: Vec<f64> = (15..45).map(f64::from).collect();
        let r = rank_sum_test(&a, &b).unwrap();
        assert_eq!(r.method, RankSumMethod::NormalApprox);
        assert!(r.p_value > 0.0 && r.p_value < 0.01);
        let same = rank_sum_test(&[2.0; 12], &[2.0; 12]).unwrap();
        assert_eq!(same.p_value, 1.0);
    }

    #[test]
    fn empty_sample_is_rejected() {
        assert!(rank_sum_test(&[], &[1.0]).is_err());
    }

    #[test]
    fn samples_follow_truncation_rule() {
        let hit = log(vec![(1, 5.0), (100, 1e-9)], 100);
        let miss_short = log(vec![(1, 5.0), (400, 2.0)], 500);
        let miss_long = log(vec![(1, 5.0), (600, 1.0)], 800);
        let (a, b) = build_comparison_samples(&[&hit, &miss_long], &[&miss_short], 1e-8).unwrap();
        assert_eq!(a, vec![-0.01, 5.0]);
        assert_eq!(b, vec![2.0]);
        assert!(build_comparison_samples(&[], &[&hit], 1e-8).is_err());
    }
}
