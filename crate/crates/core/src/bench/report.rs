//! CSV renderings of the analysis outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::ecdf::log_grid;
use super::{
    build_comparison_samples, compute_ecdf, compute_ert, rank_sum_test, TargetSet, TrialLog,
};
use crate::problems::FunctionId;
use crate::Result;

type ProblemKey = (FunctionId, usize);

fn by_problem_and_algorithm(logs: &[TrialLog]) -> BTreeMap<(ProblemKey, &str), Vec<&TrialLog>> {
    let mut groups: BTreeMap<(ProblemKey, &str), Vec<&TrialLog>> = BTreeMap::new();
    for log in logs {
        groups
            .entry(((log.function_id, log.dimension), log.algorithm_id.as_str()))
            .or_default()
            .push(log);
    }
    groups
}

/// Rows `function,dim,algorithm,target,ert,n_success,n_trials`; an undefined
/// ERT is written as `inf`.
pub fn ert_csv(logs: &[TrialLog], targets: &TargetSet) -> Result<String> {
    let mut out = String::from("function,dim,algorithm,target,ert,n_success,n_trials\n");
    for (((function, dim), algorithm), group) in by_problem_and_algorithm(logs) {
        for &p in targets.precisions() {
            let r = compute_ert(&group, p)?;
            let ert = r.ert.map_or_else(|| "inf".to_string(), |e| e.to_string());
            let _ = writeln!(
                out,
                "{function},{dim},{algorithm},{p:e},{ert},{},{}",
                r.n_success, r.n_trials
            );
        }
    }
    Ok(out)
}

/// Rows `group,budget_per_dim,fraction`, one group per (algorithm,
/// dimension) aggregated over functions, on a log-spaced budget grid.
pub fn ecdf_csv(logs: &[TrialLog], targets: &TargetSet) -> Result<String> {
    let mut groups: BTreeMap<(&str, usize), Vec<&TrialLog>> = BTreeMap::new();
    for log in logs {
        groups
            .entry((log.algorithm_id.as_str(), log.dimension))
            .or_default()
            .push(log);
    }
    let mut out = String::from("group,budget_per_dim,fraction\n");
    for ((algorithm, dim), group) in groups {
        let max_budget = group
            .iter()
            .map(|l| l.budget.max(l.total_evals))
            .max()
            .unwrap_or(0);
        let grid = log_grid(dim, max_budget);
        let fractions = compute_ecdf(&group, targets.precisions(), &grid)?;
        for (g, f) in grid.iter().zip(fractions) {
            let _ = writeln!(out, "{algorithm}/{dim}D,{},{f}", *g as f64 / dim as f64);
        }
    }
    Ok(out)
}

/// Rows `function,dim,target,alg_a,alg_b,U,p` for every problem run by both
/// algorithms.
pub fn ranksum_csv(
    logs: &[TrialLog],
    alg_a: &str,
    alg_b: &str,
    targets: &TargetSet,
) -> Result<String> {
    let groups = by_problem_and_algorithm(logs);
    let mut out = String::from("function,dim,target,alg_a,alg_b,U,p\n");
    for ((key, algorithm), group_a) in &groups {
        if *algorithm != alg_a {
            continue;
        }
        let Some(group_b) = groups.get(&(*key, alg_b)) else {
            continue;
        };
        let (function, dim) = key;
        for &p in targets.precisions() {
            let (a, b) = build_comparison_samples(group_a, group_b, p)?;
            let r = rank_sum_test(&a, &b)?;
            let _ = writeln!(
                out,
                "{function},{dim},{p:e},{alg_a},{alg_b},{},{}",
                r.u_statistic, r.p_value
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log(alg: &str, events: Vec<(u64, f64)>, total: u64) -> TrialLog {
        TrialLog {
            algorithm_id: alg.into(),
            function_id: FunctionId::F1,
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
    fn ert_rows() {
        let targets = TargetSet::new(vec![1.0, 1e-8]).unwrap();
        let logs = vec![
            log("A", vec![(1, 5.0), (10, 0.5), (100, 1e-9)], 100),
            log("A", vec![(1, 5.0), (30, 0.5)], 1000),
        ];
        let csv = ert_csv(&logs, &targets).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1], "f1,2,A,1e0,20,2,2");
        assert_eq!(lines[2], "f1,2,A,1e-8,1100,1,2");
        let none = ert_csv(&logs[1..], &targets).unwrap();
        assert!(none.lines().nth(2).unwrap().ends_with(",inf,0,1"));
    }

    #[test]
    fn ecdf_and_ranksum_rows() {
        let targets = TargetSet::default();
        let logs = vec![
            log("A", vec![(1, 5.0), (100, 1e-9)], 100),
            log("B", vec![(1, 5.0), (900, 1e-3)], 1000),
        ];
        let ecdf = ecdf_csv(&logs, &targets).unwrap();
        assert!(ecdf.lines().nth(1).unwrap().starts_with("A/2D,1,"));
        let rs = ranksum_csv(&logs, "A", "B", &targets).unwrap();
        assert_eq!(rs.lines().count(), 1 + targets.len());
        assert!(
            ranksum_csv(&logs, "A", "C", &targets)
                .unwrap()
                .lines()
                .count()
                == 1
        );
    }
}
