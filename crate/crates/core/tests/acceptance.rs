//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sepbench::bench::{
    compute_ert, rank_sum_test, run_suite, timing_experiment, trial_seed, SuiteConfig, TargetSet,
    TrialLog,
};
use sepbench::linesearch::{brent_minimize, step_minimize};
use sepbench::optimizers::{
    hj_sweep, mts_ls1_sweep, run_trial, AlgorithmVariant, HjState, MtsLs1State, RestartPolicy,
};
use sepbench::problems::{make_problem, BoxObjective, EvaluationRecorder, FunctionId, Objective};

const MASTER_SEED: u64 = 1;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn trials(variant: AlgorithmVariant, f: FunctionId, dim: usize) -> Vec<TrialLog> {
    let budget = variant.kind.default_budget_multiplier() * dim as u64;
    (1..=15u32)
        .into_par_iter()
        .map(|i| {
            let p = make_problem(f, dim, i).unwrap();
            let seed = trial_seed(MASTER_SEED, &variant.name(), f, dim, i);
            run_trial(
                &variant,
                &p,
                budget,
                &RestartPolicy::default(),
                seed,
                &TargetSet::default(),
            )
            .unwrap()
        })
        .collect()
}

fn successes(logs: &[TrialLog], precision: f64) -> usize {
    logs.iter()
        .filter(|l| l.hit_index(precision).is_some())
        .count()
}

fn ert(logs: &[TrialLog], precision: f64) -> f64 {
    let refs: Vec<&TrialLog> = logs.iter().collect();
    compute_ert(&refs, precision)
        .unwrap()
        .ert
        .unwrap_or(f64::INFINITY)
}

fn f5_boundary() -> Outcome {
    let logs = trials(AlgorithmVariant::hooke_jeeves(0.5), FunctionId::F5, 80);
    let hits: Vec<u64> = logs.iter().filter_map(|l| l.hit_index(1e-8)).collect();
    let fast = hits.iter().filter(|&&h| h <= 250).count();
    outcome(
        fast >= 14,
        format!("HJ-5 f5 D=80 hits within 250 evals: {fast}/15, hit indices {hits:?}"),
    )
}

fn learning_rate_f3() -> Outcome {
    let s9 = successes(
        &trials(AlgorithmVariant::mts_ls1(0.9), FunctionId::F3, 20),
        1e-8,
    );
    let s5 = successes(
        &trials(AlgorithmVariant::mts_ls1(0.5), FunctionId::F3, 20),
        1e-8,
    );
    outcome(
        s9 >= 14 && s9 > s5,
        format!("f3 D=20 successes: MTS-LS1-9 {s9}/15, MTS-LS1-5 {s5}/15"),
    )
}

fn c_cost_unimodal() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for f in [FunctionId::F1, FunctionId::F2] {
        let e9 = ert(&trials(AlgorithmVariant::mts_ls1(0.9), f, 80), 1e-8);
        let e5 = ert(&trials(AlgorithmVariant::mts_ls1(0.5), f, 80), 1e-8);
        let ratio = e9 / e5;
        pass &= ratio >= 2.0;
        detail.push(format!(
            "{f}: ERT ratio MTS-LS1-9/MTS-LS1-5 = {ratio:.2} ({e9:.0}/{e5:.0})"
        ));
    }
    outcome(pass, detail.join("; "))
}

fn exploratory_advantage() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for f in [FunctionId::F1, FunctionId::F2] {
        let hj = ert(&trials(AlgorithmVariant::hooke_jeeves(0.5), f, 80), 1e-8);
        let mts = ert(&trials(AlgorithmVariant::mts_ls1(0.5), f, 80), 1e-8);
        pass &= hj < mts;
        detail.push(format!("{f}: ERT HJ-5 {hj:.0} vs MTS-LS1-5 {mts:.0}"));
    }
    outcome(pass, detail.join("; "))
}

fn bsrr_separable() -> Outcome {
    let f3_20 = successes(&trials(AlgorithmVariant::bsrr(), FunctionId::F3, 20), 1e-8);
    let f3_40 = successes(&trials(AlgorithmVariant::bsrr(), FunctionId::F3, 40), 1e-8);
    let f4_40 = successes(&trials(AlgorithmVariant::bsrr(), FunctionId::F4, 40), 1e-6);
    outcome(
        f3_20 >= 13 && f3_40 >= 13 && f4_40 >= 10,
        format!("BSrr f3@1e-8 D=20 {f3_20}/15, D=40 {f3_40}/15; f4@1e-6 D=40 {f4_40}/15"),
    )
}

fn mts_asymmetry_f4() -> Outcome {
    let m5 = trials(AlgorithmVariant::mts_ls1(0.5), FunctionId::F4, 20);
    let m9 = trials(AlgorithmVariant::mts_ls1(0.9), FunctionId::F4, 20);
    let bs = trials(AlgorithmVariant::bsrr(), FunctionId::F4, 20);
    let (s5, s9) = (successes(&m5, 1e-8), successes(&m9, 1e-8));
    let (s5_6, s9_6, sb_6) = (
        successes(&m5, 1e-6),
        successes(&m9, 1e-6),
        successes(&bs, 1e-6),
    );
    outcome(
        s5 <= 5 && s9 <= 5 && sb_6 > s5_6 && sb_6 > s9_6,
        format!(
            "f4 D=20 @1e-8: MTS-LS1-5 {s5}/15, MTS-LS1-9 {s9}/15; @1e-6: BSrr {sb_6}, MTS-LS1-5 {s5_6}, MTS-LS1-9 {s9_6}"
        ),
    )
}

fn random_log(rng: &mut ChaCha8Rng, budget: u64) -> TrialLog {
    let total = rng.gen_range(1..=budget);
    let mut events = Vec::new();
    let mut delta = 10f64.powf(rng.gen_range(-2.0..4.0));
    let mut idx = 1;
    while idx <= total {
        events.push((idx, delta));
        delta /= 10f64.powf(rng.gen_range(0.05..3.0));
        idx += rng.gen_range(1..budget / 4 + 2);
    }
    TrialLog {
        algorithm_id: "X".into(),
        function_id: FunctionId::F1,
        dimension: 2,
        instance_id: 1,
        seed: 0,
        budget,
        events,
        total_evals: total,
        targets_hit: vec![],
    }
}

/// The ERT definition spelled out evaluation by evaluation.
fn brute_force_ert(logs: &[TrialLog], precision: f64) -> Option<f64> {
    let mut spent = 0u64;
    let mut reached = 0u64;
    for log in logs {
        for k in 1..=log.total_evals {
            spent += 1;
            let best = log
                .events
                .iter()
                .filter(|e| e.0 <= k)
                .map(|e| e.1)
                .fold(f64::INFINITY, f64::min);
            if best <= precision {
                reached += 1;
                break;
            }
        }
    }
    (reached > 0).then(|| spent as f64 / reached as f64)
}

fn ert_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=15);
        let logs: Vec<TrialLog> = (0..n).map(|_| random_log(&mut rng, 300)).collect();
        let refs: Vec<&TrialLog> = logs.iter().collect();
        let precision = 10f64.powi(rng.gen_range(-8..=2));
        if compute_ert(&refs, precision).unwrap().ert != brute_force_ert(&logs, precision) {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("{mismatches} mismatches over 1000 random log sets"),
    )
}

/// Exact two-sided p over all size-`n_a` subsets of ranks `1..=n_a+n_b`.
fn enumerated_p(u_obs: f64, n_a: usize, n_b: usize) -> f64 {
    let n = n_a + n_b;
    let mean = (n_a * n_b) as f64 / 2.0;
    let (mut extreme, mut total) = (0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != n_a {
            continue;
        }
        let rank_sum: usize = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum();
        let u = rank_sum as f64 - (n_a * (n_a + 1)) as f64 / 2.0;
        total += 1;
        if (u - mean).abs() >= (u_obs - mean).abs() {
            extreme += 1;
        }
    }
    extreme as f64 / total as f64
}

fn rank_sum_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0f64;
    for n_a in 1..=8 {
        for n_b in 1..=8 {
            for _ in 0..4 {
                let mut values: Vec<f64> = (0..n_a + n_b).map(|k| k as f64).collect();
                for k in (1..values.len()).rev() {
                    values.swap(k, rng.gen_range(0..=k));
                }
                let r = rank_sum_test(&values[..n_a], &values[n_a..]).unwrap();
                worst = worst.max((r.p_value - enumerated_p(r.u_statistic, n_a, n_b)).abs());
            }
        }
    }
    let fixture = rank_sum_test(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0])
        .unwrap()
        .p_value;
    outcome(
        worst <= 1e-12 && (fixture - 0.1).abs() <= 1e-12,
        format!("max |p - enumeration| = {worst:e}; fixture p = {fixture}"),
    )
}

fn univariate_quality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut brent_ok = 0;
    for _ in 0..50 {
        let r: f64 = rng.gen_range(-1.0..1.0);
        let a4: f64 = rng.gen_range(0.1..3.0);
        let a2: f64 = rng.gen_range(0.1..3.0);
        // Convex when 36 a3^2 <= 96 a4 a2.
        let bound = (96.0 * a4 * a2 / 36.0).sqrt();
        let a3: f64 = rng.gen_range(-bound..bound);
        let f = |x: f64| {
            let t = x - r;
            a4 * t.powi(4) + a3 * t.powi(3) + a2 * t * t
        };
        let df = |x: f64| {
            let t = x - r;
            4.0 * a4 * t.powi(3) + 3.0 * a3 * t * t + 2.0 * a2 * t
        };
        // The derivative is increasing, so bisection finds the minimizer.
        let (mut lo, mut hi) = (-2.0f64, 2.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if df(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let x_star = 0.5 * (lo + hi);
        let mut rec = EvaluationRecorder::untargeted();
        let (x, _) = brent_minimize(f, (-2.0, 2.0), 1e-10, &mut rec, 100).unwrap();
        if (x - x_star).abs() <= 1e-7 && rec.eval_count() <= 100 {
            brent_ok += 1;
        }
    }

    let rastrigin = |x: f64| 10.0 * (1.0 - (2.0 * std::f64::consts::PI * x).cos()) + x * x;
    let mut step_ok = 0;
    for _ in 0..100 {
        let a = rng.gen_range(-5.12..-0.1);
        let b = rng.gen_range(0.1..5.12);
        let mut rec = EvaluationRecorder::untargeted();
        let (_, fx) = step_minimize(rastrigin, (a, b), 1e-8, &mut rec, 500).unwrap();
        if fx < 1e-6 {
            step_ok += 1;
        }
    }
    outcome(
        brent_ok == 50 && step_ok >= 95,
        format!("Brent quartics {brent_ok}/50; STEP Rastrigin {step_ok}/100"),
    )
}

fn trace_fidelity() -> Outcome {
    let mut checks = Vec::new();
    let run_hj = |shift: f64| {
        let obj = BoxObjective::new(vec![-5.0], vec![5.0], move |x: &[f64]| {
            (x[0] - shift).powi(2)
        })
        .unwrap();
        let mut rec = EvaluationRecorder::untargeted().with_trace();
        let f0 = obj.value(&[0.0]);
        let mut st = HjState::new(vec![0.0], f0, 0.4, 0.5).unwrap();
        let out = hj_sweep(&mut st, &obj, &mut rec, 100);
        (st, out.evaluations, rec.trace().unwrap().to_vec())
    };
    let (st, n, trace) = run_hj(0.0);
    checks.push(
        st.sigma() == 0.2 && st.x() == [0.0] && n == 2 && trace == vec![vec![4.0], vec![-4.0]],
    );
    let (st, n, trace) = run_hj(4.0);
    checks.push(
        st.sigma() == 0.4 && st.x() == [4.0] && n == 2 && trace == vec![vec![4.0], vec![5.0]],
    );

    let run_mts = |shift: f64, c: f64, sigma: f64| {
        let obj = BoxObjective::new(vec![-5.0], vec![5.0], move |x: &[f64]| {
            (x[0] - shift).powi(2)
        })
        .unwrap();
        let mut rec = EvaluationRecorder::untargeted().with_trace();
        let f0 = obj.value(&[0.0]);
        let mut st = MtsLs1State::new(vec![0.0], f0, 0.4, c)
            .unwrap()
            .with_sigma(sigma)
            .unwrap();
        let out = mts_ls1_sweep(&mut st, &obj, &mut rec, 100);
        (st, out.evaluations, rec.trace().unwrap().to_vec())
    };
    let (st, n, trace) = run_mts(2.0, 0.5, 0.4);
    checks.push(
        st.sigma() == 0.4 && st.x() == [2.0] && n == 2 && trace == vec![vec![-4.0], vec![2.0]],
    );
    for c in [0.5, 0.9] {
        let (st, n, trace) = run_mts(0.0, c, 0.4);
        checks.push(
            st.sigma() == c * 0.4
                && st.x() == [0.0]
                && n == 2
                && trace == vec![vec![-4.0], vec![2.0]],
        );
    }
    let (st, _, _) = run_mts(0.0, 0.5, 2e-17);
    checks.push(st.sigma() == 0.4);

    let obj = BoxObjective::new(vec![-5.0], vec![5.0], |x: &[f64]| x[0] * x[0]).unwrap();
    let mut rec = EvaluationRecorder::untargeted();
    let mut st = HjState::new(vec![1.0], 1.0, 0.4, 0.5).unwrap();
    checks.push(hj_sweep(&mut st, &obj, &mut rec, 0).evaluations == 0 && st.x() == [1.0]);

    let passed = checks.iter().filter(|&&c| c).count();
    outcome(
        passed == checks.len(),
        format!("{passed}/{} hand traces reproduced", checks.len()),
    )
}

fn determinism() -> Outcome {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut payloads = Vec::new();
    for dir in &dirs {
        let config = SuiteConfig {
            functions: vec![FunctionId::F1, FunctionId::F3, FunctionId::F10],
            dimensions: vec![5],
            output_dir: dir.path().to_path_buf(),
            ..SuiteConfig::default()
        };
        run_suite(&config, None, &|_| {}).unwrap();
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir.path())
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (
                    e.file_name().to_string_lossy().into_owned(),
                    std::fs::read(e.path()).unwrap(),
                )
            })
            .collect();
        files.sort();
        payloads.push(files);
    }
    let n = payloads[0].len();
    outcome(
        payloads[0] == payloads[1] && n == 5 * 3 * 15 + 1,
        format!(
            "{n} files per run, identical: {}",
            payloads[0] == payloads[1]
        ),
    )
}

fn timing_protocol() -> Outcome {
    let problems: Vec<_> = [20, 40, 80, 160]
        .iter()
        .flat_map(|&d| {
            FunctionId::ALL
                .iter()
                .map(move |&f| make_problem(f, d, 1).unwrap())
        })
        .collect();
    let variants = [
        AlgorithmVariant::hooke_jeeves(0.5),
        AlgorithmVariant::mts_ls1(0.5),
        AlgorithmVariant::bsrr(),
    ];
    match timing_experiment(&variants, &problems, 1) {
        Ok(report) => {
            let ok = report.dimensions == [20, 40, 80, 160]
                && report.rows.iter().flat_map(|r| &r.cells).all(|c| {
                    c.evaluations == c.runs as u64 * 2 * c.dimension as u64
                        && c.per_eval_1e5.is_finite()
                        && c.per_eval_1e5 >= 0.0
                });
            outcome(
                ok,
                format!(
                    "rows {}, 2D evaluations per problem verified",
                    report.rows.len()
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (
            "f5 boundary exploitation",
            Duration::from_secs(1),
            f5_boundary,
        ),
        (
            "learning-rate sensitivity on f3",
            Duration::from_secs(60),
            learning_rate_f3,
        ),
        (
            "c cost on unimodal functions",
            Duration::from_secs(300),
            c_cost_unimodal,
        ),
        (
            "exploratory-move advantage",
            Duration::from_secs(300),
            exploratory_advantage,
        ),
        (
            "BSrr separable strength",
            Duration::from_secs(300),
            bsrr_separable,
        ),
        (
            "MTS-LS1 asymmetry weakness on f4",
            Duration::MAX,
            mts_asymmetry_f4,
        ),
        ("ERT oracle equivalence", Duration::from_secs(5), ert_oracle),
        (
            "rank-sum exactness",
            Duration::from_secs(30),
            rank_sum_exactness,
        ),
        (
            "univariate solver quality",
            Duration::from_secs(30),
            univariate_quality,
        ),
        ("algorithm trace fidelity", Duration::MAX, trace_fidelity),
        ("determinism", Duration::MAX, determinism),
        ("timing protocol", Duration::MAX, timing_protocol),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let pass = out.pass && elapsed <= *limit;
        if !pass {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {name}: {} ({:.2} s)",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
