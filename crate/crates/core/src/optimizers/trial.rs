use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DEFAULT_REINIT_THRESHOLD;
use super::{hj_sweep, mts_ls1_sweep, AlgorithmKind, AlgorithmVariant, HjState, MtsLs1State};
use crate::bench::{TargetSet, TrialLog};
use crate::linesearch::{self, BRENT_TOL, BSRR_EPSILON};
use crate::problems::{EvaluationRecorder, Objective, Problem};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReinitRule {
    /// Back to the center of the box.
    Center,
    /// Uniformly at random in the box.
    UniformRandom,
}

/// When and how a stalled Hooke-Jeeves run restarts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestartPolicy {
    pub enabled: bool,
    /// Restart once `sigma * (upper_1 - lower_1)` falls below this.
    pub stall_sigma_threshold: f64,
    pub reinit_rule: ReinitRule,
}

impl Default for RestartPolicy {
    fn default() -> Self {
        Self {
            enabled: true,
            stall_sigma_threshold: DEFAULT_REINIT_THRESHOLD,
            reinit_rule: ReinitRule::UniformRandom,
        }
    }
}

impl RestartPolicy {
    pub fn disabled() -> Self {
        Self {
            enabled: false,
            ..Self::default()
        }
    }
}

fn center<O: Objective + ?Sized>(objective: &O) -> Vec<f64> {
    objective
        .lower_bounds()
        .iter()
        .zip(objective.upper_bounds())
        .map(|(l, u)| 0.5 * (l + u))
        .collect()
}

fn uniform_in_box<O: Objective + ?Sized>(objective: &O, rng: &mut ChaCha8Rng) -> Vec<f64> {
    objective
        .lower_bounds()
        .iter()
        .zip(objective.upper_bounds())
        .map(|(&l, &u)| rng.gen_range(l..u))
        .collect()
}

fn initial_point<O: Objective + ?Sized>(
    kind: AlgorithmKind,
    objective: &O,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    match kind {
        AlgorithmKind::HookeJeeves | AlgorithmKind::MtsLs1 => center(objective),
        AlgorithmKind::Bsrr => objective
            .lower_bounds()
            .iter()
            .zip(objective.upper_bounds())
            .map(|(&l, &u)| rng.gen_range(-1.0..3.0f64).clamp(l, u))
            .collect(),
    }
}

/// Starting point: the box center for HJ and MTS-LS1, a seeded uniform draw
/// from `[-1, 3]^D` for BSrr.
pub fn initialize<O: Objective + ?Sized>(
    kind: AlgorithmKind,
    objective: &O,
    rng_seed: u64,
) -> Vec<f64> {
    initial_point(kind, objective, &mut ChaCha8Rng::seed_from_u64(rng_seed))
}

/// Runs `variant` on `objective` until `budget` evaluations are spent or the
/// recorder's smallest target is reached.
pub fn run_on_recorder<O: Objective + ?Sized>(
    variant: &AlgorithmVariant,
    objective: &O,
    budget: u64,
    restart: &RestartPolicy,
    seed: u64,
    recorder: &mut EvaluationRecorder,
) -> Result<()> {
    if budget == 0 {
        return Err(Error::invalid("budget must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x0 = initial_point(variant.kind, objective, &mut rng);

    if variant.kind == AlgorithmKind::Bsrr {
        linesearch::run_bsrr(objective, x0, budget, BRENT_TOL, BSRR_EPSILON, recorder)?;
        return Ok(());
    }

    if recorder.exhausted(budget) {
        return Ok(());
    }
    let f0 = objective.evaluate(&x0, recorder)?;
    let range0 = objective.upper_bounds()[0] - objective.lower_bounds()[0];

    match variant.kind {
        AlgorithmKind::HookeJeeves => {
            let mut state = HjState::new(x0, f0, variant.sigma_init, variant.c)?;
            while !recorder.exhausted(budget) {
                hj_sweep(&mut state, objective, recorder, budget);
                if restart.enabled
                    && state.sigma() * range0 < restart.stall_sigma_threshold
                    && !recorder.exhausted(budget)
                {
                    let x = match restart.reinit_rule {
                        ReinitRule::Center => center(objective),
                        ReinitRule::UniformRandom => uniform_in_box(objective, &mut rng),
                    };
                    let fx = objective.evaluate(&x, recorder)?;
                    state.restart(x, fx);
                }
            }
        }
        AlgorithmKind::MtsLs1 => {
            let mut state = MtsLs1State::new(x0, f0, variant.sigma_init, variant.c)?;
            while !recorder.exhausted(budget) {
                mts_ls1_sweep(&mut state, objective, recorder, budget);
            }
        }
        AlgorithmKind::Bsrr => unreachable!(),
    }
    Ok(())
}

/// One complete benchmark trial.
pub fn run_trial(
    variant: &AlgorithmVariant,
    problem: &Problem,
    budget: u64,
    restart: &RestartPolicy,
    seed: u64,
    targets: &TargetSet,
) -> Result<TrialLog> {
    let mut recorder = EvaluationRecorder::new(problem.f_opt, targets.precisions());
    run_on_recorder(variant, problem, budget, restart, seed, &mut recorder)?;
    Ok(TrialLog::from_recorder(
        &variant.name(),
        problem,
        seed,
        budget,
        &recorder,
    ))
}
