use super::{probe_coordinate, validate_step_params, Probe, SweepOutcome};
use crate::problems::{EvaluationRecorder, Objective};
use crate::Result;

/// Resumable Hooke-Jeeves state. `fx` caches `f(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HjState {
    x: Vec<f64>,
    fx: f64,
    sigma: f64,
    sigma_init: f64,
    c: f64,
}

impl HjState {
    /// `fx` must be the already-recorded value of `x`.
    pub fn new(x: Vec<f64>, fx: f64, sigma_init: f64, c: f64) -> Result<Self> {
        validate_step_params(sigma_init, c)?;
        Ok(Self {
            x,
            fx,
            sigma: sigma_init,
            sigma_init,
            c,
        })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn fx(&self) -> f64 {
        self.fx
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn sigma_init(&self) -> f64 {
        self.sigma_init
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Restarts from `x` with a fresh step size.
    pub fn restart(&mut self, x: Vec<f64>, fx: f64) {
        self.x = x;
        self.fx = fx;
        self.sigma = self.sigma_init;
    }
}

/// One outer iteration of Hooke-Jeeves.
///
/// Each coordinate is probed at `x_i + sigma * range_i`, then (if that did not
/// strictly improve) at `x_i - sigma * range_i`. If the coordinate pass
/// improved on the starting value, the pattern point `x + (x - x_prev)` is
/// tried; otherwise sigma shrinks by `c`. All candidates are clamped to the
/// box. Returns early, leaving sigma untouched, when `recorder` is exhausted.
pub fn hj_sweep<O: Objective + ?Sized>(
    state: &mut HjState,
    objective: &O,
    recorder: &mut EvaluationRecorder,
    budget: u64,
) -> SweepOutcome {
    let start = recorder.eval_count();
    let x_prev = state.x.clone();
    let f_prev = state.fx;
    let lower = objective.lower_bounds();
    let upper = objective.upper_bounds();

    let partial = |recorder: &EvaluationRecorder, state: &HjState| SweepOutcome {
        evaluations: recorder.eval_count() - start,
        completed: false,
        improved: state.fx < f_prev,
        sigma_decayed: false,
    };

    for i in 0..state.x.len() {
        let step = state.sigma * (upper[i] - lower[i]);
        let plus = state.x[i] + step;
        match probe_coordinate(
            objective,
            recorder,
            budget,
            &mut state.x,
            &mut state.fx,
            i,
            plus,
        ) {
            Probe::Exhausted => return partial(recorder, state),
            Probe::Accepted => continue,
            Probe::Rejected => {}
        }
        let minus = state.x[i] - step;
        if let Probe::Exhausted = probe_coordinate(
            objective,
            recorder,
            budget,
            &mut state.x,
            &mut state.fx,
            i,
            minus,
        ) {
            return partial(recorder, state);
        }
    }

    let mut sigma_decayed = false;
    if state.fx < f_prev {
        if recorder.exhausted(budget) {
            return partial(recorder, state);
        }
        let candidate: Vec<f64> = state
            .x
            .iter()
            .zip(&x_prev)
            .enumerate()
            .map(|(i, (&x, &p))| (x + (x - p)).clamp(lower[i], upper[i]))
            .collect();
        let f = objective.value(&candidate);
        recorder.observe(&candidate, f);
        if f < state.fx {
            state.x = candidate;
            state.fx = f;
        }
    } else {
        state.sigma *= state.c;
        sigma_decayed = true;
    }

    SweepOutcome {
        evaluations: recorder.eval_count() - start,
        completed: true,
        improved: state.fx < f_prev,
        sigma_decayed,
    }
}
