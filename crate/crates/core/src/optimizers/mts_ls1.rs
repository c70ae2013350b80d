use super::{probe_coordinate, validate_step_params, Probe, SweepOutcome};
use super::{DEFAULT_REINIT_THRESHOLD, DEFAULT_SIGMA_INIT};
use crate::problems::{EvaluationRecorder, Objective};
use crate::{Error, Result};

/// Resumable MTS-LS1 state. `fx` caches `f(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MtsLs1State {
    x: Vec<f64>,
    fx: f64,
    sigma: f64,
    sigma_init: f64,
    c: f64,
    reinit_threshold: f64,
    plus_factor: f64,
}

impl MtsLs1State {
    pub fn new(x: Vec<f64>, fx: f64, sigma_init: f64, c: f64) -> Result<Self> {
        validate_step_params(sigma_init, c)?;
        Ok(Self {
            x,
            fx,
            sigma: sigma_init,
            sigma_init,
            c,
            reinit_threshold: DEFAULT_REINIT_THRESHOLD,
            plus_factor: 0.5,
        })
    }

    /// State with the default `sigma_init = 0.4`.
    pub fn with_c(x: Vec<f64>, fx: f64, c: f64) -> Result<Self> {
        Self::new(x, fx, DEFAULT_SIGMA_INIT, c)
    }

    /// Overrides the current step size, e.g. to resume a run.
    pub fn with_sigma(mut self, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::invalid("sigma must be positive"));
        }
        self.sigma = sigma;
        Ok(self)
    }

    pub fn with_plus_factor(mut self, plus_factor: f64) -> Result<Self> {
        if !(plus_factor > 0.0) {
            return Err(Error::invalid("plus_factor must be positive"));
        }
        self.plus_factor = plus_factor;
        Ok(self)
    }

    pub fn with_reinit_threshold(mut self, threshold: f64) -> Result<Self> {
        if !(threshold > 0.0) {
            return Err(Error::invalid("reinit threshold must be positive"));
        }
        self.reinit_threshold = threshold;
        Ok(self)
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

    pub fn plus_factor(&self) -> f64 {
        self.plus_factor
    }
}

/// One outer iteration of MTS-LS1: per coordinate a full step down, then a
/// half step up; sigma shrinks (and may reset to `sigma_init`) only when no
/// move was accepted in the whole pass.
pub fn mts_ls1_sweep<O: Objective + ?Sized>(
    state: &mut MtsLs1State,
    objective: &O,
    recorder: &mut EvaluationRecorder,
    budget: u64,
) -> SweepOutcome {
    let start = recorder.eval_count();
    let f_prev = state.fx;
    let lower = objective.lower_bounds();
    let upper = objective.upper_bounds();

    for i in 0..state.x.len() {
        let range = upper[i] - lower[i];
        let minus = state.x[i] - state.sigma * range;
        match probe_coordinate(
            objective,
            recorder,
            budget,
            &mut state.x,
            &mut state.fx,
            i,
            minus,
        ) {
            Probe::Exhausted => {
                return SweepOutcome {
                    evaluations: recorder.eval_count() - start,
                    completed: false,
                    improved: state.fx < f_prev,
                    sigma_decayed: false,
                }
            }
            Probe::Accepted => continue,
            Probe::Rejected => {}
        }
        let plus = state.x[i] + state.plus_factor * state.sigma * range;
        if let Probe::Exhausted = probe_coordinate(
            objective,
            recorder,
            budget,
            &mut state.x,
            &mut state.fx,
            i,
            plus,
        ) {
            return SweepOutcome {
                evaluations: recorder.eval_count() - start,
                completed: false,
                improved: state.fx < f_prev,
                sigma_decayed: false,
            };
        }
    }

    // fx is only ever replaced by a strictly smaller value, so equality with
    // the cached start value means nothing was accepted.
    let mut sigma_decayed = false;
    if state.fx == f_prev {
        state.sigma *= state.c;
        sigma_decayed = true;
        if state.sigma * (upper[0] - lower[0]) < state.reinit_threshold {
            state.sigma = state.sigma_init;
        }
    }

    SweepOutcome {
        evaluations: recorder.eval_count() - start,
        completed: true,
        improved: state.fx < f_prev,
        sigma_decayed,
    }
}
