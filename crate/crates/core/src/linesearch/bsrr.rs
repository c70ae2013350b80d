use super::hybrid::BrentStep;
use super::{BRENT_TOL, BSRR_EPSILON};
use crate::bench::{TargetSet, TrialLog};
use crate::optimizers::{self, AlgorithmKind, AlgorithmVariant};
use crate::problems::{EvaluationRecorder, Objective, Problem};
use crate::{Error, Result};

/// Round-robin state: the incumbent and one Brent-STEP solver per coordinate.
///
/// Solver `i` searches the line through the incumbent along coordinate `i`.
/// When another coordinate moves the incumbent, the line values of every
/// other solver are offset by the change in the incumbent value, which is
/// exact for additively separable objectives.
#[derive(Debug, Clone)]
pub struct BsrrState {
    x: Vec<f64>,
    fx: f64,
    solvers: Vec<BrentStep>,
    cursor: usize,
}

impl BsrrState {
    pub fn new<O: Objective + ?Sized>(
        objective: &O,
        x: Vec<f64>,
        fx: f64,
        tol: f64,
        epsilon: f64,
    ) -> Result<Self> {
        let solvers = objective
            .lower_bounds()
            .iter()
            .zip(objective.upper_bounds())
            .zip(&x)
            .map(|((&lo, &hi), &xi)| {
                let mut s = BrentStep::new(lo, hi, tol, epsilon)?;
                s.seed(xi, fx);
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            x,
            fx,
            solvers,
            cursor: 0,
        })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn fx(&self) -> f64 {
        self.fx
    }

    /// Coordinate visited next (zero-based).
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn solver(&self, i: usize) -> &BrentStep {
        &self.solvers[i]
    }

    /// Gives the next coordinate with work left one evaluation. Returns
    /// `false` when the budget is spent or every solver is exhausted.
    pub fn visit<O: Objective + ?Sized>(
        &mut self,
        objective: &O,
        recorder: &mut EvaluationRecorder,
        budget: u64,
    ) -> bool {
        let dim = self.x.len();
        for _ in 0..dim {
            if recorder.exhausted(budget) {
                return false;
            }
            let i = self.cursor;
            self.cursor = (self.cursor + 1) % dim;
            let Some(t) = self.solvers[i].ask() else {
                continue;
            };

            let old = self.x[i];
            self.x[i] = t;
            let f = objective.value(&self.x);
            recorder.observe(&self.x, f);
            self.solvers[i].tell(t, f);
            if f < self.fx {
                let delta = f - self.fx;
                for (j, s) in self.solvers.iter_mut().enumerate() {
                    if j != i {
                        s.shift(delta);
                    }
                }
                self.fx = f;
            } else {
                self.x[i] = old;
            }
            return true;
        }
        false
    }
}

/// Runs BSrr from `x0` until `budget` is spent, the recorder's final target
/// is hit, or every coordinate solver is exhausted.
pub fn run_bsrr<O: Objective + ?Sized>(
    objective: &O,
    x0: Vec<f64>,
    budget: u64,
    tol: f64,
    epsilon: f64,
    recorder: &mut EvaluationRecorder,
) -> Result<BsrrState> {
    let dim = objective.dimension();
    if budget < dim as u64 + 1 {
        return Err(Error::invalid(format!(
            "BSrr needs a budget of at least D + 1 = {}, got {budget}",
            dim + 1
        )));
    }
    if recorder.exhausted(budget) {
        return Err(Error::invalid("no evaluation budget left"));
    }
    let f0 = objective.evaluate(&x0, recorder)?;
    let mut state = BsrrState::new(objective, x0, f0, tol, epsilon)?;
    while state.visit(objective, recorder, budget) {}
    Ok(state)
}

/// One BSrr benchmark trial started uniformly in `[-1, 3]^D`.
pub fn bsrr_run_trial(
    problem: &Problem,
    budget: u64,
    seed: u64,
    targets: &TargetSet,
) -> Result<TrialLog> {
    let x0 = optimizers::initialize(AlgorithmKind::Bsrr, problem, seed);
    let mut recorder = EvaluationRecorder::new(problem.f_opt, targets.precisions());
    run_bsrr(problem, x0, budget, BRENT_TOL, BSRR_EPSILON, &mut recorder)?;
    Ok(TrialLog::from_recorder(
        &AlgorithmVariant::bsrr().name(),
        problem,
        seed,
        budget,
        &recorder,
    ))
}
