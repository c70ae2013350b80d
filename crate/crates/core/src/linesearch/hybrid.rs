use super::brent::BrentState;
use super::step::StepState;
use crate::problems::EvaluationRecorder;
use crate::{Error, Result};

/// Number of equal subintervals probed before each Brent round.
pub const PARTITIONS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Evaluating the interval ends and the partition midpoints.
    Probing,
    Brent,
    /// Permanent global phase.
    Step,
    /// Nothing left to split at floating-point resolution.
    Exhausted,
}

/// Univariate Brent-STEP solver driven one evaluation at a time.
///
/// Brent rounds run on the subinterval whose midpoint is best. A round that
/// converges while improving the best known value by more than `epsilon`
/// is followed by another round; the first round that does not improve hands
/// over to STEP for good. STEP inherits every point evaluated so far.
#[derive(Debug, Clone)]
pub struct BrentStep {
    tol: f64,
    epsilon: f64,
    known: StepState,
    phase: Phase,
    brent: Option<BrentState>,
    round_start_best: f64,
    pending: Option<f64>,
}

impl BrentStep {
    pub fn new(lo: f64, hi: f64, tol: f64, epsilon: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        Ok(Self {
            tol,
            epsilon,
            known: StepState::new(lo, hi, epsilon)?,
            phase: Phase::Probing,
            brent: None,
            round_start_best: f64::INFINITY,
            pending: None,
        })
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn step_active(&self) -> bool {
        matches!(self.phase, Phase::Step | Phase::Exhausted)
    }

    pub fn best(&self) -> Option<(f64, f64)> {
        self.known.best()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        self.known.points()
    }

    fn probe_points(&self) -> impl Iterator<Item = f64> + '_ {
        let (lo, hi) = self.known.interval();
        let width = (hi - lo) / PARTITIONS as f64;
        [lo, hi]
            .into_iter()
            .chain((0..PARTITIONS).map(move |k| lo + (k as f64 + 0.5) * width))
    }

    fn start_round(&mut self) -> Result<()> {
        let (lo, hi) = self.known.interval();
        let width = (hi - lo) / PARTITIONS as f64;
        let mut best_k = 0;
        let mut best_mid = f64::INFINITY;
        for k in 0..PARTITIONS {
            let mid = lo + (k as f64 + 0.5) * width;
            let f = self.known.lookup(mid).unwrap_or(f64::INFINITY);
            if f < best_mid {
                best_mid = f;
                best_k = k;
            }
        }
        let a = lo + best_k as f64 * width;
        let b = if best_k + 1 == PARTITIONS {
            hi
        } else {
            lo + (best_k + 1) as f64 * width
        };
        let (x0, f0) = self
            .known
            .points()
            .iter()
            .filter(|p| a <= p.0 && p.0 <= b)
            .copied()
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("partition midpoint evaluated");
        self.round_start_best = self.known.best().map_or(f64::INFINITY, |p| p.1);
        self.brent = Some(BrentState::new(a, b, self.tol, x0, f0)?);
        self.phase = Phase::Brent;
        Ok(())
    }

    /// Next point to evaluate; `None` once nothing remains to be split.
    /// Every proposal must be answered with [`BrentStep::tell`].
    pub fn ask(&mut self) -> Option<f64> {
        if let Some(x) = self.pending {
            return Some(x);
        }
        // Each pass of this loop either returns, feeds a cached value to Brent,
        // or changes phase; phases only move forward, and Brent converges.
        loop {
            match self.phase {
                Phase::Probing => {
                    let missing = self
                        .probe_points()
                        .find(|&x| self.known.lookup(x).is_none());
                    if let Some(x) = missing {
                        self.pending = Some(x);
                        return Some(x);
                    }
                    self.start_round().expect("partition bounds are valid");
                }
                Phase::Brent => {
                    let brent = self.brent.as_mut().expect("Brent phase has a state");
                    match brent.propose() {
                        Some(u) => match self.known.lookup(u) {
                            Some(fu) => brent.tell(u, fu),
                            None => {
                                self.pending = Some(u);
                                return Some(u);
                            }
                        },
                        None => {
                            let best = self.known.best().map_or(f64::INFINITY, |p| p.1);
                            if self.round_start_best - best > self.epsilon {
                                self.start_round().expect("partition bounds are valid");
                            } else {
                                self.brent = None;
                                self.phase = Phase::Step;
                            }
                        }
                    }
                }
                Phase::Step => match self.known.propose() {
                    Some(x) => {
                        self.pending = Some(x);
                        return Some(x);
                    }
                    None => self.phase = Phase::Exhausted,
                },
                Phase::Exhausted => return None,
            }
        }
    }

    /// Records a value without it having been asked for, e.g. the incumbent
    /// of an enclosing search.
    pub fn seed(&mut self, x: f64, fx: f64) {
        self.known.insert(x, fx);
    }

    pub fn tell(&mut self, x: f64, fx: f64) {
        debug_assert_eq!(self.pending, Some(x));
        self.pending = None;
        self.known.insert(x, fx);
        if let (Phase::Brent, Some(brent)) = (self.phase, self.brent.as_mut()) {
            brent.tell(x, fx);
        }
    }

    /// Adds `delta` to every value held by the solver.
    pub fn shift(&mut self, delta: f64) {
        self.known.shift(delta);
        if let Some(brent) = self.brent.as_mut() {
            brent.shift(delta);
        }
        self.round_start_best += delta;
    }
}

/// Outcome of [`brent_step_minimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrentStepResult {
    pub x: f64,
    pub fx: f64,
    /// Evaluation count at which STEP took over, if it did.
    pub step_activated_at: Option<u64>,
    /// Evaluation count at which the returned point was found.
    pub best_found_at: u64,
}

/// Brent-STEP on `[a, b]` until `recorder` reaches `budget` or nothing is
/// left to split.
pub fn brent_step_minimize<F: FnMut(f64) -> f64>(
    mut f: F,
    interval: (f64, f64),
    tol: f64,
    epsilon: f64,
    recorder: &mut EvaluationRecorder,
    budget: u64,
) -> Result<BrentStepResult> {
    let (a, b) = interval;
    let mut solver = BrentStep::new(a, b, tol, epsilon)?;
    if recorder.exhausted(budget) {
        return Err(Error::invalid("no evaluation budget left"));
    }
    let mut step_activated_at = None;
    let mut best = (f64::NAN, f64::INFINITY);
    let mut best_found_at = 0;
    while !recorder.exhausted(budget) {
        let Some(x) = solver.ask() else { break };
        if step_activated_at.is_none() && solver.step_active() {
            step_activated_at = Some(recorder.eval_count());
        }
        let fx = f(x);
        recorder.observe(&[x], fx);
        solver.tell(x, fx);
        if fx < best.1 {
            best = (x, fx);
            best_found_at = recorder.eval_count();
        }
    }
    Ok(BrentStepResult {
        x: best.0,
        fx: best.1,
        step_activated_at,
        best_found_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rastrigin(x: f64) -> f64 {
        x * x + 10.0 * (1.0 - (2.0 * std::f64::consts::PI * x).cos())
    }

    #[test]
    fn unimodal_is_solved_before_step() {
        let f = |x: f64| (x - 1.5).powi(2);
        let mut solver = BrentStep::new(0.0, 3.0, 1e-9, 1e-10).unwrap();
        let mut solved_in = None;
        for _ in 0..200 {
            let Some(x) = solver.ask() else { break };
            solver.tell(x, f(x));
            if (x - 1.5).abs() <= 1e-7 && solved_in.is_none() {
                solved_in = Some(solver.phase());
            }
        }
        assert!(matches!(solved_in, Some(Phase::Probing | Phase::Brent)));
        let mut rec = EvaluationRecorder::untargeted();
        let r = brent_step_minimize(f, (0.0, 3.0), 1e-9, 1e-10, &mut rec, 200).unwrap();
        assert!((r.x - 1.5).abs() <= 1e-7);
        assert!(r.step_activated_at.is_none_or(|s| r.best_found_at <= s));
    }

    #[test]
    fn rastrigin_switches_to_step() {
        let mut rec = EvaluationRecorder::untargeted();
        let r = brent_step_minimize(rastrigin, (-5.0, 5.0), 1e-9, 1e-10, &mut rec, 600).unwrap();
        assert!(r.step_activated_at.is_some());
        assert!(r.fx < 1.0);
        assert_eq!(rec.eval_count(), 600);
    }

    #[test]
    fn off_center_rastrigin_finds_global_basin() {
        let mut rec = EvaluationRecorder::untargeted();
        let r = brent_step_minimize(
            |x| rastrigin(x - 3.3),
            (-5.0, 5.0),
            1e-9,
            1e-10,
            &mut rec,
            600,
        )
        .unwrap();
        assert!(r.fx < 1.0, "{r:?}");
    }

    #[test]
    fn budget_two_returns_better_endpoint() {
        let mut rec = EvaluationRecorder::untargeted();
        let r = brent_step_minimize(|x| (x - 2.0).powi(2), (-1.0, 3.0), 1e-9, 1e-10, &mut rec, 2)
            .unwrap();
        assert_eq!((r.x, r.fx), (3.0, 1.0));
    }

    #[test]
    fn seeded_points_are_not_reevaluated() {
        let mut solver = BrentStep::new(-1.0, 1.0, 1e-9, 1e-10).unwrap();
        solver.seed(-1.0, 1.0);
        assert_eq!(solver.ask(), Some(1.0));
    }

    #[test]
    fn shift_moves_all_values() {
        let f = |x: f64| x * x;
        let mut solver = BrentStep::new(-1.0, 1.0, 1e-9, 1e-10).unwrap();
        for _ in 0..10 {
            let x = solver.ask().unwrap();
            solver.tell(x, f(x));
        }
        let before: Vec<(f64, f64)> = solver.points().to_vec();
        solver.shift(-3.0);
        for (p, q) in before.iter().zip(solver.points()) {
            assert_eq!(p.0, q.0);
            assert_eq!(p.1 - 3.0, q.1);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(BrentStep::new(1.0, 1.0, 1e-9, 1e-10).is_err());
        assert!(BrentStep::new(0.0, 1.0, 0.0, 1e-10).is_err());
    }
}
