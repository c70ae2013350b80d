use crate::problems::EvaluationRecorder;
use crate::{Error, Result};

/// "Select the easiest point" global line search.
///
/// Holds every evaluated point of `[lo, hi]` in increasing order. The
/// difficulty of the interval between two neighbours is the curvature of the
/// flattest parabola through both endpoint values that dips to
/// `f_best - epsilon` inside the interval; the easiest interval is bisected
/// next.
#[derive(Debug, Clone, PartialEq)]
pub struct StepState {
    lo: f64,
    hi: f64,
    epsilon: f64,
    points: Vec<(f64, f64)>,
    best: Option<usize>,
}

/// Curvature of the parabola through `(0, fa)` and `(width, fb)` whose minimum
/// equals `target`; `target` must be below both values.
pub fn interval_difficulty(width: f64, fa: f64, fb: f64, target: f64) -> f64 {
    let s = (fa - target).sqrt() + (fb - target).sqrt();
    s * s / (width * width)
}

impl StepState {
    pub fn new(lo: f64, hi: f64, epsilon: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::invalid(format!("invalid interval [{lo}, {hi}]")));
        }
        if !(epsilon > 0.0) {
            return Err(Error::invalid("epsilon must be positive"));
        }
        Ok(Self {
            lo,
            hi,
            epsilon,
            points: Vec::new(),
            best: None,
        })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn best(&self) -> Option<(f64, f64)> {
        self.best.map(|i| self.points[i])
    }

    pub fn lookup(&self, x: f64) -> Option<f64> {
        self.points
            .binary_search_by(|p| p.0.total_cmp(&x))
            .ok()
            .map(|i| self.points[i].1)
    }

    /// Records `f(x)`. Points outside `[lo, hi]` and repeated positions are
    /// ignored.
    pub fn insert(&mut self, x: f64, f: f64) {
        if !(self.lo..=self.hi).contains(&x) {
            return;
        }
        match self.points.binary_search_by(|p| p.0.total_cmp(&x)) {
            Ok(_) => {}
            Err(pos) => {
                self.points.insert(pos, (x, f));
                self.best = match self.best {
                    Some(b) => {
                        let b = if b >= pos { b + 1 } else { b };
                        if f < self.points[b].1 {
                            Some(pos)
                        } else {
                            Some(b)
                        }
                    }
                    None => Some(pos),
                };
            }
        }
    }

    /// Adds `delta` to every stored value.
    pub fn shift(&mut self, delta: f64) {
        for p in &mut self.points {
            p.1 += delta;
        }
    }

    fn has_endpoints(&self) -> bool {
        matches!(
            (self.points.first(), self.points.last()),
            (Some(first), Some(last)) if first.0 == self.lo && last.0 == self.hi
        )
    }

    /// Difficulty of the interval between `points[k]` and `points[k + 1]`,
    /// infinite once the interval can no longer be split in floating point.
    pub fn difficulty(&self, k: usize) -> f64 {
        let (xa, fa) = self.points[k];
        let (xb, fb) = self.points[k + 1];
        let mid = 0.5 * (xa + xb);
        if !(xa < mid && mid < xb) {
            return f64::INFINITY;
        }
        let target = self.best().map_or(f64::NAN, |b| b.1) - self.epsilon;
        interval_difficulty(xb - xa, fa, fb, target)
    }

    /// Index of the easiest interval; ties go to the leftmost one.
    pub fn select(&self) -> Option<usize> {
        let mut choice: Option<(usize, f64)> = None;
        for k in 0..self.points.len().saturating_sub(1) {
            let d = self.difficulty(k);
            if d.is_finite() && choice.is_none_or(|(_, best)| d < best) {
                choice = Some((k, d));
            }
        }
        choice.map(|(k, _)| k)
    }

    /// Next point: a missing endpoint, else the midpoint of the easiest
    /// interval. `None` when nothing is left to split.
    pub fn propose(&self) -> Option<f64> {
        if self.lookup(self.lo).is_none() {
            return Some(self.lo);
        }
        if self.lookup(self.hi).is_none() {
            return Some(self.hi);
        }
        debug_assert!(self.has_endpoints());
        self.select()
            .map(|k| 0.5 * (self.points[k].0 + self.points[k + 1].0))
    }
}

/// Runs STEP on `[a, b]` until `recorder` reaches `budget`.
pub fn step_minimize<F: FnMut(f64) -> f64>(
    mut f: F,
    interval: (f64, f64),
    epsilon: f64,
    recorder: &mut EvaluationRecorder,
    budget: u64,
) -> Result<(f64, f64)> {
    let (a, b) = interval;
    let mut state = StepState::new(a, b, epsilon)?;
    if recorder.exhausted(budget) {
        return Err(Error::invalid("no evaluation budget left"));
    }
    while !recorder.exhausted(budget) {
        let Some(x) = state.propose() else { break };
        let fx = f(x);
        recorder.observe(&[x], fx);
        state.insert(x, fx);
    }
    Ok(state.best().expect("at least one point evaluated"))
}
