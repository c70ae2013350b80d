/// Counts objective calls and remembers when the best value improved and
/// when each target precision was first reached.
///
/// Targets are expressed as precisions `delta_f`; a target is hit once
/// `best_f - f_opt <= delta_f`. A recorder built with [`EvaluationRecorder::untargeted`]
/// never reports a hit.
#[derive(Debug, Clone)]
pub struct EvaluationRecorder {
    eval_count: u64,
    best_f: f64,
    f_opt: f64,
    events: Vec<(u64, f64)>,
    // Sorted by decreasing precision.
    targets: Vec<f64>,
    hits: Vec<Option<u64>>,
    trace: Option<Vec<Vec<f64>>>,
}

impl EvaluationRecorder {
    /// `precisions` need not be sorted; duplicates are dropped.
    pub fn new(f_opt: f64, precisions: &[f64]) -> Self {
        let mut targets: Vec<f64> = precisions.to_vec();
        targets.sort_by(|a, b| b.total_cmp(a));
        targets.dedup();
        let hits = vec![None; targets.len()];
        Self {
            eval_count: 0,
            best_f: f64::INFINITY,
            f_opt,
            events: Vec::new(),
            targets,
            hits,
            trace: None,
        }
    }

    pub fn untargeted() -> Self {
        Self::new(0.0, &[])
    }

    /// Additionally keep a copy of every evaluated point.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    /// Registers one objective call at `x` returning `f`.
    pub fn observe(&mut self, x: &[f64], f: f64) {
        self.eval_count += 1;
        if let Some(trace) = self.trace.as_mut() {
            trace.push(x.to_vec());
        }
        if f < self.best_f {
            self.best_f = f;
            self.events.push((self.eval_count, f));
            let delta = f - self.f_opt;
            for (target, hit) in self.targets.iter().zip(self.hits.iter_mut()) {
                if hit.is_none() && delta <= *target {
                    *hit = Some(self.eval_count);
                }
            }
        }
    }

    pub fn eval_count(&self) -> u64 {
        self.eval_count
    }

    pub fn best_f(&self) -> f64 {
        self.best_f
    }

    pub fn f_opt(&self) -> f64 {
        self.f_opt
    }

    /// Improvement events as `(eval_index, best_f)`.
    pub fn events(&self) -> &[(u64, f64)] {
        &self.events
    }

    /// `(precision, first-hit eval index)` for every target reached so far.
    pub fn targets_hit(&self) -> Vec<(f64, u64)> {
        self.targets
            .iter()
            .zip(&self.hits)
            .filter_map(|(&t, h)| h.map(|idx| (t, idx)))
            .collect()
    }

    pub fn target_precisions(&self) -> &[f64] {
        &self.targets
    }

    /// True once the smallest registered target has been reached.
    pub fn solved(&self) -> bool {
        matches!(self.hits.last(), Some(Some(_)))
    }

    /// Whether another evaluation is allowed under `budget`.
    pub fn exhausted(&self, budget: u64) -> bool {
        self.eval_count >= budget || self.solved()
    }

    pub fn trace(&self) -> Option<&[Vec<f64>]> {
        self.trace.as_deref()
    }
}
