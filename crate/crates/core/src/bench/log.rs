use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::problems::{EvaluationRecorder, FunctionId, Problem};
use crate::{Error, Result};

/// Everything recorded about one optimizer run on one problem instance.
///
/// `events` holds `(eval_index, delta_f)` pairs where `delta_f = best_f - f_opt`
/// strictly decreases; `targets_hit` holds `(precision, first_eval_index)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialLog {
    pub algorithm_id: String,
    pub function_id: FunctionId,
    pub dimension: usize,
    pub instance_id: u32,
    pub seed: u64,
    pub budget: u64,
    pub events: Vec<(u64, f64)>,
    pub total_evals: u64,
    pub targets_hit: Vec<(f64, u64)>,
}

const HEADER_KEYS: [&str; 7] = [
    "algorithm",
    "function",
    "dim",
    "instance",
    "seed",
    "budget",
    "total_evals",
];

impl TrialLog {
    pub fn from_recorder(
        algorithm_id: &str,
        problem: &Problem,
        seed: u64,
        budget: u64,
        recorder: &EvaluationRecorder,
    ) -> Self {
        let mut events: Vec<(u64, f64)> = Vec::with_capacity(recorder.events().len());
        for &(idx, f) in recorder.events() {
            let delta = f - recorder.f_opt();
            if events.last().is_none_or(|&(_, last)| delta < last) {
                events.push((idx, delta));
            }
        }
        Self {
            algorithm_id: algorithm_id.to_string(),
            function_id: problem.function_id,
            dimension: problem.dimension,
            instance_id: problem.instance_id,
            seed,
            budget,
            events,
            total_evals: recorder.eval_count(),
            targets_hit: recorder.targets_hit(),
        }
    }

    /// First evaluation index at which `delta_f <= precision`.
    pub fn hit_index(&self, precision: f64) -> Option<u64> {
        self.events
            .iter()
            .find(|&&(_, d)| d <= precision)
            .map(|&(idx, _)| idx)
    }

    /// Best `delta_f` reached within the first `m` evaluations.
    pub fn best_delta_within(&self, m: u64) -> Option<f64> {
        self.events
            .iter()
            .take_while(|&&(idx, _)| idx <= m)
            .last()
            .map(|&(_, d)| d)
    }

    pub fn final_delta(&self) -> Option<f64> {
        self.events.last().map(|&(_, d)| d)
    }

    /// Canonical file name, e.g. `HJ-5_f1_d20_i1.log`.
    pub fn file_name(&self) -> String {
        format!(
            "{}_{}_d{}_i{}.log",
            self.algorithm_id, self.function_id, self.dimension, self.instance_id
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let values = [
            self.algorithm_id.clone(),
            self.function_id.to_string(),
            self.dimension.to_string(),
            self.instance_id.to_string(),
            self.seed.to_string(),
            self.budget.to_string(),
            self.total_evals.to_string(),
        ];
        for (key, value) in HEADER_KEYS.iter().zip(values) {
            let _ = writeln!(out, "# {key} = {value}");
        }
        for &(idx, d) in &self.events {
            let _ = writeln!(out, "{idx} {d:e}");
        }
        for &(p, idx) in &self.targets_hit {
            let _ = writeln!(out, "# target {p:e} {idx}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: [Option<String>; 7] = Default::default();
        let mut events = Vec::new();
        let mut targets_hit = Vec::new();
        let mut last_line = 0;

        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(t) = rest.strip_prefix("target ") {
                    let mut parts = t.split_whitespace();
                    let (Some(p), Some(i), None) = (parts.next(), parts.next(), parts.next())
                    else {
                        return Err(err("expected `# target <precision> <index>`".into()));
                    };
                    let p: f64 = p.parse().map_err(|_| err(format!("bad precision `{p}`")))?;
                    let i: u64 = i.parse().map_err(|_| err(format!("bad index `{i}`")))?;
                    targets_hit.push((p, i));
                } else {
                    let Some((key, value)) = rest.split_once('=') else {
                        return Err(err(format!("unrecognized header `{rest}`")));
                    };
                    let key = key.trim();
                    let slot = HEADER_KEYS
                        .iter()
                        .position(|k| *k == key)
                        .ok_or_else(|| err(format!("unknown header key `{key}`")))?;
                    if header[slot].is_some() {
                        return Err(err(format!("duplicate header key `{key}`")));
                    }
                    header[slot] = Some(value.trim().to_string());
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(i), Some(d), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err("expected `<index> <delta_f>`".into()));
            };
            let i: u64 = i.parse().map_err(|_| err(format!("bad index `{i}`")))?;
            let d: f64 = d.parse().map_err(|_| err(format!("bad value `{d}`")))?;
            if let Some(&(pi, pd)) = events.last() {
                if i <= pi || !(d < pd) {
                    return Err(err(
                        "events must have increasing index and decreasing value".into(),
                    ));
                }
            }
            events.push((i, d));
        }

        let end = last_line.max(1);
        let field = |slot: usize| -> Result<&str> {
            header[slot].as_deref().ok_or_else(|| Error::Parse {
                line: end,
                message: format!("missing header `{}`", HEADER_KEYS[slot]),
            })
        };
        let num = |slot: usize| -> Result<u64> {
            let v = field(slot)?;
            v.parse().map_err(|_| Error::Parse {
                line: end,
                message: format!("bad value `{v}` for `{}`", HEADER_KEYS[slot]),
            })
        };
        let function_id: FunctionId = field(1)?.parse().map_err(|_| Error::Parse {
            line: end,
            message: format!("unknown function `{}`", header[1].as_deref().unwrap_or("")),
        })?;
        let log = Self {
            algorithm_id: field(0)?.to_string(),
            function_id,
            dimension: num(2)? as usize,
            instance_id: num(3)? as u32,
            seed: num(4)?,
            budget: num(5)?,
            events,
            total_evals: num(6)?,
            targets_hit,
        };
        if log.events.last().is_some_and(|&(i, _)| i > log.total_evals) {
            return Err(Error::Parse {
                line: end,
                message: "event index exceeds total_evals".into(),
            });
        }
        Ok(log)
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }
}
