use std::collections::BTreeMap;
use std::time::Instant;

use crate::optimizers::{run_on_recorder, AlgorithmVariant, RestartPolicy};
use crate::problems::{EvaluationRecorder, Problem};
use crate::{Error, Result};

/// Measurements of one optimizer at one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingCell {
    pub dimension: usize,
    pub runs: usize,
    pub evaluations: u64,
    pub seconds: f64,
    /// Wall-clock time per evaluation in units of 1e-5 s.
    pub per_eval_1e5: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub label: String,
    pub cells: Vec<TimingCell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingReport {
    pub dimensions: Vec<usize>,
    pub rows: Vec<TimingRow>,
}

impl TimingReport {
    /// Whitespace-aligned table, one row per optimizer.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:<10}", "optimizer");
        for d in &self.dimensions {
            out += &format!(" {:>10}", format!("D={d}"));
        }
        out.push('\n');
        for row in &self.rows {
            out += &format!("{:<10}", row.label);
            for cell in &row.cells {
                out += &format!(" {:>10.3}", cell.per_eval_1e5);
            }
            out.push('\n');
        }
        out
    }
}

/// Runs each variant without restarts for exactly `2 * D` evaluations on every
/// problem, `repetitions` times, and reports the mean time per evaluation for
/// each dimension. Rows are labelled with the optimizer family.
pub fn timing_experiment(
    variants: &[AlgorithmVariant],
    problems: &[Problem],
    repetitions: usize,
) -> Result<TimingReport> {
    if problems.is_empty() || variants.is_empty() || repetitions == 0 {
        return Err(Error::invalid(
            "timing needs problems, variants and repetitions",
        ));
    }
    let mut dims: Vec<usize> = problems.iter().map(|p| p.dimension).collect();
    dims.sort_unstable();
    dims.dedup();

    let mut rows = Vec::new();
    for variant in variants {
        let mut acc: BTreeMap<usize, (usize, u64, f64)> = BTreeMap::new();
        for rep in 0..repetitions {
            for problem in problems {
                let budget = 2 * problem.dimension as u64;
                let mut recorder = EvaluationRecorder::untargeted();
                let start = Instant::now();
                run_on_recorder(
                    variant,
                    problem,
                    budget,
                    &RestartPolicy::disabled(),
                    rep as u64,
                    &mut recorder,
                )?;
                let elapsed = start.elapsed().as_secs_f64();
                if recorder.eval_count() != budget {
                    return Err(Error::invalid(format!(
                        "{} used {} evaluations instead of {budget}",
                        variant.name(),
                        recorder.eval_count()
                    )));
                }
                let e = acc.entry(problem.dimension).or_default();
                e.0 += 1;
                e.1 += budget;
                e.2 += elapsed;
            }
        }
        let cells = acc
            .into_iter()
            .map(|(dimension, (runs, evaluations, seconds))| TimingCell {
                dimension,
                runs,
                evaluations,
                seconds,
                per_eval_1e5: seconds / evaluations as f64 * 1e5,
            })
            .collect();
        rows.push(TimingRow {
            label: variant.kind.label().to_string(),
            cells,
        });
    }
    Ok(TimingReport {
        dimensions: dims,
        rows,
    })
}
