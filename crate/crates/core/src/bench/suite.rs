use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{SuiteConfig, TrialLog};
use crate::optimizers::{run_trial, AlgorithmVariant};
use crate::problems::rng::combine;
use crate::problems::{make_problem, FunctionId};
use crate::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub algorithm: String,
    pub function: FunctionId,
    pub dim: usize,
    pub instance: u32,
    pub seed: u64,
    pub budget: u64,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub master_seed: u64,
    pub targets: Vec<f64>,
    pub trials: Vec<ManifestEntry>,
}

fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3)
    })
}

/// Seed of one trial, derived from the master seed and the trial key.
pub fn trial_seed(
    master: u64,
    algorithm: &str,
    function: FunctionId,
    dim: usize,
    instance: u32,
) -> u64 {
    combine(&[
        master,
        name_hash(algorithm),
        u64::from(function.number()),
        dim as u64,
        u64::from(instance),
    ])
}

struct Job {
    variant: AlgorithmVariant,
    function: FunctionId,
    dim: usize,
    instance: u32,
}

/// Runs every trial of `config` on up to `jobs` threads (all cores when
/// `None`), writes one log per trial plus the manifest, and returns the logs
/// in (algorithm, function, dimension, instance) order.
pub fn run_suite(
    config: &SuiteConfig,
    jobs: Option<usize>,
    progress: &(dyn Fn(&TrialLog) + Sync),
) -> Result<Vec<TrialLog>> {
    config.validate()?;
    let out = config.output_dir.as_path();
    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;

    let mut plan = Vec::new();
    for variant in &config.algorithms {
        for &function in &config.functions {
            for &dim in &config.dimensions {
                for &instance in &config.instances {
                    plan.push(Job {
                        variant: *variant,
                        function,
                        dim,
                        instance,
                    });
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    let logs: Vec<TrialLog> = pool.install(|| {
        plan.par_iter()
            .map(|job| {
                let problem = make_problem(job.function, job.dim, job.instance)?;
                let name = job.variant.name();
                let seed = trial_seed(config.seed, &name, job.function, job.dim, job.instance);
                let budget = config.budget(job.variant.kind, job.dim);
                let log = run_trial(
                    &job.variant,
                    &problem,
                    budget,
                    &config.restart,
                    seed,
                    &config.targets,
                )?;
                progress(&log);
                Ok(log)
            })
            .collect::<Result<_>>()
    })?;

    let mut trials = Vec::with_capacity(logs.len());
    for log in &logs {
        let text = log.to_text();
        let file = log.file_name();
        let path = out.join(&file);
        fs::write(&path, &text).map_err(|e| Error::io(&path, e))?;
        trials.push(ManifestEntry {
            file,
            algorithm: log.algorithm_id.clone(),
            function: log.function_id,
            dim: log.dimension,
            instance: log.instance_id,
            seed: log.seed,
            budget: log.budget,
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
    }
    let manifest = Manifest {
        master_seed: config.seed,
        targets: config.targets.precisions().to_vec(),
        trials,
    };
    let path = out.join(MANIFEST_FILE);
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")
        .map_err(|e| Error::io(&path, e))?;
    Ok(logs)
}

/// Reads a suite directory back, verifying every checksum.
pub fn load_suite(dir: &Path) -> Result<(Manifest, Vec<TrialLog>)> {
    let path = dir.join(MANIFEST_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    let manifest: Manifest = serde_json::from_str(&text)?;
    let mut logs = Vec::with_capacity(manifest.trials.len());
    for entry in &manifest.trials {
        let path = dir.join(&entry.file);
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        if hex::encode(Sha256::digest(text.as_bytes())) != entry.sha256 {
            return Err(Error::invalid(format!(
                "checksum mismatch for {}",
                entry.file
            )));
        }
        logs.push(TrialLog::parse(&text)?);
    }
    Ok((manifest, logs))
}
