use std::path::PathBuf;

use crate::optimizers::{AlgorithmKind, AlgorithmVariant, RestartPolicy};
use crate::problems::FunctionId;
use crate::{Error, Result};

use super::TargetSet;

/// Evaluations per dimension granted to each optimizer family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetMultipliers {
    pub hooke_jeeves: u64,
    pub mts_ls1: u64,
    pub bsrr: u64,
}

impl Default for BudgetMultipliers {
    fn default() -> Self {
        Self {
            hooke_jeeves: AlgorithmKind::HookeJeeves.default_budget_multiplier(),
            mts_ls1: AlgorithmKind::MtsLs1.default_budget_multiplier(),
            bsrr: AlgorithmKind::Bsrr.default_budget_multiplier(),
        }
    }
}

impl BudgetMultipliers {
    pub fn for_kind(&self, kind: AlgorithmKind) -> u64 {
        match kind {
            AlgorithmKind::HookeJeeves => self.hooke_jeeves,
            AlgorithmKind::MtsLs1 => self.mts_ls1,
            AlgorithmKind::Bsrr => self.bsrr,
        }
    }
}

/// Everything needed to reproduce a benchmark suite.
///
/// The text form is one `key = value` per line, lists comma-separated,
/// `#` starting a comment. Keys: `algo`, `func`, `dim`, `instances`
/// (`1-15` or a list), `seed`, `out`, `budget_hj`, `budget_mts`,
/// `budget_bsrr`, `restarts` (`on`/`off`), `targets`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub algorithms: Vec<AlgorithmVariant>,
    pub functions: Vec<FunctionId>,
    pub dimensions: Vec<usize>,
    pub instances: Vec<u32>,
    pub budgets: BudgetMultipliers,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub restart: RestartPolicy,
    pub targets: TargetSet,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            algorithms: AlgorithmVariant::builtins(),
            functions: FunctionId::ALL.to_vec(),
            dimensions: vec![20, 40, 80, 160],
            instances: (1..=15).collect(),
            budgets: BudgetMultipliers::default(),
            seed: 1,
            output_dir: PathBuf::from("results"),
            restart: RestartPolicy::default(),
            targets: TargetSet::default(),
        }
    }
}

fn config_err(key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.to_string(),
        message: message.into(),
    }
}

fn parse_list<T>(key: &str, value: &str, item: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| item(s).ok_or_else(|| config_err(key, format!("cannot parse `{s}`"))))
        .collect()
}

fn parse_multiplier(key: &str, value: &str) -> Result<u64> {
    let m: u64 = value
        .trim()
        .parse()
        .map_err(|_| config_err(key, format!("cannot parse `{value}`")))?;
    if m == 0 {
        return Err(config_err(key, "budget multiplier must be at least 1"));
    }
    Ok(m)
}

impl SuiteConfig {
    pub fn from_text(text: &str) -> Result<Self> {
        let mut config = Self::default();
        config.apply_text(text)?;
        Ok(config)
    }

    /// Applies every `key = value` line of `text` on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config_err(line, format!("line {} is not `key = value`", n + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "algo" => self.algorithms = parse_list(key, value, |s| s.parse().ok())?,
            "func" => self.functions = parse_list(key, value, |s| s.parse().ok())?,
            "dim" => self.dimensions = parse_list(key, value, |s| s.parse().ok())?,
            "instances" => {
                self.instances = match value.split_once('-') {
                    Some((a, b)) => {
                        let (a, b): (u32, u32) = a
                            .trim()
                            .parse()
                            .ok()
                            .zip(b.trim().parse().ok())
                            .ok_or_else(|| {
                            config_err(key, format!("cannot parse `{value}`"))
                        })?;
                        (a..=b).collect()
                    }
                    None => parse_list(key, value, |s| s.parse().ok())?,
                }
            }
            "seed" => {
                self.seed = value
                    .parse()
                    .map_err(|_| config_err(key, format!("cannot parse `{value}`")))?
            }
            "out" => self.output_dir = PathBuf::from(value),
            "budget_hj" => self.budgets.hooke_jeeves = parse_multiplier(key, value)?,
            "budget_mts" => self.budgets.mts_ls1 = parse_multiplier(key, value)?,
            "budget_bsrr" => self.budgets.bsrr = parse_multiplier(key, value)?,
            "restarts" => {
                self.restart.enabled = match value {
                    "on" | "true" | "yes" => true,
                    "off" | "false" | "no" => false,
                    _ => return Err(config_err(key, format!("expected on/off, got `{value}`"))),
                }
            }
            "targets" => {
                let precisions = parse_list(key, value, |s| s.parse().ok())?;
                self.targets =
                    TargetSet::new(precisions).map_err(|e| config_err(key, e.to_string()))?;
            }
            _ => return Err(config_err(key, "unknown key")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(config_err("algo", "no algorithms given"));
        }
        if self.functions.is_empty() {
            return Err(config_err("func", "no functions given"));
        }
        if self.dimensions.is_empty() {
            return Err(config_err("dim", "no dimensions given"));
        }
        if self.dimensions.contains(&0) {
            return Err(config_err("dim", "dimensions must be at least 1"));
        }
        if self.instances.is_empty() {
            return Err(config_err("instances", "no instances given"));
        }
        if self.instances.contains(&0) {
            return Err(config_err("instances", "instance ids start at 1"));
        }
        for (key, m) in [
            ("budget_hj", self.budgets.hooke_jeeves),
            ("budget_mts", self.budgets.mts_ls1),
            ("budget_bsrr", self.budgets.bsrr),
        ] {
            if m == 0 {
                return Err(config_err(key, "budget multiplier must be at least 1"));
            }
        }
        Ok(())
    }

    pub fn budget(&self, kind: AlgorithmKind, dim: usize) -> u64 {
        self.budgets.for_kind(kind) * dim as u64
    }
}
