use std::fmt;
use std::str::FromStr;

use super::{validate_step_params, DEFAULT_C, DEFAULT_SIGMA_INIT};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmKind {
    HookeJeeves,
    MtsLs1,
    Bsrr,
}

impl AlgorithmKind {
    pub fn label(self) -> &'static str {
        match self {
            AlgorithmKind::HookeJeeves => "HJ",
            AlgorithmKind::MtsLs1 => "MTS-LS1",
            AlgorithmKind::Bsrr => "BSrr",
        }
    }

    /// Evaluation budget per dimension used by default.
    pub fn default_budget_multiplier(self) -> u64 {
        match self {
            AlgorithmKind::HookeJeeves | AlgorithmKind::MtsLs1 => 10_000,
            AlgorithmKind::Bsrr => 1_000,
        }
    }
}

/// An optimizer with its step-size parameters. BSrr ignores `c` and
/// `sigma_init`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmVariant {
    pub kind: AlgorithmKind,
    pub c: f64,
    pub sigma_init: f64,
}

impl AlgorithmVariant {
    pub fn new(kind: AlgorithmKind, c: f64, sigma_init: f64) -> Result<Self> {
        if kind != AlgorithmKind::Bsrr {
            validate_step_params(sigma_init, c)?;
        }
        Ok(Self {
            kind,
            c,
            sigma_init,
        })
    }

    pub fn hooke_jeeves(c: f64) -> Self {
        Self {
            kind: AlgorithmKind::HookeJeeves,
            c,
            sigma_init: DEFAULT_SIGMA_INIT,
        }
    }

    pub fn mts_ls1(c: f64) -> Self {
        Self {
            kind: AlgorithmKind::MtsLs1,
            c,
            sigma_init: DEFAULT_SIGMA_INIT,
        }
    }

    pub fn bsrr() -> Self {
        Self {
            kind: AlgorithmKind::Bsrr,
            c: DEFAULT_C,
            sigma_init: DEFAULT_SIGMA_INIT,
        }
    }

    /// HJ-5, HJ-9, MTS-LS1-5, MTS-LS1-9 and BSrr.
    pub fn builtins() -> Vec<Self> {
        vec![
            Self::hooke_jeeves(0.5),
            Self::hooke_jeeves(0.9),
            Self::mts_ls1(0.5),
            Self::mts_ls1(0.9),
            Self::bsrr(),
        ]
    }

    /// `HJ-5` style for `c` in tenths with the default `sigma_init`,
    /// otherwise `HJ-c0.75-s0.3`.
    pub fn name(&self) -> String {
        if self.kind == AlgorithmKind::Bsrr {
            return "BSrr".to_string();
        }
        let tenths = self.c * 10.0;
        if self.sigma_init == DEFAULT_SIGMA_INIT
            && tenths.fract() == 0.0
            && (1.0..=9.0).contains(&tenths)
            && tenths / 10.0 == self.c
        {
            format!("{}-{}", self.kind.label(), tenths as u32)
        } else {
            format!("{}-c{}-s{}", self.kind.label(), self.c, self.sigma_init)
        }
    }
}

impl fmt::Display for AlgorithmVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for AlgorithmVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::invalid(format!("unknown algorithm `{s}`"));
        if s.eq_ignore_ascii_case("bsrr") {
            return Ok(Self::bsrr());
        }
        let upper = s.to_ascii_uppercase();
        let (kind, rest) = if let Some(rest) = upper.strip_prefix("MTS-LS1-") {
            (AlgorithmKind::MtsLs1, rest)
        } else if let Some(rest) = upper.strip_prefix("HJ-") {
            (AlgorithmKind::HookeJeeves, rest)
        } else {
            return Err(unknown());
        };
        if rest.len() == 1 && rest.as_bytes()[0].is_ascii_digit() && rest != "0" {
            let c = f64::from(rest.as_bytes()[0] - b'0') / 10.0;
            return Self::new(kind, c, DEFAULT_SIGMA_INIT);
        }
        // Long form: C<c>-S<sigma>
        let (c_part, s_part) = rest.split_once("-S").ok_or_else(unknown)?;
        let c: f64 = c_part
            .strip_prefix('C')
            .ok_or_else(unknown)?
            .parse()
            .map_err(|_| unknown())?;
        let sigma: f64 = s_part.parse().map_err(|_| unknown())?;
        Self::new(kind, c, sigma)
    }
}
