use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rng::{combine, InstanceRng};
use super::transforms::{lambda_alpha, position_fraction, t_asy, t_osz, t_osz_scalar};
use super::Objective;
use crate::{Error, Result};

const LOWER: f64 = -5.0;
const UPPER: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunctionId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F8,
    F10,
}

impl FunctionId {
    pub const ALL: [FunctionId; 8] = [
        FunctionId::F1,
        FunctionId::F2,
        FunctionId::F3,
        FunctionId::F4,
        FunctionId::F5,
        FunctionId::F6,
        FunctionId::F8,
        FunctionId::F10,
    ];

    pub fn number(self) -> u32 {
        match self {
            FunctionId::F1 => 1,
            FunctionId::F2 => 2,
            FunctionId::F3 => 3,
            FunctionId::F4 => 4,
            FunctionId::F5 => 5,
            FunctionId::F6 => 6,
            FunctionId::F8 => 8,
            FunctionId::F10 => 10,
        }
    }

    pub fn from_number(n: u32) -> Result<Self> {
        FunctionId::ALL
            .into_iter()
            .find(|f| f.number() == n)
            .ok_or_else(|| Error::invalid(format!("unknown function id f{n}")))
    }

    pub fn description(self) -> &'static str {
        match self {
            FunctionId::F1 => "sphere",
            FunctionId::F2 => "separable ellipsoid",
            FunctionId::F3 => "separable Rastrigin",
            FunctionId::F4 => "Bueche-Rastrigin",
            FunctionId::F5 => "linear slope",
            FunctionId::F6 => "attractive sector",
            FunctionId::F8 => "Rosenbrock",
            FunctionId::F10 => "rotated ellipsoid",
        }
    }

    pub fn is_separable(self) -> bool {
        self.number() <= 5
    }

    fn is_rotated(self) -> bool {
        matches!(self, FunctionId::F6 | FunctionId::F10)
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.number())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches(['f', 'F']);
        let n: u32 = digits
            .parse()
            .map_err(|_| Error::invalid(format!("unknown function id `{s}`")))?;
        FunctionId::from_number(n)
    }
}

/// Dense orthogonal matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    dim: usize,
    data: Vec<f64>,
}

impl Rotation {
    /// Modified Gram-Schmidt on Gaussian columns, run twice for orthogonality
    /// close to machine precision.
    fn random(dim: usize, rng: &mut InstanceRng) -> Self {
        let mut cols: Vec<Vec<f64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.gaussian()).collect())
            .collect();
        for j in 0..dim {
            for _pass in 0..2 {
                for k in 0..j {
                    let (done, rest) = cols.split_at_mut(j);
                    let dot: f64 = done[k].iter().zip(&rest[0]).map(|(a, b)| a * b).sum();
                    for (c, q) in rest[0].iter_mut().zip(&done[k]) {
                        *c -= dot * q;
                    }
                }
            }
            let norm = cols[j].iter().map(|v| v * v).sum::<f64>().sqrt();
            cols[j].iter_mut().for_each(|v| *v /= norm);
        }
        let mut data = vec![0.0; dim * dim];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                data[i * dim + j] = *v;
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest entry of `|R^T R - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = (0..n).map(|k| self.get(k, a) * self.get(k, b)).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - expect).abs());
            }
        }
        worst
    }
}

/// One benchmark instance. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub function_id: FunctionId,
    pub dimension: usize,
    pub instance_id: u32,
    pub lower_bounds: Vec<f64>,
    pub upper_bounds: Vec<f64>,
    pub x_opt: Vec<f64>,
    pub f_opt: f64,
    pub rotation: Option<Rotation>,
    pub asymmetry_beta: f64,
    pub conditioning: f64,
}

/// Builds the instance `instance_id` of `function_id` in `dimension` variables.
///
/// `x_opt` is uniform in `[-4, 4]^D` (f5: a vertex `±5`), `f_opt` uniform in
/// `[-1000, 1000]` rounded to two decimals. Identical arguments give
/// bit-identical problems.
pub fn make_problem(
    function_id: FunctionId,
    dimension: usize,
    instance_id: u32,
) -> Result<Problem> {
    if dimension == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if instance_id == 0 {
        return Err(Error::invalid("instance id must be at least 1"));
    }
    let mut rng = InstanceRng::new(combine(&[
        u64::from(function_id.number()),
        dimension as u64,
        u64::from(instance_id),
    ]));

    let mut x_opt: Vec<f64> = match function_id {
        FunctionId::F5 => (0..dimension)
            .map(|_| if rng.next_f64() < 0.5 { -UPPER } else { UPPER })
            .collect(),
        _ => (0..dimension).map(|_| rng.uniform(-4.0, 4.0)).collect(),
    };
    if function_id == FunctionId::F4 {
        // Odd (one-based) coordinates carry the extra positive-side penalty,
        // so their optimum sits on the non-negative side.
        for v in x_opt.iter_mut().step_by(2) {
            *v = v.abs();
        }
    }
    let f_opt = (rng.uniform(-1000.0, 1000.0) * 100.0).round() / 100.0;
    let rotation = function_id
        .is_rotated()
        .then(|| Rotation::random(dimension, &mut rng));

    let (asymmetry_beta, conditioning) = match function_id {
        FunctionId::F2 | FunctionId::F10 => (0.0, 1e6),
        FunctionId::F3 => (0.2, 10.0),
        FunctionId::F4 | FunctionId::F5 | FunctionId::F6 => (0.0, 10.0),
        FunctionId::F1 | FunctionId::F8 => (0.0, 1.0),
    };

    Ok(Problem {
        function_id,
        dimension,
        instance_id,
        lower_bounds: vec![LOWER; dimension],
        upper_bounds: vec![UPPER; dimension],
        x_opt,
        f_opt,
        rotation,
        asymmetry_beta,
        conditioning,
    })
}

fn rastrigin_terms(z: &[f64]) -> f64 {
    let d = z.len() as f64;
    let cos_sum: f64 = z.iter().map(|v| (TAU * v).cos()).sum();
    let sq: f64 = z.iter().map(|v| v * v).sum();
    10.0 * (d - cos_sum) + sq
}

impl Problem {
    fn shifted(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.x_opt).map(|(a, b)| a - b).collect()
    }

    fn rotate(&self, v: &[f64]) -> Vec<f64> {
        match &self.rotation {
            Some(r) => r.apply(v),
            None => v.to_vec(),
        }
    }

    fn ellipsoid(&self, z: &[f64]) -> f64 {
        let d = z.len();
        z.iter()
            .enumerate()
            .map(|(i, v)| self.conditioning.powf(position_fraction(i, d)) * v * v)
            .sum()
    }

    fn raw(&self, x: &[f64]) -> f64 {
        let d = self.dimension;
        match self.function_id {
            FunctionId::F1 => self.shifted(x).iter().map(|v| v * v).sum(),
            FunctionId::F2 => self.ellipsoid(&t_osz(&self.shifted(x))),
            FunctionId::F3 => {
                let z = lambda_alpha(
                    &t_asy(&t_osz(&self.shifted(x)), self.asymmetry_beta),
                    self.conditioning,
                );
                rastrigin_terms(&z)
            }
            FunctionId::F4 => {
                let z: Vec<f64> = t_osz(&self.shifted(x))
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let mut s = self.conditioning.powf(0.5 * position_fraction(i, d));
                        if v > 0.0 && i % 2 == 0 {
                            s *= 10.0;
                        }
                        s * v
                    })
                    .collect();
                let penalty: f64 = x.iter().map(|v| (v.abs() - UPPER).max(0.0).powi(2)).sum();
                rastrigin_terms(&z) + 100.0 * penalty
            }
            FunctionId::F5 => x
                .iter()
                .zip(&self.x_opt)
                .enumerate()
                .map(|(i, (&xi, &oi))| {
                    let s = oi.signum() * self.conditioning.powf(position_fraction(i, d));
                    let z = if oi * xi < UPPER * UPPER { xi } else { oi };
                    UPPER * s.abs() - s * z
                })
                .sum(),
            FunctionId::F6 => {
                let z = self.rotate(&lambda_alpha(
                    &self.rotate(&self.shifted(x)),
                    self.conditioning,
                ));
                let sum: f64 = z
                    .iter()
                    .zip(&self.x_opt)
                    .map(|(zi, oi)| {
                        let s = if zi * oi > 0.0 { 100.0 } else { 1.0 };
                        (s * zi) * (s * zi)
                    })
                    .sum();
                t_osz_scalar(sum).powf(0.9)
            }
            FunctionId::F8 => {
                let scale = 1f64.max((d as f64).sqrt() / 8.0);
                let z: Vec<f64> = self.shifted(x).iter().map(|v| scale * v + 1.0).collect();
                z.windows(2)
                    .map(|w| 100.0 * (w[0] * w[0] - w[1]).powi(2) + (w[0] - 1.0).powi(2))
                    .sum()
            }
            FunctionId::F10 => self.ellipsoid(&t_osz(&self.rotate(&self.shifted(x)))),
        }
    }

    /// The optimal point. For f5 this is the bound vertex matching the signs
    /// of `x_opt`, which coincides with `x_opt` itself.
    pub fn optimum(&self) -> Vec<f64> {
        self.x_opt.clone()
    }
}

impl Objective for Problem {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn lower_bounds(&self) -> &[f64] {
        &self.lower_bounds
    }

    fn upper_bounds(&self) -> &[f64] {
        &self.upper_bounds
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.raw(x) + self.f_opt
    }
}
