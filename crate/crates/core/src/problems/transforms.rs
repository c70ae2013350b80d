//! Coordinate transformations shared by the test functions.

/// `(i - 1) / (D - 1)` for zero-based `i`; defined as 0 when `D = 1`.
#[inline]
pub(crate) fn position_fraction(i: usize, dim: usize) -> f64 {
    if dim <= 1 {
        0.0
    } else {
        i as f64 / (dim - 1) as f64
    }
}

#[inline]
pub fn t_osz_scalar(v: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    let hat = v.abs().ln();
    let (c1, c2) = if v > 0.0 { (10.0, 7.9) } else { (5.5, 3.1) };
    v.signum() * (hat + 0.049 * ((c1 * hat).sin() + (c2 * hat).sin())).exp()
}

/// Oscillation transform, applied componentwise.
pub fn t_osz(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| t_osz_scalar(x)).collect()
}

/// Asymmetry transform: positive components are raised to
/// `1 + beta * frac_i * sqrt(v_i)`, the rest pass through.
pub fn t_asy(v: &[f64], beta: f64) -> Vec<f64> {
    let dim = v.len();
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            if x > 0.0 {
                x.powf(1.0 + beta * position_fraction(i, dim) * x.sqrt())
            } else {
                x
            }
        })
        .collect()
}

/// Diagonal scaling by `alpha^(0.5 * frac_i)`.
pub fn lambda_alpha(v: &[f64], alpha: f64) -> Vec<f64> {
    let dim = v.len();
    v.iter()
        .enumerate()
        .map(|(i, &x)| x * alpha.powf(0.5 * position_fraction(i, dim)))
        .collect()
}
