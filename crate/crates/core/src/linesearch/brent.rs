use crate::problems::EvaluationRecorder;
use crate::{Error, Result};

/// `(3 - sqrt(5)) / 2`
const GOLDEN: f64 = 0.381_966_011_250_105_15;
const SQRT_EPS: f64 = 1.490_116_119_384_765_6e-8;

/// Brent's derivative-free minimizer (parabolic interpolation through
/// `x, w, v` with golden-section fallback) as an ask/tell state machine.
///
/// `x` is the best point so far, `w` the second best, `v` the previous `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct BrentState {
    a: f64,
    b: f64,
    x: f64,
    w: f64,
    v: f64,
    fx: f64,
    fw: f64,
    fv: f64,
    /// Last step and the one before it.
    d: f64,
    e: f64,
    tol: f64,
    pending: Option<f64>,
}

impl BrentState {
    /// Starts on `[a, b]` from the known point `(x0, f0)`.
    pub fn new(a: f64, b: f64, tol: f64, x0: f64, f0: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::invalid(format!("invalid interval [{a}, {b}]")));
        }
        if !(tol > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        if !(a..=b).contains(&x0) {
            return Err(Error::invalid("start point outside the interval"));
        }
        Ok(Self {
            a,
            b,
            x: x0,
            w: x0,
            v: x0,
            fx: f0,
            fw: f0,
            fv: f0,
            d: 0.0,
            e: 0.0,
            tol,
            pending: None,
        })
    }

    /// The classic starting point `a + 0.382 (b - a)`.
    pub fn golden_start(a: f64, b: f64) -> f64 {
        a + GOLDEN * (b - a)
    }

    fn tolerances(&self) -> (f64, f64) {
        let tol1 = SQRT_EPS * self.x.abs() + self.tol / 3.0;
        (tol1, 2.0 * tol1)
    }

    pub fn converged(&self) -> bool {
        let (_, tol2) = self.tolerances();
        let xm = 0.5 * (self.a + self.b);
        (self.x - xm).abs() <= tol2 - 0.5 * (self.b - self.a)
    }

    /// Next point to evaluate, or `None` once converged. Each proposal must be
    /// answered with [`BrentState::tell`] before asking again.
    pub fn propose(&mut self) -> Option<f64> {
        if let Some(u) = self.pending {
            return Some(u);
        }
        if self.converged() {
            return None;
        }
        let (tol1, tol2) = self.tolerances();
        let xm = 0.5 * (self.a + self.b);
        let mut golden = true;
        if self.e.abs() > tol1 {
            let r = (self.x - self.w) * (self.fx - self.fv);
            let mut q = (self.x - self.v) * (self.fx - self.fw);
            let mut p = (self.x - self.v) * q - (self.x - self.w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = self.e;
            if p.abs() < (0.5 * q * e_prev).abs()
                && p > q * (self.a - self.x)
                && p < q * (self.b - self.x)
            {
                self.e = self.d;
                self.d = p / q;
                let u = self.x + self.d;
                if u - self.a < tol2 || self.b - u < tol2 {
                    self.d = tol1.copysign(xm - self.x);
                }
                golden = false;
            }
        }
        if golden {
            self.e = if self.x >= xm {
                self.a - self.x
            } else {
                self.b - self.x
            };
            self.d = GOLDEN * self.e;
        }
        let u = if self.d.abs() >= tol1 {
            self.x + self.d
        } else {
            self.x + tol1.copysign(self.d)
        };
        self.pending = Some(u);
        Some(u)
    }

    pub fn tell(&mut self, u: f64, fu: f64) {
        debug_assert_eq!(self.pending, Some(u));
        self.pending = None;
        if fu <= self.fx {
            if u >= self.x {
                self.a = self.x;
            } else {
                self.b = self.x;
            }
            self.v = self.w;
            self.fv = self.fw;
            self.w = self.x;
            self.fw = self.fx;
            self.x = u;
            self.fx = fu;
        } else {
            if u < self.x {
                self.a = u;
            } else {
                self.b = u;
            }
            if fu <= self.fw || self.w == self.x {
                self.v = self.w;
                self.fv = self.fw;
                self.w = u;
                self.fw = fu;
            } else if fu <= self.fv || self.v == self.x || self.v == self.w {
                self.v = u;
                self.fv = fu;
            }
        }
    }

    /// Adds `delta` to every cached value.
    pub fn shift(&mut self, delta: f64) {
        self.fx += delta;
        self.fw += delta;
        self.fv += delta;
    }

    pub fn bracket(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn best(&self) -> (f64, f64) {
        (self.x, self.fx)
    }

    /// `(x, w, v)` with values `(fx, fw, fv)`.
    pub fn points(&self) -> [(f64, f64); 3] {
        [(self.x, self.fx), (self.w, self.fw), (self.v, self.fv)]
    }
}

/// Minimizes `f` on `[a, b]` with Brent's method. Stops on convergence or
/// when `recorder` reaches `budget`.
pub fn brent_minimize<F: FnMut(f64) -> f64>(
    mut f: F,
    interval: (f64, f64),
    tol: f64,
    recorder: &mut EvaluationRecorder,
    budget: u64,
) -> Result<(f64, f64)> {
    let (a, b) = interval;
    if !(a < b) {
        return Err(Error::invalid(format!("invalid interval [{a}, {b}]")));
    }
    if recorder.exhausted(budget) {
        return Err(Error::invalid("no evaluation budget left"));
    }
    let x0 = BrentState::golden_start(a, b);
    let f0 = f(x0);
    recorder.observe(&[x0], f0);
    let mut state = BrentState::new(a, b, tol, x0, f0)?;
    while !recorder.exhausted(budget) {
        let Some(u) = state.propose() else { break };
        let fu = f(u);
        recorder.observe(&[u], fu);
        state.tell(u, fu);
    }
    Ok(state.best())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid_argmin(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        (0..=n)
            .map(|k| a + (b - a) * k as f64 / n as f64)
            .min_by(|p, q| f(*p).total_cmp(&f(*q)))
            .unwrap()
    }

    #[test]
    fn quadratic_is_solved_quickly() {
        let f = |x: f64| (x - 1.5) * (x - 1.5);
        assert!((grid_argmin(f, 0.0, 3.0, 300_000) - 1.5).abs() < 1e-5);
        let mut rec = EvaluationRecorder::untargeted();
        let (x, fx) = brent_minimize(f, (0.0, 3.0), 1e-8, &mut rec, 1_000).unwrap();
        assert!((x - 1.5).abs() < 1e-7, "x = {x}");
        assert!(fx < 1e-14);
        assert!(rec.eval_count() <= 30, "{} evaluations", rec.eval_count());
    }

    #[test]
    fn kink_is_located() {
        let f = |x: f64| (x - 0.3).abs();
        let oracle = grid_argmin(f, -1.0, 1.0, 200_000);
        assert!((oracle - 0.3).abs() < 1e-5);
        let mut rec = EvaluationRecorder::untargeted();
        let (x, _) = brent_minimize(f, (-1.0, 1.0), 1e-9, &mut rec, 1_000).unwrap();
        assert!((x - 0.3).abs() < 1e-6, "x = {x}");
    }

    #[test]
    fn empty_interval_rejected() {
        let mut rec = EvaluationRecorder::untargeted();
        assert!(brent_minimize(|x| x, (1.0, 1.0), 1e-8, &mut rec, 10).is_err());
        assert!(brent_minimize(|x| x, (2.0, 1.0), 1e-8, &mut rec, 10).is_err());
        assert_eq!(rec.eval_count(), 0);
    }

    #[test]
    fn respects_budget() {
        let mut rec = EvaluationRecorder::untargeted();
        brent_minimize(|x: f64| x.sin(), (0.0, 6.0), 1e-12, &mut rec, 5).unwrap();
        assert_eq!(rec.eval_count(), 5);
    }

    proptest! {
        #[test]
        fn bracket_invariants(
            r in -0.9f64..0.9,
            a4 in 0.0f64..2.0,
            a2 in 0.01f64..2.0,
            a3 in -1.0f64..1.0,
        ) {
            // Arbitrary smooth function with some asymmetry; not necessarily unimodal.
            let f = move |x: f64| a4 * (x - r).powi(4) + a3 * (x - r).powi(3) + a2 * (x - r).powi(2);
            let (a, b) = (-1.0, 1.0);
            let x0 = BrentState::golden_start(a, b);
            let mut st = BrentState::new(a, b, 1e-9, x0, f(x0)).unwrap();
            let mut width = b - a;
            for _ in 0..200 {
                let Some(u) = st.propose() else { break };
                prop_assert!(u > st.bracket().0 && u < st.bracket().1);
                st.tell(u, f(u));
                let (lo, hi) = st.bracket();
                prop_assert!(lo < hi);
                prop_assert!(hi - lo <= width);
                width = hi - lo;
                let [(x, fx), (w, fw), (v, fv)] = st.points();
                // w and v may fall outside the shrunken bracket once x moves
                // past them; they always remain in the original interval.
                prop_assert!(lo <= x && x <= hi);
                for p in [w, v] {
                    prop_assert!(a <= p && p <= b);
                }
                prop_assert!(fx <= fw && fx <= fv);
                if v != x && v != w {
                    prop_assert!(fw <= fv);
                }
            }
        }
    }
}
