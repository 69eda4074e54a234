//! One-dimensional numerical support: log-spaced grids, cumulative
//! antiderivatives with machine-precision local completion, and quintic
//! Hermite interpolation built from exact derivative jets at the knots.

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::quadrature::gk15;
use std::sync::Arc;

/// Geometric grid from `a` to `b` with roughly `per_decade` points per decade
/// (always includes both endpoints).
pub fn geometric_grid(a: f64, b: f64, per_decade: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > a);
    let decades = (b / a).log10();
    let n = ((decades * per_decade as f64).ceil() as usize).max(8);
    (0..=n).map(|i| a * (b / a).powf(i as f64 / n as f64)).collect()
}

/// Uniform grid including endpoints.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1);
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// F(x) = ∫_{x0}^{x} f(y) dy, precomputed at knots and completed locally by a
/// single Kronrod panel, so evaluations cost O(15) integrand calls and carry
/// no interpolation error beyond the panel residual.
pub struct Antiderivative {
    knots: Vec<f64>,
    acc: Vec<f64>,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// saturate (return the last value) beyond the built range instead of
    /// panicking; right when the integrand has decayed below resolution
    saturating: bool,
}

impl Antiderivative {
    /// Build over the given knots (strictly increasing). The integrand must be
    /// smooth within each knot interval for the local panels to be accurate;
    /// size the knots to the integrand's finest scale.
    pub fn build(knots: Vec<f64>, f: Arc<dyn Fn(f64) -> f64 + Send + Sync>) -> Self {
        assert!(knots.len() >= 2);
        let mut acc = Vec::with_capacity(knots.len());
        acc.push(0.0);
        let mut s = 0.0;
        for w in knots.windows(2) {
            // two panels per segment keeps the local completion consistent
            let (v1, _) = gk15(&*f, w[0], 0.5 * (w[0] + w[1]));
            let (v2, _) = gk15(&*f, 0.5 * (w[0] + w[1]), w[1]);
            s += v1 + v2;
            acc.push(s);
        }
        Antiderivative { knots, acc, f, saturating: false }
    }

    /// Saturate beyond the built range: F(x > end) = F(end). The caller owns
    /// sizing the range so that the discarded tail is below its tolerance.
    pub fn saturating(mut self) -> Self {
        self.saturating = true;
        self
    }

    pub fn range(&self) -> (f64, f64) {
        (self.knots[0], *self.knots.last().unwrap())
    }

    /// F(x). Below the first knot returns 0 (the integrand is taken to vanish
    /// there); above the last knot the caller is out of the built range.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.knots[0] {
            return 0.0;
        }
        let n = self.knots.len();
        if x > self.knots[n - 1] {
            assert!(
                self.saturating,
                "antiderivative queried at {x} beyond built range {}",
                self.knots[n - 1]
            );
            return self.acc[n - 1];
        }
        let i = match self.knots.binary_search_by(|k| k.total_cmp(&x)) {
            Ok(i) => return self.acc[i],
            Err(i) => i - 1,
        };
        let (v, _) = gk15(&*self.f, self.knots[i], x.min(self.knots[n - 1]));
        self.acc[i] + v
    }
}

/// Quintic Hermite segment data in the local variable u = (x - x0)/h.
#[derive(Clone, Copy, Debug)]
struct Quintic {
    c: [f64; 6],
    x0: f64,
    h: f64,
}

impl Quintic {
    fn from_jets(x0: f64, x1: f64, l: (f64, f64, f64), r: (f64, f64, f64)) -> Self {
        let h = x1 - x0;
        let (f0, d0, s0) = l;
        let (f1, d1, s1) = r;
        let (d0, s0) = (d0 * h, s0 * h * h);
        let (d1, s1) = (d1 * h, s1 * h * h);
        // two-point quintic Hermite in monomial form
        let c0 = f0;
        let c1 = d0;
        let c2 = 0.5 * s0;
        let c3 = -10.0 * f0 - 6.0 * d0 - 1.5 * s0 + 10.0 * f1 - 4.0 * d1 + 0.5 * s1;
        let c4 = 15.0 * f0 + 8.0 * d0 + 1.5 * s0 - 15.0 * f1 + 7.0 * d1 - s1;
        let c5 = -6.0 * f0 - 3.0 * d0 - 0.5 * s0 + 6.0 * f1 - 3.0 * d1 + 0.5 * s1;
        Quintic { c: [c0, c1, c2, c3, c4, c5], x0, h }
    }

    fn eval_d(&self, x: f64, k: usize) -> f64 {
        let u = (x - self.x0) / self.h;
        let mut acc = 0.0;
        for n in (k..6).rev() {
            let mut fall = 1.0;
            for j in 0..k {
                fall *= (n - j) as f64;
            }
            acc = acc * u + self.c[n] * fall;
        }
        acc / self.h.powi(k as i32)
    }
}

/// C² quintic Hermite interpolant from (value, first, second derivative)
/// triples at each knot.
pub struct HermiteSpline {
    knots: Vec<f64>,
    segs: Vec<Quintic>,
    /// value identically zero below this point (supports leading cutoffs)
    zero_below: f64,
}

impl HermiteSpline {
    pub fn new(knots: Vec<f64>, jets: Vec<(f64, f64, f64)>) -> Self {
        assert!(knots.len() == jets.len() && knots.len() >= 2);
        let segs = knots
            .windows(2)
            .zip(jets.windows(2))
            .map(|(x, j)| Quintic::from_jets(x[0], x[1], j[0], j[1]))
            .collect();
        HermiteSpline { knots, segs, zero_below: f64::INFINITY }
    }

    /// Declare that the represented function vanishes identically below `x`.
    pub fn with_zero_below(mut self, x: f64) -> Self {
        self.zero_below = x;
        self
    }

    pub fn range(&self) -> (f64, f64) {
        (self.knots[0], *self.knots.last().unwrap())
    }

    pub fn covers(&self, x: f64) -> bool {
        x >= self.zero_below.min(self.knots[0]) && x <= *self.knots.last().unwrap()
    }

    fn in_zero_region(&self, x: f64) -> bool {
        x < self.knots[0] && x >= self.zero_below
    }

    fn seg(&self, x: f64) -> Result<&Quintic> {
        let n = self.knots.len();
        if x < self.knots[0] || x > self.knots[n - 1] * (1.0 + 1e-12) {
            return Err(Error::ResolutionError(format!(
                "spline queried at {x} outside built range [{}, {}]",
                self.knots[0],
                self.knots[n - 1]
            )));
        }
        let i = self
            .knots
            .partition_point(|k| *k <= x)
            .clamp(1, n - 1)
            - 1;
        Ok(&self.segs[i.min(self.segs.len() - 1)])
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if self.in_zero_region(x) {
            return Ok(0.0);
        }
        Ok(self.seg(x)?.eval_d(x, 0))
    }

    /// k-th derivative, k <= 5. Orders above 2 are polynomial derivatives of
    /// the interpolant and carry lower accuracy than the knot data.
    pub fn eval_d(&self, x: f64, k: usize) -> Result<f64> {
        if self.in_zero_region(x) {
            return Ok(0.0);
        }
        Ok(self.seg(x)?.eval_d(x, k))
    }

    /// Univariate Taylor table at x (for jet composition).
    pub fn eval_jet<const N: usize>(&self, x: f64) -> Result<Jet<N>> {
        let mut j = Jet::<N>::zero();
        if self.in_zero_region(x) {
            return Ok(j);
        }
        let seg = self.seg(x)?;
        let mut fact = 1.0;
        for k in 0..N.min(6) {
            if k > 0 {
                fact *= k as f64;
            }
            j.c[k] = seg.eval_d(x, k) / fact;
        }
        Ok(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Real;
    use approx::assert_relative_eq;

    #[test]
    fn antiderivative_of_cosine() {
        let knots = uniform_grid(0.0, 10.0, 64);
        let f = Antiderivative::build(knots, Arc::new(|x: f64| x.cos()));
        for &x in &[0.3, 2.7, 9.95] {
            assert_relative_eq!(f.eval(x), x.sin(), max_relative = 1e-13);
        }
    }

    #[test]
    fn hermite_reproduces_smooth_function() {
        let knots = uniform_grid(1.0, 3.0, 24);
        let jets: Vec<_> = knots
            .iter()
            .map(|&x| {
                let j = Jet::<3>::var(x).ln();
                (j.deriv(0), j.deriv(1), j.deriv(2))
            })
            .collect();
        let sp = HermiteSpline::new(knots, jets);
        for i in 0..50 {
            let x = 1.0 + 2.0 * (i as f64 + 0.5) / 50.0;
            assert_relative_eq!(sp.eval(x).unwrap(), x.ln(), max_relative = 1e-7);
            assert_relative_eq!(sp.eval_d(x, 1).unwrap(), 1.0 / x, max_relative = 1e-6);
            assert_relative_eq!(sp.eval_d(x, 2).unwrap(), -1.0 / (x * x), max_relative = 1e-4);
        }
    }

    #[test]
    fn spline_out_of_range_is_an_error_not_extrapolation() {
        let knots = uniform_grid(1.0, 2.0, 4);
        let jets = vec![(0.0, 0.0, 0.0); knots.len()];
        let sp = HermiteSpline::new(knots, jets);
        assert!(sp.eval(2.5).is_err());
        assert!(sp.eval(0.5).is_err());
        assert_eq!(sp.with_zero_below(0.0).eval(0.5).unwrap(), 0.0);
    }
}
