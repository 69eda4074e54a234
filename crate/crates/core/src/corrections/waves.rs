//! Free radial waves from velocity-only Cauchy data, with exact jets.
//!
//! A wave with data (0, g) is u(t, r) = (F(t+r) - F(|t-r|))/(2r) where
//! F(ρ) = ∫_0^ρ y g(y) dy. The antiderivative is tabulated once per data
//! function; jets follow from the closed formula, with an even Taylor series
//! taking over near the axis.

use crate::error::Result;
use crate::grid1d::{geometric_grid, Antiderivative, HermiteSpline};
use crate::jet::{Jet, Jet2, TJet};
use std::sync::Arc;

type DataJetFn = Arc<dyn Fn(f64) -> Jet<5> + Send + Sync>;

/// A radial data function g(ρ) (with four derivatives) plus its cumulative
/// moment F, ready to evaluate the free wave it generates.
pub struct RadialData {
    g: DataJetFn,
    f_int: Antiderivative,
    /// g vanishes identically below this radius
    support_min: f64,
}

impl RadialData {
    /// `transition`: an interval needing denser knots (data cutoff band).
    pub fn new(
        g: DataJetFn,
        support_min: f64,
        rho_max: f64,
        transition: Option<(f64, f64)>,
    ) -> Self {
        let mut knots = geometric_grid(support_min.max(1e-3), rho_max, 96);
        if let Some((a, b)) = transition {
            if b > a && a > 0.0 {
                knots.extend(geometric_grid(a, b.min(rho_max), 512));
                knots.sort_by(f64::total_cmp);
                knots.dedup_by(|x, y| (*x - *y).abs() < 1e-12 * y.abs());
            }
        }
        let g2 = g.clone();
        let f_int =
            Antiderivative::build(knots, Arc::new(move |rho| g2(rho).c[0] * rho)).saturating();
        RadialData { g, f_int, support_min }
    }

    pub fn rho_max(&self) -> f64 {
        self.f_int.range().1
    }

    pub fn data(&self, rho: f64) -> f64 {
        if rho <= self.support_min || rho > self.rho_max() {
            0.0
        } else {
            (self.g)(rho).c[0]
        }
    }

    pub fn data_jet(&self, rho: f64) -> Jet<5> {
        if rho <= self.support_min || rho > self.rho_max() {
            Jet::zero()
        } else {
            (self.g)(rho)
        }
    }

    /// Size of the discarded data tail beyond the built range (folded into
    /// downstream certificates).
    pub fn truncation_scale(&self) -> f64 {
        let end = self.rho_max();
        ((self.g)(end * 0.999).c[0] * end * end).abs()
    }

    /// Taylor table of F at ρ: [F, P, P'/2!, ...] with P(ρ) = ρ g(ρ).
    fn f_table(&self, rho: f64) -> Jet<6> {
        let mut t = Jet::<6>::zero();
        if rho <= self.support_min {
            return t; // F ≡ 0 on the data gap below the support
        }
        if rho > self.rho_max() {
            t.c[0] = self.f_int.eval(self.rho_max());
            return t; // saturated tail: data below resolution
        }
        t.c[0] = self.f_int.eval(rho);
        let g = self.data_jet(rho);
        let p = Jet::<6>::var(rho) * g.trunc::<6>();
        for k in 1..6 {
            t.c[k] = p.deriv(k - 1) / FACT[k];
        }
        t
    }

    /// Wave value.
    pub fn wave(&self, t: f64, r: f64) -> f64 {
        if r < 1e-6 * t {
            return self.data(t) * t;
        }
        let q = (t - r).abs();
        let fq = if q <= self.support_min { 0.0 } else { self.f_int.eval(q) };
        (self.f_int.eval(t + r) - fq) / (2.0 * r)
    }

    /// Full (t, r) jets of the wave.
    pub fn wave_tr(&self, t: f64, r: f64) -> TJet {
        if r < 1e-6 * t {
            // even expansion: u = h + r² h''/6 + r⁴ h''''/120, h(t) = t g(t)
            let h = Jet::<6>::var(t) * self.data_jet(t).trunc::<6>();
            let rr = TJet::var_r(r);
            return TJet::from_t_jet(&h.trunc::<4>())
                + rr * rr * TJet::from_t_jet(&h.d().d().trunc::<4>()) / 6.0;
        }
        let tt = TJet::var_t(t);
        let rr = TJet::var_r(r);
        let plus = self.f_table(t + r);
        let f_plus = (tt + rr).compose_series(&plus);
        let f_minus = if t >= r {
            let m = self.f_table(t - r);
            (tt - rr).compose_series(&m)
        } else {
            let m = self.f_table(r - t);
            (rr - tt).compose_series(&m)
        };
        (f_plus - f_minus) / (rr * 2.0)
    }

    /// Time-only jets of the wave at fixed radius (deeper in t than the
    /// bivariate jet carries).
    pub fn wave_t_jets<const M: usize>(&self, t: f64, r: f64) -> Jet<M> {
        if r < 1e-6 * t {
            let h = Jet::<6>::var(t) * self.data_jet(t).trunc::<6>();
            return h.trunc::<M>();
        }
        let plus = self.f_table(t + r).trunc::<M>();
        let minus = if t >= r {
            self.f_table(t - r).trunc::<M>()
        } else {
            let m = self.f_table(r - t);
            // F(r - t): each t-derivative flips sign
            let mut flipped = m.trunc::<M>();
            for (k, c) in flipped.c.iter_mut().enumerate() {
                if k % 2 == 1 {
                    *c = -*c;
                }
            }
            flipped
        };
        (plus - minus) / (2.0 * r)
    }
}

const FACT: [f64; 6] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0];

/// Wave data backed by a spline surrogate (used when the data profile is
/// itself integral-defined). Knot jets carry (value, d', d''); deeper
/// derivatives come from the interpolating polynomial.
pub fn spline_data(spline: Arc<HermiteSpline>, support_min: f64) -> DataJetFn {
    Arc::new(move |rho| match spline.eval_jet::<5>(rho) {
        Ok(j) => j,
        Err(_) => {
            // outside the built range the data has decayed below resolution
            let _ = support_min;
            Jet::zero()
        }
    })
}

/// Sizing information shared by every surrogate a correction hierarchy builds.
#[derive(Clone, Copy, Debug)]
pub struct Domain {
    pub t_min: f64,
    pub t_max: f64,
    pub r_max: f64,
}

impl Domain {
    pub fn rho_max(&self) -> f64 {
        self.t_max + self.r_max + 1.0
    }
}

/// Check helper: the discrete radial wave operator applied to a wave evaluator.
pub fn wave_operator_residual(u: &dyn Fn(f64, f64) -> f64, t: f64, r: f64, h: f64) -> f64 {
    let utt = (u(t + h, r) - 2.0 * u(t, r) + u(t - h, r)) / (h * h);
    let urr = (u(t, r + h) - 2.0 * u(t, r) + u(t, r - h)) / (h * h);
    let ur = (u(t, r + h) - u(t, r - h)) / (2.0 * h);
    -utt + urr + 2.0 / r * ur
}
