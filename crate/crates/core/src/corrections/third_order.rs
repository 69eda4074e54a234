//! The third-order free-wave data: the tail combination whose cancellation
//! the higher-order matching enforces. Built once per hierarchy as a radial
//! spline with exact knot jets.

use super::far::u_w2_ell_t_jets;
use super::waves::RadialData;
use crate::closed_forms::cutoffs::psi;
use crate::closed_forms::far::vexell_minus_vexell0;
use crate::closed_forms::second::{dtt_u_w2_ell00_minus_p_jets, SecondCoeffs};
use crate::closed_forms::soliton::potential;
use crate::error::Result;
use crate::grid1d::{geometric_grid, HermiteSpline};
use crate::jet::{CJet, Jet, Real};
use crate::quadrature::QuadEngine;
use crate::scale::ScaleProfile;

/// extract ∂₁²-jets (orders 0..=2) from jets of orders 0..=4
fn dd3(j: &Jet<5>) -> Jet<3> {
    let d = j.d().d();
    Jet { c: [d.c[0], d.c[1], d.c[2]] }
}

/// (w₁ + v₂ - w_{1,lm} - v_{2,lm})(t, x) as jets in t, cancellation-managed:
/// Taylor form for x below t/20, direct subtraction beyond.
fn wave_minus_lm_jets(
    profile: &ScaleProfile,
    v2: &RadialData,
    v2t: &RadialData,
    t: f64,
    x: f64,
) -> Jet<3> {
    let co = SecondCoeffs::at(profile, t);
    if x < t / 20.0 {
        // w₁₀ - k - (x/2)k' = Σ_{j=2}^{6} x^j k^(j)/(j+1)!
        let mut acc = CJet::zero();
        let mut kd = co.k.d().d();
        let mut xp = x * x;
        let mut fact = 6.0; // (2+1)!
        for j in 2..=6usize {
            acc = acc + kd * (xp / fact);
            kd = kd.d();
            xp *= x;
            fact *= (j + 2) as f64;
        }
        // even expansions of the two waves minus their central values
        let even = |h: &CJet| -> CJet {
            let h2 = h.d().d();
            let h4 = h2.d().d();
            h2 * (x * x / 6.0) + h4 * (x.powi(4) / 120.0)
        };
        (acc + even(&co.tv20t) + even(&co.tv20)).trunc::<3>()
    } else {
        let w1 = super::far::w1_t_jets::<3>(profile, v2t, t, x);
        let v2w: Jet<3> = v2.wave_t_jets(t, x);
        let lm = co.k + co.k.d() * (x / 2.0) + co.tv20t + co.b;
        w1 + v2w - lm.trunc::<3>()
    }
}

/// Builder for the third-order data profile and its spline surrogate.
pub struct ThirdOrderData {
    pub spline: std::sync::Arc<HermiteSpline>,
    /// radius below which the data vanishes (cutoff anchor)
    pub support_min: f64,
    pub quad_err: f64,
}

/// v_{3,0}(r) with derivatives through order 2 (one radius).
pub fn v30_jets(
    profile: &ScaleProfile,
    v2: &RadialData,
    v2t: &RadialData,
    t01: f64,
    r: f64,
    engine: &QuadEngine,
) -> Result<(Jet<3>, f64)> {
    if r <= t01 {
        return Ok((Jet::zero(), 0.0));
    }
    let tl = profile.t_lambda;
    let mut err = 0.0;
    let tail_scale = 0.5 * r;

    // coefficient-function tails: s = r + q
    let q_w2 = engine.integrate_semi_infinite(
        |q: f64| SecondCoeffs::at(profile, r + q).w2.trunc::<3>(),
        0.0,
        tail_scale,
    )?;
    err += q_w2.err;
    let q_q1 = engine.integrate_semi_infinite(
        |q: f64| {
            if q == 0.0 {
                return Jet::zero();
            }
            let co = SecondCoeffs::at(profile, r + q);
            let lg = -co.lam.ln() + (q / 3.0f64.sqrt()).ln();
            (co.q1.d().d() * lg).trunc::<3>()
        },
        0.0,
        tail_scale,
    )?;
    err += q_q1.err;
    let q_g3 = engine.integrate_semi_infinite(
        |q: f64| SecondCoeffs::at(profile, r + q).g3.trunc::<3>(),
        0.0,
        tail_scale,
    )?;
    err += q_g3.err;
    let q_g2 = engine.integrate_semi_infinite(
        |q: f64| {
            if q == 0.0 {
                return Jet::zero();
            }
            let co = SecondCoeffs::at(profile, r + q);
            let lg = -co.lam.ln() * 2.0 + (4.0 * q * q / 3.0).ln();
            (co.g2.d().d() * lg).trunc::<3>()
        },
        0.0,
        tail_scale,
    )?;
    err += q_g2.err;

    // cone tails of the slot-1 second derivatives
    let inner = engine.with_rel_tol((engine.settings.rel_tol * 10.0).min(1e-6));
    let q_uw2 = engine.integrate_semi_infinite(
        |q: f64| {
            if q == 0.0 {
                return Jet::zero();
            }
            let s = r + q;
            let u = u_w2_ell_t_jets::<5>(profile, v2, v2t, s, q, &inner)
                .map(|(j, _)| j)
                .unwrap_or_else(|_| Jet::zero());
            let co = SecondCoeffs::at(profile, s);
            (dd3(&u) - dtt_u_w2_ell00_minus_p_jets(&co, q)) * q
        },
        0.0,
        tail_scale,
    )?;
    err += q_uw2.err;
    let q_vex = engine.integrate_semi_infinite(
        |q: f64| {
            if q == 0.0 {
                return Jet::zero();
            }
            let l = profile.lambda_jet(r + q);
            let d = vexell_minus_vexell0(l, l.d(), l.d().d(), CJet::c(q));
            dd3(&d.trunc::<5>()) * q
        },
        0.0,
        tail_scale,
    )?;
    err += q_vex.err;

    // ∫_0^∞ x V(t, x)(w₁ + v₂ - w_{1,lm} - v_{2,lm}) dx at t = r
    let lam = profile.lambda(r);
    let q_xv = engine.integrate_semi_infinite(
        |x: f64| {
            if x == 0.0 {
                return Jet::zero();
            }
            let lamj = profile.lambda_jet(r).trunc::<3>();
            let v = potential(lamj, Jet::<3>::c(x));
            v * wave_minus_lm_jets(profile, v2, v2t, r, x) * x
        },
        0.0,
        4.0 * lam + 0.25 * r,
    )?;
    err += q_xv.err;

    let inner_sum = -q_w2.value - q_q1.value + q_g3.value + q_g2.value - q_uw2.value
        + q_vex.value
        + q_xv.value;
    let rj = Jet::<3>::var(r);
    let cut = psi(rj * (tl / t01), tl);
    Ok(((cut * inner_sum / rj), err))
}

impl ThirdOrderData {
    /// Build the radial surrogate on [t01, rho_max].
    pub fn build(
        profile: &ScaleProfile,
        v2: &RadialData,
        v2t: &RadialData,
        t01: f64,
        rho_max: f64,
        engine: &QuadEngine,
    ) -> Result<Self> {
        let mut knots = geometric_grid(t01 * 0.999, rho_max, 24);
        knots.extend(geometric_grid(t01 * 0.999, (2.05 * t01).min(rho_max), 96));
        knots.sort_by(f64::total_cmp);
        knots.dedup_by(|a, b| (*a - *b).abs() < 1e-10 * b.abs());
        let mut jets = Vec::with_capacity(knots.len());
        let mut err = 0.0_f64;
        for &r in &knots {
            let (j, e) = v30_jets(profile, v2, v2t, t01, r, engine)?;
            jets.push((j.deriv(0), j.deriv(1), j.deriv(2)));
            err = err.max(e);
        }
        let spline =
            HermiteSpline::new(knots, jets).with_zero_below(0.0);
        Ok(ThirdOrderData {
            spline: std::sync::Arc::new(spline),
            support_min: t01,
            quad_err: err,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::far::{v20_jet, v20_tilde_jet};
    use crate::scale::ProfileKind;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn setup() -> (ScaleProfile, RadialData, RadialData) {
        let pr = ScaleProfile::new(ProfileKind::Power { c: 1.3, p: 0.02 }, 50.0);
        let tl = pr.t_lambda;
        let p1 = pr.clone();
        let v2 = RadialData::new(
            Arc::new(move |rho| v20_jet(&p1, rho).trunc::<5>()),
            tl,
            1e5,
            Some((tl, 2.0 * tl)),
        );
        let p2 = pr.clone();
        let v2t = RadialData::new(
            Arc::new(move |rho| v20_tilde_jet(&p2, rho).trunc::<5>()),
            tl,
            1e5,
            Some((tl, 2.0 * tl)),
        );
        (pr, v2, v2t)
    }

    #[test]
    fn wave_minus_lm_branches_agree() {
        let (pr, v2, v2t) = setup();
        let t = 2000.0;
        // overlap near the crossover t/20
        for &x in &[t / 25.0, t / 20.0 * 1.05, t / 15.0] {
            let co = SecondCoeffs::at(&pr, t);
            let w1 = super::super::far::w1_t_jets::<3>(&pr, &v2t, t, x);
            let v2w: Jet<3> = v2.wave_t_jets(t, x);
            let lm = co.k + co.k.d() * (x / 2.0) + co.tv20t + co.b;
            let direct = w1 + v2w - lm.trunc::<3>();
            let managed = wave_minus_lm_jets(&pr, &v2, &v2t, t, x);
            assert_relative_eq!(managed.c[0], direct.c[0], max_relative = 2e-4);
        }
    }

    #[test]
    fn v30_decays_and_respects_cutoff() {
        let (pr, v2, v2t) = setup();
        let eng = QuadEngine::default().with_rel_tol(1e-7);
        let t01 = 500.0;
        let (below, _) = v30_jets(&pr, &v2, &v2t, t01, 400.0, &eng).unwrap();
        assert_eq!(below.c[0], 0.0);
        let (a, _) = v30_jets(&pr, &v2, &v2t, t01, 2.1 * t01, &eng).unwrap();
        let (b, _) = v30_jets(&pr, &v2, &v2t, t01, 8.0 * t01, &eng).unwrap();
        assert!(a.c[0].abs() > 0.0 && b.c[0].abs() > 0.0);
        // |v30| ≲ λ²√λ log²r / r⁴: check the weighted ratio stays bounded
        let w = |r: f64, v: f64| {
            let l = pr.lambda(r);
            v.abs() * r.powi(4) / (l * l * l.sqrt() * r.ln().powi(2))
        };
        let (wa, wb) = (w(2.1 * t01, a.c[0]), w(8.0 * t01, b.c[0]));
        assert!(wb < 10.0 * wa.max(1e-12), "weighted v30 grew: {wa:e} -> {wb:e}");
    }
}
