//! Wave-equation integral kernels: the 3D radial free propagator applied to
//! velocity data (spherical means), particular solutions with zero Cauchy
//! data at infinity (backward source tails), and the variation-of-parameters
//! solve for the linearized elliptic operator.

use super::{QuadEngine, QuadValue, Quadrature};
use crate::closed_forms::homogeneous::{e2, phi0};
use crate::error::{Error, Result};

/// Free wave with Cauchy data (0, g) at time 0, evaluated at (t, r):
/// (1/(2r)) ∫_{|t-r|}^{t+r} ρ g(ρ) dρ. Below r = 10⁻⁶ t the axis limit
/// t·g(t) is used (the window form is 0/0 there).
pub fn spherical_mean<V: QuadValue>(
    g: impl Fn(f64) -> V,
    t: f64,
    r: f64,
    engine: &QuadEngine,
) -> Result<Quadrature<V>> {
    if r < 1e-6 * t {
        return Ok(Quadrature { value: g(t) * t, err: 0.0 });
    }
    let q = engine.integrate(|rho: f64| g(rho) * rho, (t - r).abs(), t + r)?;
    Ok(Quadrature { value: q.value * (0.5 / r), err: q.err * (0.5 / r) })
}

/// Hints about a source's behaviour, used to size tail transforms and to
/// sanity check integrability.
#[derive(Clone, Copy, Debug)]
pub struct SourceHints {
    /// radius below which the source vanishes identically (0 if none)
    pub support_min: f64,
    /// algebraic decay exponent in the time-like direction (must be > 1)
    pub decay_exponent: f64,
}

impl Default for SourceHints {
    fn default() -> Self {
        SourceHints { support_min: 0.0, decay_exponent: 3.0 }
    }
}

/// Particular solution of -∂_t²u + ∂_r²u + (2/r)∂_r u = S with zero Cauchy
/// data at infinity:
/// u(t,r) = ∫_t^∞ (-1/(2r)) ∫_{|r-(s-t)|}^{r+s-t} y S(s,y) dy ds.
///
/// The kernel never evaluates S outside the backward light cone
/// |y - (s-t)| ≤ r.
pub fn duhamel_tail<V: QuadValue>(
    source: impl Fn(f64, f64) -> V,
    t: f64,
    r: f64,
    hints: SourceHints,
    engine: &QuadEngine,
) -> Result<Quadrature<V>> {
    if hints.decay_exponent <= 1.0 {
        return Err(Error::NotIntegrable(format!(
            "declared decay exponent {} does not make the outer tail integrable",
            hints.decay_exponent
        )));
    }
    let inner = engine.with_rel_tol((engine.settings.rel_tol * 0.1).max(1e-12));
    let axis = r < 1e-6 * t;
    let outer = |w: f64| -> V {
        // w = s - t >= 0
        let (lo, hi) = ((r - w).abs(), r + w);
        if axis {
            // (1/(2r)) ∫ y S dy over a width-2r window -> midpoint limit
            return source(t + w, w) * w;
        }
        let q = inner.integrate_raw(&|y: f64| source(t + w, y) * y, lo, hi);
        q.value * (0.5 / r)
    };
    let scale = (t.max(r) * 0.5).max(1.0);
    let q = engine.integrate_semi_infinite_raw(|w: f64| outer(w), 0.0, scale);
    accept_nested(engine, &inner, q.value.norm(), q.err)?;
    Ok(Quadrature { value: q.value * (-1.0), err: q.err })
}

/// Accept a nested quadrature when its estimate beats the requested tolerance
/// or sits at the irreducible noise floor the inner integrals leave in the
/// outer integrand; otherwise classify as divergence or tolerance failure.
fn accept_nested(
    outer: &QuadEngine,
    inner: &QuadEngine,
    magnitude: f64,
    err: f64,
) -> Result<()> {
    let tol = (outer.settings.rel_tol * magnitude).max(outer.settings.abs_tol);
    let noise = 1000.0 * inner.settings.rel_tol * magnitude + 10.0 * inner.settings.abs_tol;
    if err.is_finite() && magnitude.is_finite() && err <= tol.max(noise) {
        Ok(())
    } else {
        Err(Error::ToleranceNotMet {
            requested_rel: outer.settings.rel_tol,
            achieved: err,
            magnitude,
        })
    }
}

/// Like [`duhamel_tail`], but producing full (t, r) jets.
///
/// Time derivatives differentiate the source under the integral (the limits
/// are t-free in the shifted variable w = s - t); the first radial derivative
/// uses the boundary formula
/// u_r = -u/r + ∫_0^∞ (-1/(2r)) [(r+w) S(t+w, r+w) + (w-r) S(t+w, |w-r|)] dw,
/// and the second comes from the equation itself:
/// u_rr = u_tt - (2/r) u_r + S. Valid jet cells: (j, 0) j ≤ 3, (j, 1) j ≤ 2,
/// (j, 2) j ≤ 1; the rest are zero-filled.
pub fn duhamel_tail_tr(
    source_t_jets: &(dyn Fn(f64, f64) -> crate::jet::Jet<4> + '_),
    t: f64,
    r: f64,
    hints: SourceHints,
    engine: &QuadEngine,
) -> Result<(crate::jet::TJet, f64)> {
    use crate::jet::{Jet, TJet};
    if hints.decay_exponent <= 1.0 {
        return Err(Error::NotIntegrable(format!(
            "declared decay exponent {} does not make the outer tail integrable",
            hints.decay_exponent
        )));
    }
    let inner = engine.with_rel_tol((engine.settings.rel_tol * 0.1).max(1e-12));
    let scale = (t.max(r) * 0.5).max(1.0);
    // value and time derivatives
    let outer_val = |w: f64| -> Jet<4> {
        let (lo, hi) = ((r - w).abs(), r + w);
        let q = inner.integrate_raw(&|y: f64| source_t_jets(t + w, y) * y, lo, hi);
        q.value * (0.5 / r)
    };
    let qt = engine.integrate_semi_infinite_raw(outer_val, 0.0, scale);
    accept_nested(engine, &inner, qt.value.norm(), qt.err)?;
    let ut = -qt.value;
    // first radial derivative
    let qr = engine.integrate_semi_infinite_raw(
        |w: f64| {
            let a = source_t_jets(t + w, r + w) * (r + w);
            let b = source_t_jets(t + w, (w - r).abs()) * (w - r);
            (a + b) * (-0.5 / r)
        },
        0.0,
        scale,
    );
    accept_nested(engine, &inner, qr.value.norm(), qr.err)?;
    let ur = qr.value - ut * (1.0 / r);
    let s_here = source_t_jets(t, r);
    let mut out = TJet::zero();
    for i in 0..4 {
        out.c[i][0] = ut.c[i];
        if i < 3 {
            out.c[i][1] = ur.c[i];
        }
    }
    // u_rr = u_tt - (2/r) u_r + S, per time order (0 and 1)
    for i in 0..2 {
        let utt_i = ut.c[i + 2] * ((i + 1) * (i + 2)) as f64;
        let urr = utt_i - 2.0 / r * ur.c[i] + s_here.c[i];
        out.c[i][2] = urr / 2.0;
    }
    Ok((out, qt.err + qr.err))
}

/// Variation of parameters for ∂_r²u + (2/r)∂_r u + 45λ²/(r²+3λ²)² u = F(r)
/// at fixed t, regular at the origin:
/// u(r) = φ₀(R) ∫_0^R s²λ² F(sλ) e₂(s) ds - e₂(R) ∫_0^R s²λ² F(sλ) φ₀(s) ds,
/// R = r/λ.
pub fn variation_of_parameters<V, F>(
    f: F,
    lam: f64,
    r: f64,
    engine: &QuadEngine,
) -> Result<Quadrature<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    let big_r = r / lam;
    // s² absorbs the e₂ ~ 2/s singularity; require the integrand finite near 0
    let probe = f(1e-4 * lam).norm() * (1e-4f64).powi(2) * e2(1e-4).abs();
    if !probe.is_finite() {
        return Err(Error::NotIntegrable(
            "variation-of-parameters source too singular at the origin".into(),
        ));
    }
    let w1 = engine.integrate(
        |s: f64| f(s * lam) * (s * s * lam * lam * e2(s)),
        0.0,
        big_r,
    )?;
    let w2 = engine.integrate(
        |s: f64| f(s * lam) * (s * s * lam * lam * phi0(s)),
        0.0,
        big_r,
    )?;
    Ok(Quadrature {
        value: w1.value * phi0(big_r) - w2.value * e2(big_r),
        err: w1.err * phi0(big_r).abs() + w2.err * e2(big_r).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Real;
    use crate::closed_forms::soliton::dtt_q;
    use crate::closed_forms::uell::{c1_coef, u_ell};
    use crate::jet::Jet;
    use crate::scale::{ProfileKind, ScaleProfile};
    use approx::assert_relative_eq;
    use std::cell::RefCell;

    #[test]
    fn spherical_mean_constant_data() {
        let eng = QuadEngine::default();
        for &(t, r) in &[(3.0, 1.0), (5.0, 8.0), (100.0, 1e-9)] {
            let q = spherical_mean(|_| 2.5, t, r, &eng).unwrap();
            assert_relative_eq!(q.value, 2.5 * t, max_relative = 1e-12);
        }
    }

    #[test]
    fn spherical_mean_inverse_data() {
        // g = 1/ρ -> min(1, t/r)
        let eng = QuadEngine::default();
        let q = spherical_mean(|rho: f64| 1.0 / rho, 4.0, 2.0, &eng).unwrap();
        assert_relative_eq!(q.value, 1.0, max_relative = 1e-12);
        let q = spherical_mean(|rho: f64| 1.0 / rho, 4.0, 10.0, &eng).unwrap();
        assert_relative_eq!(q.value, 0.4, max_relative = 1e-12);
    }

    #[test]
    fn spherical_mean_satisfies_wave_operator() {
        // smooth compactly supported data: FD wave-operator residual = O(h²)
        let eng = QuadEngine::default().with_rel_tol(1e-12);
        let g = |rho: f64| {
            let x: f64 = (rho - 6.0) / 2.0;
            if x.abs() < 1.0 {
                (-1.0 / (1.0 - x * x)).exp()
            } else {
                0.0
            }
        };
        let u = |t: f64, r: f64| spherical_mean(g, t, r, &eng).unwrap().value;
        // the centered stencil annihilates radial characteristics exactly, so
        // the residual sits at quadrature noise, far inside the O(h²) claim
        for &(t, r) in &[(3.0, 2.0), (7.0, 2.0), (6.0, 5.5)] {
            for &h in &[0.2, 0.1] {
                let utt = (u(t + h, r) - 2.0 * u(t, r) + u(t - h, r)) / (h * h);
                let urr = (u(t, r + h) - 2.0 * u(t, r) + u(t, r - h)) / (h * h);
                let ur = (u(t, r + h) - u(t, r - h)) / (2.0 * h);
                let resid = (-utt + urr + 2.0 / r * ur).abs();
                assert!(resid <= 10.0 * h * h, "residual {resid:e} beyond O(h²) at h={h}");
            }
        }
    }

    #[test]
    fn duhamel_zero_source() {
        let eng = QuadEngine::default();
        let q = duhamel_tail(|_, _| 0.0, 10.0, 3.0, SourceHints::default(), &eng).unwrap();
        assert_eq!(q.value, 0.0);
    }

    #[test]
    fn duhamel_manufactured_one_over_t() {
        // S = -2/s³ has the spatially constant solution u = 1/t
        let eng = QuadEngine::new(crate::quadrature::QuadSettings {
            rel_tol: 1e-9,
            ..Default::default()
        });
        for &(t, r) in &[(10.0, 2.0), (20.0, 15.0)] {
            let q = duhamel_tail(
                |s: f64, _| -2.0 / (s * s * s),
                t,
                r,
                SourceHints { support_min: 0.0, decay_exponent: 3.0 },
                &eng,
            )
            .unwrap();
            assert_relative_eq!(q.value, 1.0 / t, max_relative = 1e-7);
        }
    }

    #[test]
    fn duhamel_linearity() {
        let eng = QuadEngine::default().with_rel_tol(1e-9);
        let s1 = |s: f64, y: f64| (-(y - s * 0.3).powi(2)).exp() / (s * s * s);
        let s2 = |s: f64, y: f64| 1.0 / (s * s * s + y * y * y + 1.0);
        let h = SourceHints { support_min: 0.0, decay_exponent: 3.0 };
        let (t, r) = (5.0, 2.0);
        let a = duhamel_tail(s1, t, r, h, &eng).unwrap().value;
        let b = duhamel_tail(s2, t, r, h, &eng).unwrap().value;
        let c = duhamel_tail(|s, y| s1(s, y) * 2.0 - s2(s, y) * 3.0, t, r, h, &eng)
            .unwrap()
            .value;
        assert_relative_eq!(c, 2.0 * a - 3.0 * b, max_relative = 1e-6);
    }

    #[test]
    fn duhamel_respects_light_cone() {
        let eng = QuadEngine::default().with_rel_tol(1e-6);
        let violations = RefCell::new(0usize);
        let (t, r) = (8.0, 3.0);
        let _ = duhamel_tail(
            |s: f64, y: f64| {
                if (y - (s - t)).abs() > r * (1.0 + 1e-9) {
                    *violations.borrow_mut() += 1;
                }
                1.0 / (s * s * s)
            },
            t,
            r,
            SourceHints::default(),
            &eng,
        )
        .unwrap();
        assert_eq!(*violations.borrow(), 0);
    }

    #[test]
    fn vop_zero_source() {
        let eng = QuadEngine::default();
        let q = variation_of_parameters(|_| 0.0, 1.0, 5.0, &eng).unwrap();
        assert_eq!(q.value, 0.0);
    }

    #[test]
    fn vop_reproduces_u_ell() {
        // F = ∂_t²Q_λ gives u_ell - c₁φ₀ (the particular solution with c₁ = 0)
        let pr = ScaleProfile::new(ProfileKind::Power { c: 1.3, p: 0.04 }, 50.0);
        let eng = QuadEngine::default();
        let t = 700.0;
        let j = pr.lambda_jet(t);
        let (l, l1, l2) = (j.c[0], j.deriv(1), j.deriv(2));
        for &big_r in &[0.8, 5.0, 20.0] {
            let r = big_r * l;
            let q = variation_of_parameters(|y: f64| dtt_q(l, l1, l2, y), l, r, &eng).unwrap();
            let expect = u_ell(l, l1, l2, r)
                - c1_coef(l, l1, l2) * crate::closed_forms::homogeneous::phi0(big_r);
            assert_relative_eq!(q.value, expect, max_relative = 1e-8);
        }
    }

    #[test]
    fn vop_residual_recovers_source() {
        // apply the elliptic operator by finite differences; recover F to O(h²)
        let pr = ScaleProfile::new(ProfileKind::Power { c: 1.0, p: 0.02 }, 50.0);
        let eng = QuadEngine::default().with_rel_tol(1e-11);
        let t = 400.0;
        let j = pr.lambda_jet(t);
        let (l, l1, l2) = (j.c[0], j.deriv(1), j.deriv(2));
        // F = ∂_t² u_ell via jets
        let lj = pr.lambda_jet(t);
        let f = move |y: f64| {
            u_ell(
                lj.trunc::<3>(),
                lj.d().trunc::<3>(),
                lj.d().d().trunc::<3>(),
                Jet::<3>::c(y),
            )
            .deriv(2)
        };
        let u = |r: f64| variation_of_parameters(&f, l, r, &eng).unwrap().value;
        let r = 3.0 * l;
        let mut prev = f64::NAN;
        for &h in &[0.02 * l, 0.01 * l] {
            let upp = (u(r + h) - 2.0 * u(r) + u(r - h)) / (h * h);
            let up = (u(r + h) - u(r - h)) / (2.0 * h);
            let lhs = upp + 2.0 / r * up + 45.0 * l * l / (r * r + 3.0 * l * l).powi(2) * u(r);
            let resid = (lhs - f(r)).abs();
            if prev.is_finite() {
                assert!(resid < prev / 2.0, "not O(h²): {prev:e} -> {resid:e}");
            }
            prev = resid;
        }
        let _ = (l1, l2);
    }
}
