//! Far-field corrections: the explicitly integrated source wave v_ex, the
//! second large-r correction u_{w,2} and its elliptic leading part, and the
//! cutoff-driven u₃.

use super::waves::RadialData;
use crate::closed_forms::cutoffs::chi_ge1;
use crate::closed_forms::far::f3;
use crate::closed_forms::soliton::potential;
use crate::error::Result;
use crate::jet::{CJet, Jet, Jet2, Real, TJet};
use crate::quadrature::kernels::{duhamel_tail_tr, SourceHints};
use crate::quadrature::QuadEngine;
use crate::scale::ScaleProfile;

const SQRT3: f64 = 1.732050807568877293527446341505872367_f64;
const PI: f64 = std::f64::consts::PI;

/// λ(s+y), λ'(s+y) etc. as jets in s at fixed shift y.
fn lam_shifted(profile: &ScaleProfile, s: f64, y: f64) -> CJet {
    profile.lambda_jet(s + y)
}

/// w_{1,0}(s, y) as jets in s at fixed y.
pub fn w10_t_jets<const M: usize>(profile: &ScaleProfile, s: f64, y: f64) -> Jet<M> {
    let a = lam_shifted(profile, s, y).sqrt();
    let b = profile.lambda_jet(s).sqrt();
    ((a - b) * (SQRT3 / y)).trunc::<M>()
}

/// w₁ = w_{1,0} + ṽ₂ as jets in s at fixed y.
pub fn w1_t_jets<const M: usize>(
    profile: &ScaleProfile,
    v2t: &RadialData,
    s: f64,
    y: f64,
) -> Jet<M> {
    let mut j: Jet<M> = v2t.wave_t_jets(s, y);
    let w = w10_t_jets::<M>(profile, s, y);
    for k in 0..M {
        j.c[k] += w.c[k];
    }
    j
}

/// RHS₂(s, y) = V(s, y)(w₁ + v₂)(s, y) as jets in s at fixed y.
pub fn rhs2_t_jets<const M: usize>(
    profile: &ScaleProfile,
    v2: &RadialData,
    v2t: &RadialData,
    s: f64,
    y: f64,
) -> Jet<M> {
    let lam = profile.lambda_jet(s).trunc::<M>();
    let v = potential(lam, Jet::<M>::c(y));
    let w1 = w1_t_jets::<M>(profile, v2t, s, y);
    let v2w: Jet<M> = v2.wave_t_jets(s, y);
    v * (w1 + v2w)
}

/// RHS₂ as a full (t, r) jet.
pub fn rhs2_tr(profile: &ScaleProfile, v2: &RadialData, v2t: &RadialData, t: f64, r: f64) -> TJet {
    let lam = profile.lambda_at(TJet::var_t(t));
    let v = potential(lam, TJet::var_r(r));
    let w10 = crate::closed_forms::far::w10::<4, 3>(profile, t, r);
    v * (w10 + v2t.wave_tr(t, r) + v2.wave_tr(t, r))
}

/// v_ex(t, r) with jets, via the integrated-source representation:
/// (1/(πr)) ∫_0^∞ f₃(t+q, r+q) dq - (1/π) ∫_0^1 f₃(t + r(1-σ), rσ) dσ
/// - (1/(πr)) ∫_0^∞ f₃(t+r+q, q) dq.
pub fn v_ex_tr(
    profile: &ScaleProfile,
    t: f64,
    r: f64,
    engine: &QuadEngine,
) -> Result<(TJet, f64)> {
    let tt = TJet::var_t(t);
    let rr = TJet::var_r(r);
    let scale = t.max(r);
    let f3_at = |s_arg: TJet, x_arg: TJet| -> TJet {
        // jets of λ, λ', λ'' at a moving time argument
        let base = profile.lambda_jet(s_arg.val());
        let l = s_arg.compose_series(&base);
        let l1 = s_arg.compose_series(&base.d());
        let l2 = s_arg.compose_series(&base.d().d());
        f3(l, l1, l2, x_arg)
    };
    let q1 = engine.integrate_semi_infinite(|q: f64| f3_at(tt + q, rr + q), 0.0, scale)?;
    let q2 = engine.integrate(|sig: f64| f3_at(tt + rr * (1.0 - sig), rr * sig), 0.0, 1.0)?;
    let q3 = engine.integrate_semi_infinite(|q: f64| f3_at(tt + rr + q, TJet::c(q)), 0.0, scale)?;
    let value = (q1.value - q3.value) / (rr * PI) - q2.value / PI;
    Ok((value, (q1.err + q3.err) / (PI * r) + q2.err / PI))
}

/// u_{w,2}(t, r) with jets: the zero-data-at-infinity solution driven by RHS₂.
pub fn u_w2_tr(
    profile: &ScaleProfile,
    v2: &RadialData,
    v2t: &RadialData,
    t: f64,
    r: f64,
    engine: &QuadEngine,
) -> Result<(TJet, f64)> {
    duhamel_tail_tr(
        &|s, y| rhs2_t_jets::<4>(profile, v2, v2t, s, y),
        t,
        r,
        SourceHints { support_min: 0.0, decay_exponent: 3.0 },
        engine,
    )
}

/// u_{w,2,ell}(t, y) = -(1/y)∫_0^y z²RHS₂ dz - ∫_y^∞ zRHS₂ dz, as jets in t.
pub fn u_w2_ell_t_jets<const M: usize>(
    profile: &ScaleProfile,
    v2: &RadialData,
    v2t: &RadialData,
    t: f64,
    y: f64,
    engine: &QuadEngine,
) -> Result<(Jet<M>, f64)>
where
    Jet<M>: crate::quadrature::QuadValue,
{
    let near = engine.integrate(
        |z: f64| rhs2_t_jets::<M>(profile, v2, v2t, t, z) * (z * z),
        0.0,
        y,
    )?;
    let lam = profile.lambda(t);
    let far = engine.integrate_semi_infinite(
        |z: f64| rhs2_t_jets::<M>(profile, v2, v2t, t, z) * z,
        y,
        4.0 * (y + lam) + 0.5 * t,
    )?;
    Ok((near.value * (-1.0 / y) - far.value, near.err / y + far.err))
}

/// e₃(s, y) = -χ_{≥1}(y/h(s)) · 45λ(s)² v₃(s, y) / (3λ(s)² + y²)², jets in s.
pub fn e3_t_jets<const M: usize>(
    profile: &ScaleProfile,
    a_exp: f64,
    v3: &RadialData,
    s: f64,
    y: f64,
) -> Jet<M> {
    let lamj = profile.lambda_jet(s);
    let h = (lamj.powf(1.0 - a_exp) * CJet::var(s).powf(a_exp)).trunc::<M>();
    let chi = chi_ge1(Jet::<M>::c(y) / h);
    if chi.c[0] == 0.0 && chi.norm() == 0.0 {
        return Jet::zero();
    }
    let lam = profile.lambda_jet(s).trunc::<M>();
    let v: Jet<M> = v3.wave_t_jets(s, y);
    chi * potential(lam, Jet::<M>::c(y)) * v
}

/// u₃(t, r): zero-data-at-infinity solution driven by e₃.
pub fn u3_tr(
    profile: &ScaleProfile,
    a_exp: f64,
    v3: &RadialData,
    t: f64,
    r: f64,
    engine: &QuadEngine,
) -> Result<(TJet, f64)> {
    duhamel_tail_tr(
        &|s, y| e3_t_jets::<4>(profile, a_exp, v3, s, y),
        t,
        r,
        SourceHints { support_min: 0.0, decay_exponent: 3.0 },
        engine,
    )
}

/// Convenience: promote a univariate t-jet function into the (0,0) block.
pub fn promote_t<const M: usize>(j: &Jet<M>) -> Jet2<4, 3> {
    Jet2::from_t_jet(&j.trunc::<4>())
}
