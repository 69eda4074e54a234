//! Second-order coefficient functions and matching-region leading parts: the
//! kinetic coefficient k = √3λ'/(2√λ) and the derived a, b, a₁, b₁, g₁..g₃,
//! q₁, q₂, w₂ families; the leading parts of the second large-r correction;
//! the elementary-integral forms built from their slot-1 second derivatives;
//! and the r-independent matching defect e_{m,2}.

use super::far::{v20_jet, v20_tilde_jet};
use super::homogeneous::{phi0, phi0_plus};
use super::uell::{e_ell1, u_ell};
use crate::error::Result;
use crate::jet::{slot1_dd_along, CJet, Jet, Jet2, Real};
use crate::quadrature::QuadEngine;
use crate::scale::ScaleProfile;

const SQRT3: f64 = 1.732050807568877293527446341505872367_f64;
const PI: f64 = std::f64::consts::PI;

/// Scale-derived coefficient functions at a fixed time, as t-jets.
///
/// Validity depth shrinks with each jet-derivative of λ consumed; every field
/// is exact at least through order 2, and the w₁/v₂ expansion coefficients
/// through the orders the matching identities consume (t ≥ 2 t_lambda, where
/// the data cutoffs are identically 1).
pub struct SecondCoeffs {
    pub lam: CJet,
    /// k = √3 λ' / (2√λ)
    pub k: CJet,
    /// t·(data velocity of the cancellation wave) = -k once ψ ≡ 1
    pub tv20t: CJet,
    /// t·(data velocity of the matched free wave) = b once ψ ≡ 1
    pub tv20: CJet,
    /// a = k'/2
    pub a: CJet,
    /// b = -15π √λ λ''/8
    pub b: CJet,
    /// a₁ = k'''/4!
    pub a1: CJet,
    /// b₁ = (t v_{2,0}(t))''/6
    pub b1: CJet,
    pub g1: CJet,
    pub g2: CJet,
    pub g3: CJet,
    /// q₁ = -45√3 λ² ∂_t²√λ / 2
    pub q1: CJet,
    /// q₂ = -45√3 (-8 λ² ∂_t²√λ + 5π² λ^{3/2} λ'')/32
    pub q2: CJet,
    /// w₂ = q₁λ'²/λ² - q₂'' - (2q₁'λ' + q₁λ'')/λ
    pub w2: CJet,
    /// P = 675π λ^{5/2} λ''/16
    pub pcoef: CJet,
    /// M = q₁ ln(√3 λ)
    pub mcoef: CJet,
}

impl SecondCoeffs {
    pub fn at(profile: &ScaleProfile, t: f64) -> Self {
        let lam = profile.lambda_jet(t);
        let l1 = lam.d();
        let l2 = l1.d();
        let k = l1 * (SQRT3 / 2.0) / lam.sqrt();
        let tj = CJet::var(t);
        let tv20t = tj * v20_tilde_jet(profile, t);
        let tv20 = tj * v20_jet(profile, t);
        let a = k.d() * 0.5;
        let b = lam.sqrt() * l2 * (-15.0 * PI / 8.0);
        let a1 = k.d().d().d() / 24.0;
        let b1 = tv20.d().d() / 6.0;
        let g1 = lam.sqrt() * (l1 * l1 * (-17.0) + lam * l2 * 2.0) * (3.0 * SQRT3 / 16.0);
        let g2 = lam.sqrt() * (l1 * l1 * 15.0 + lam * l2 * 10.0) * (3.0 * SQRT3 / 16.0);
        let g3 = (g2 * (l1 * l1 - lam * l2) * 2.0 + lam * (g2.d() * l1 * (-4.0) + lam * g1.d().d()))
            / (lam * lam);
        let ddsqrt = (lam * l2 * 2.0 - l1 * l1) / (lam.powf(1.5) * 4.0);
        let q1 = lam * lam * ddsqrt * (-45.0 * SQRT3 / 2.0);
        let q2 = (lam * lam * ddsqrt * (-8.0) + lam.powf(1.5) * l2 * (5.0 * PI * PI))
            * (-45.0 * SQRT3 / 32.0);
        let w2 = q1 * l1 * l1 / (lam * lam) - q2.d().d() - (q1.d() * l1 * 2.0 + q1 * l2) / lam;
        let pcoef = lam.powf(2.5) * l2 * (675.0 * PI / 16.0);
        let mcoef = q1 * (lam * SQRT3).ln();
        SecondCoeffs {
            lam,
            k,
            tv20t,
            tv20,
            a,
            b,
            a1,
            b1,
            g1,
            g2,
            g3,
            q1,
            q2,
            w2,
            pcoef,
            mcoef,
        }
    }
}

fn promote<const NT: usize, const NR: usize>(c: &CJet) -> Jet2<NT, NR> {
    Jet2::from_t_jet(c)
}

/// w_{1,lm}(t,r) = k + (r/2)k' + t ṽ_{2,0}(t).
pub fn w1_lm<const NT: usize, const NR: usize>(
    co: &SecondCoeffs,
    r: f64,
) -> Jet2<NT, NR> {
    let rr = Jet2::<NT, NR>::var_r(r);
    promote(&co.k) + rr * promote(&co.k.d()) * 0.5 + promote(&co.tv20t)
}

/// w_{1,cm}: the Taylor expansion of w₁ near the axis through r⁴.
pub fn w1_cm<const NT: usize, const NR: usize>(co: &SecondCoeffs, r: f64) -> Jet2<NT, NR> {
    let rr = Jet2::<NT, NR>::var_r(r);
    let mut acc = Jet2::<NT, NR>::zero();
    let mut kd = co.k;
    let mut fact = 1.0;
    let mut rp = Jet2::<NT, NR>::c(1.0);
    for j in 0..=4usize {
        fact *= (j + 1) as f64;
        acc = acc + rp * promote(&kd) / fact;
        kd = kd.d();
        rp = rp * rr;
    }
    let tv = &co.tv20t;
    acc + promote(tv)
        + rr * rr * promote(&tv.d().d()) / 6.0
        + rr * rr * rr * rr * promote(&tv.d().d().d().d()) / 120.0
}

/// w_{1,main} = w_{1,cm} + r⁵ k⁽⁵⁾/720.
pub fn w1_main<const NT: usize, const NR: usize>(co: &SecondCoeffs, r: f64) -> Jet2<NT, NR> {
    let rr = Jet2::<NT, NR>::var_r(r);
    w1_cm(co, r) + rr.powi(5) * promote(&co.k.d().d().d().d().d()) / 720.0
}

/// v_{2,lm}(t) = -15π√λ λ''/8 (equals t v_{2,0}(t) once ψ ≡ 1).
pub fn v2_lm<const NT: usize, const NR: usize>(co: &SecondCoeffs) -> Jet2<NT, NR> {
    promote(&co.b)
}

/// v_{2,qm} = v_{2,lm} + r² b₁.
pub fn v2_qm<const NT: usize, const NR: usize>(co: &SecondCoeffs, r: f64) -> Jet2<NT, NR> {
    let rr = Jet2::<NT, NR>::var_r(r);
    v2_lm(co) + rr * rr * promote(&co.b1)
}

/// v_{2,main} = t v_{2,0} + (r²/6)(t v_{2,0})'' + (r⁴/120)(t v_{2,0})''''.
pub fn v2_main<const NT: usize, const NR: usize>(co: &SecondCoeffs, r: f64) -> Jet2<NT, NR> {
    let rr = Jet2::<NT, NR>::var_r(r);
    promote(&co.tv20)
        + rr * rr * promote(&co.tv20.d().d()) / 6.0
        + rr.powi(4) * promote(&co.tv20.d().d().d().d()) / 120.0
}

/// u_{w,2,ell,0,0}(t,r) = P/r² + (q₂ + q₁ ln(√3λ/r))/r.
pub fn u_w2_ell00<const NT: usize, const NR: usize>(
    co: &SecondCoeffs,
    r: f64,
) -> Jet2<NT, NR> {
    let rr = Jet2::<NT, NR>::var_r(r);
    let lam = promote::<NT, NR>(&co.lam);
    promote(&co.pcoef) / (rr * rr)
        + (promote(&co.q2) + promote(&co.q1) * (lam * SQRT3 / rr).ln()) / rr
}

/// u_{w,2,ell,0,1}(t,r) = -(45/2)a₁λ²r + (45/4)λ²(6b₁ + 3√3π a₁ λ + b₁ ln(9λ⁴/r⁴)).
pub fn u_w2_ell01<const NT: usize, const NR: usize>(
    co: &SecondCoeffs,
    r: f64,
) -> Jet2<NT, NR> {
    let rr = Jet2::<NT, NR>::var_r(r);
    let lam = promote::<NT, NR>(&co.lam);
    let a1 = promote::<NT, NR>(&co.a1);
    let b1 = promote::<NT, NR>(&co.b1);
    let l2 = lam * lam;
    a1 * l2 * rr * (-22.5)
        + l2 * (b1 * 6.0 + a1 * lam * (3.0 * SQRT3 * PI) + b1 * (l2 * l2 * 9.0 / rr.powi(4)).ln())
            * (45.0 / 4.0)
}

/// Slot-1 second derivative of u_{w,2,ell,0,0} at fixed radius y, as t-jets:
/// P''/y² + (q₂'' + M'' - q₁'' ln y)/y.
pub fn dtt_u_w2_ell00_jets(co: &SecondCoeffs, y: f64) -> Jet<3> {
    let p2 = trunc3(&co.pcoef.d().d());
    let a = trunc3(&(co.q2.d().d() + co.mcoef.d().d()));
    let q1dd = trunc3(&co.q1.d().d());
    p2 / (y * y) + (a - q1dd * y.ln()) / y
}

/// The same with the P''/y² part removed (the combination entering the
/// third-order data).
pub fn dtt_u_w2_ell00_minus_p_jets(co: &SecondCoeffs, y: f64) -> Jet<3> {
    let a = trunc3(&(co.q2.d().d() + co.mcoef.d().d()));
    let q1dd = trunc3(&co.q1.d().d());
    (a - q1dd * y.ln()) / y
}

/// Slot-1 second derivative of v_{ex,ell,0} at fixed radius y, as t-jets:
/// (g₃ + g₂'' ln(4y²/(3λ²)))/y.
pub fn dtt_vexell0_jets(co: &SecondCoeffs, y: f64) -> Jet<3> {
    let g3 = trunc3(&co.g3);
    let g2dd = trunc3(&co.g2.d().d());
    let laml = trunc3(&co.lam);
    (g3 + g2dd * ((laml * laml).recip() * (4.0 * y * y / 3.0)).ln()) / y
}

fn trunc3(c: &CJet) -> Jet<3> {
    Jet { c: [c.c[0], c.c[1], c.c[2]] }
}

/// u_{w,3,ell,0}(t,r) = -(1/r)∫_λ^r y²∂₁²u00 dy + ∫_λ^r y∂₁²u00 dy, evaluated
/// from the elementary antiderivatives of the slot-1 closed form.
pub fn u_w3_ell0<const NT: usize, const NR: usize>(co: &SecondCoeffs, r: f64) -> Jet2<NT, NR> {
    let rr = Jet2::<NT, NR>::var_r(r);
    let lam = promote::<NT, NR>(&co.lam);
    let p2 = promote::<NT, NR>(&co.pcoef.d().d());
    let aa = promote::<NT, NR>(&(co.q2.d().d() + co.mcoef.d().d()));
    let q1dd = promote::<NT, NR>(&co.q1.d().d());
    // ∫ y ln y dy = y²(ln y)/2 - y²/4 ; ∫ ln y dy = y ln y - y
    let f1 = |x: Jet2<NT, NR>| x * x * x.ln() * 0.5 - x * x * 0.25;
    let f2 = |x: Jet2<NT, NR>| x * x.ln() - x;
    let i1 = p2 * (rr - lam) + aa * (rr * rr - lam * lam) * 0.5 - q1dd * (f1(rr) - f1(lam));
    let i2 = p2 * (rr / lam).ln() + aa * (rr - lam) - q1dd * (f2(rr) - f2(lam));
    -i1 / rr + i2
}

/// v_{ex,sub,ell}(t,r) = -(1/r)∫_λ^r x²∂₁²v_{ex,ell,0} dx + ∫_λ^r x∂₁²v_{ex,ell,0} dx.
pub fn vexsubell<const NT: usize, const NR: usize>(co: &SecondCoeffs, r: f64) -> Jet2<NT, NR> {
    let rr = Jet2::<NT, NR>::var_r(r);
    let lam = promote::<NT, NR>(&co.lam);
    let g2dd = promote::<NT, NR>(&co.g2.d().d());
    let bb = promote::<NT, NR>(&co.g3)
        + g2dd * ((lam * lam).recip() * (4.0 / 3.0)).ln();
    let cc = g2dd * 2.0;
    let f1 = |x: Jet2<NT, NR>| x * x * x.ln() * 0.5 - x * x * 0.25;
    let f2 = |x: Jet2<NT, NR>| x * x.ln() - x;
    let j1 = bb * (rr * rr - lam * lam) * 0.5 + cc * (f1(rr) - f1(lam));
    let j2 = bb * (rr - lam) + cc * (f2(rr) - f2(lam));
    -j1 / rr + j2
}

fn alphas(co: &SecondCoeffs) -> (CJet, CJet, CJet) {
    let a2 = (co.k.d().d() + co.tv20t.d().d() + co.tv20.d().d()) / 6.0;
    let a3 = co.a1;
    let a4 = (co.k.d().d().d().d() + co.tv20t.d().d().d().d()) / 120.0;
    (a2, a3, a4)
}

/// u_{ell,3,main}(t,r) = ∫_λ^r (-x²/r + x) ∂₁²(w_{1,cm} - w_{1,lm} + v_{2,qm} - v_{2,lm}) dx,
/// with the integrand the polynomial α₂''x² + α₃''x³ + α₄''x⁴.
pub fn u_ell3_main<const NT: usize, const NR: usize>(co: &SecondCoeffs, r: f64) -> Jet2<NT, NR> {
    let (a2, a3, a4) = alphas(co);
    let a2 = promote::<NT, NR>(&a2.d().d());
    let a3 = promote::<NT, NR>(&a3.d().d());
    let a4 = promote::<NT, NR>(&a4.d().d());
    let rr = Jet2::<NT, NR>::var_r(r);
    let lam = promote::<NT, NR>(&co.lam);
    let pw = |x: Jet2<NT, NR>, n: i32| x.powi(n);
    -(a2 * (pw(rr, 5) - pw(lam, 5)) / 5.0
        + a3 * (pw(rr, 6) - pw(lam, 6)) / 6.0
        + a4 * (pw(rr, 7) - pw(lam, 7)) / 7.0)
        / rr
        + a2 * (pw(rr, 4) - pw(lam, 4)) / 4.0
        + a3 * (pw(rr, 5) - pw(lam, 5)) / 5.0
        + a4 * (pw(rr, 6) - pw(lam, 6)) / 6.0
}

/// The identity partner of u_{ell,3,main}:
/// -∫_0^λ (-x²/r + x) ∂₁²(w_{1,cm} - w_{1,lm} + v_{2,qm} - v_{2,lm}) dx,
/// which must equal u_{ell,3,main} - (w_{1,main} - w_{1,cm} + v_{2,main} - v_{2,qm}).
pub fn u_ell3_main_defect<const NT: usize, const NR: usize>(
    co: &SecondCoeffs,
    r: f64,
) -> Jet2<NT, NR> {
    let (a2, a3, a4) = alphas(co);
    let a2 = promote::<NT, NR>(&a2.d().d());
    let a3 = promote::<NT, NR>(&a3.d().d());
    let a4 = promote::<NT, NR>(&a4.d().d());
    let rr = Jet2::<NT, NR>::var_r(r);
    let lam = promote::<NT, NR>(&co.lam);
    let pw = |x: Jet2<NT, NR>, n: i32| x.powi(n);
    (a2 * pw(lam, 5) / 5.0 + a3 * pw(lam, 6) / 6.0 + a4 * pw(lam, 7) / 7.0) / rr
        - (a2 * pw(lam, 4) / 4.0 + a3 * pw(lam, 5) / 5.0 + a4 * pw(lam, 6) / 6.0)
}

/// The three tail integrals entering both the matching defect e_{m,2} and
/// the leading part of the second near-origin correction:
/// i1 = ∫_1^∞ ξ² ∂₁²(u00 + v_{ex,ell,0})(t, λξ) φ₀⁺(ξ) dξ,
/// i2 = ∫_1^∞ s²λ² ∂₁²e_{ell,1}(t, sλ) φ₀(s) ds,
/// i3 = ∫_0^1 s²λ² ∂₁²u_ell(t, sλ) φ₀(s) ds,
/// all as t-jets through order 2 (slot-1 partials evaluated along y = sλ(t)).
pub fn matching_tail_integrals(
    profile: &ScaleProfile,
    t: f64,
    engine: &QuadEngine,
) -> Result<([Jet<3>; 3], f64)> {
    let co = SecondCoeffs::at(profile, t);
    let lam = trunc3(&co.lam);
    let lamc = co.lam;
    let p2 = trunc3(&co.pcoef.d().d());
    let q2m2 = trunc3(&(co.q2.d().d() + co.mcoef.d().d()));
    let q1dd = trunc3(&co.q1.d().d());
    let g3 = trunc3(&co.g3);
    let g2dd = trunc3(&co.g2.d().d());
    let lnl = lam.ln();
    let i1 = engine.integrate_semi_infinite(
        |xi: f64| {
            let y = lam * xi;
            let d_u00 = p2 / (y * y) + (q2m2 - q1dd * (lnl + xi.ln())) / y;
            let d_vex = (g3 + g2dd * (4.0 * xi * xi / 3.0).ln()) / y;
            (d_u00 + d_vex) * (xi * xi * phi0_plus(xi))
        },
        1.0,
        3.0,
    )?;

    let lam0 = lamc.c[0];
    let dl = Jet::<3> { c: [0.0, lamc.c[1], lamc.c[2]] };
    let l_tr = Jet2::<5, 3>::from_t_jet(&lamc);
    let l1_tr = Jet2::<5, 3>::from_t_jet(&lamc.d());
    let l2_tr = Jet2::<5, 3>::from_t_jet(&lamc.d().d());
    let i2 = engine.integrate_semi_infinite(
        |s: f64| {
            let h = e_ell1(l_tr, l1_tr, l2_tr, Jet2::<5, 3>::var_r(s * lam0));
            slot1_dd_along(&h, &(dl * s)) * (s * s * phi0(s)) * (lam * lam)
        },
        1.0,
        5.0,
    )?;

    let i3 = engine.integrate(
        |s: f64| {
            let h = u_ell(l_tr, l1_tr, l2_tr, Jet2::<5, 3>::var_r(s * lam0));
            slot1_dd_along(&h, &(dl * s)) * (s * s * phi0(s)) * (lam * lam)
        },
        0.0,
        1.0,
    )?;
    Ok(([i1.value, i2.value, i3.value], i1.err + i2.err + i3.err))
}

/// e_{m,2}(t) with derivatives through order 2, plus the certified quadrature
/// error. The three integral terms are delegated to the engine; everything
/// else is jet algebra.
pub fn e_m2_jets(
    profile: &ScaleProfile,
    t: f64,
    engine: &QuadEngine,
) -> Result<(Jet<3>, f64)> {
    let ([i1, i2, i3], qerr) = matching_tail_integrals(profile, t, engine)?;
    let co = SecondCoeffs::at(profile, t);
    let lam = trunc3(&co.lam);
    let a_dd = trunc3(&co.a.d().d());
    let b_dd = trunc3(&co.b.d().d());
    let a1 = trunc3(&co.a1);
    let b1 = trunc3(&co.b1);
    let l2j = lam * lam;
    let l3j = l2j * lam;
    let value = i1 * l2j * (-2.0 / SQRT3)
        + l3j * a_dd * (43.0 / 6.0)
        + l2j * b_dd * (53.0 / 4.0)
        + l2j / 12.0 * (lam * a_dd * 206.0 + b_dd * (3.0 * (13.0 + 30.0 * 1.5f64.ln())))
        - i2 * (2.0 / SQRT3)
        - i3 * (2.0 / SQRT3)
        - l2j * (b1 * (6.0 + 9.0f64.ln()) + a1 * lam * (3.0 * SQRT3 * PI)) * (45.0 / 4.0);
    let err = qerr * (l2j.norm() + 1.0) * (2.0 / SQRT3);
    Ok((value, err))
}

/// u_{ell,2,main}(t, r): the non-decaying part of the large-r expansion of
/// the second near-origin correction, as (t, r) jets (t-orders valid to 2).
pub fn u_ell2_main_tr(
    profile: &ScaleProfile,
    t: f64,
    r: f64,
    engine: &QuadEngine,
) -> Result<(Jet2<4, 3>, f64)> {
    let ([i1, i2, i3], qerr) = matching_tail_integrals(profile, t, engine)?;
    let co = SecondCoeffs::at(profile, t);
    let lam = promote::<4, 3>(&co.lam);
    let rr = Jet2::<4, 3>::var_r(r);
    let a_dd = promote::<4, 3>(&co.a.d().d());
    let b_dd = promote::<4, 3>(&co.b.d().d());
    let l2j = lam * lam;
    let pr4 = |j: &Jet<3>| {
        let mut out = Jet2::<4, 3>::zero();
        for i in 0..3 {
            out.c[i][0] = j.c[i];
        }
        out
    };
    let value = vexsubell::<4, 3>(&co, r)
        + u_w3_ell0::<4, 3>(&co, r)
        + pr4(&i1) * l2j * (-2.0 / SQRT3)
        - l2j * (rr / lam).ln() * b_dd * 7.5
        + rr.powi(3) * a_dd / 12.0
        + rr * rr * b_dd / 6.0
        - l2j * a_dd * rr * (15.0 / 8.0)
        + l2j * lam * a_dd * (43.0 / 6.0)
        + l2j * b_dd * (53.0 / 4.0)
        + l2j / 12.0 * (lam * a_dd * 206.0 + b_dd * (3.0 * (13.0 + 30.0 * 1.5f64.ln())))
        - pr4(&i2) * (2.0 / SQRT3)
        - pr4(&i3) * (2.0 / SQRT3);
    Ok((value, qerr * (l2j.norm() + 1.0) * (2.0 / SQRT3)))
}
