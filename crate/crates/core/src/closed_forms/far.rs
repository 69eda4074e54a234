//! Far-field closed forms: the first large-r correction's explicit part, the
//! free-wave Cauchy velocities, the integrated source profile f₃, and the
//! elliptic far-field solutions.

use super::cutoffs::psi;
use super::soliton::rhs_source;
use crate::jet::{CJet, Jet, Jet2, Real};
use crate::scale::ScaleProfile;

const SQRT3: f64 = 1.732050807568877293527446341505872367_f64;
const PI: f64 = std::f64::consts::PI;

/// w_{1,0}(t, r) = √3 (√λ(r+t) - √λ(t)) / r.
pub fn w10<const NT: usize, const NR: usize>(
    profile: &ScaleProfile,
    t: f64,
    r: f64,
) -> Jet2<NT, NR> {
    let tt = Jet2::<NT, NR>::var_t(t);
    let rr = Jet2::<NT, NR>::var_r(r);
    let ltr = profile.lambda_at(tt + rr);
    let lt = profile.lambda_at(tt);
    (ltr.sqrt() - lt.sqrt()) * SQRT3 / rr
}

/// Data velocity of the cancellation wave: ψ(ρ)(-√3 λ'(ρ) / (2√λ(ρ)))/ρ.
pub fn v20_tilde(profile: &ScaleProfile, rho: f64) -> f64 {
    v20_tilde_jet(profile, rho).c[0]
}

/// Same, with derivatives in ρ (valid through order 4).
pub fn v20_tilde_jet(profile: &ScaleProfile, rho: f64) -> CJet {
    if rho <= profile.t_lambda {
        return Jet::zero();
    }
    let l = profile.lambda_jet(rho);
    let l1 = l.d();
    let rj = CJet::var(rho);
    psi(rj, profile.t_lambda) * (l1 * (-SQRT3 / 2.0) / l.sqrt()) / rj
}

/// Data velocity of the matched free wave: ψ(ρ)(-15π √λ(ρ) λ''(ρ)/8)/ρ.
pub fn v20(profile: &ScaleProfile, rho: f64) -> f64 {
    v20_jet(profile, rho).c[0]
}

/// Same, with derivatives in ρ (valid through order 4).
pub fn v20_jet(profile: &ScaleProfile, rho: f64) -> CJet {
    if rho <= profile.t_lambda {
        return Jet::zero();
    }
    let l = profile.lambda_jet(rho);
    let l2 = l.d().d();
    let rj = CJet::var(rho);
    psi(rj, profile.t_lambda) * (l.sqrt() * l2 * (-15.0 * PI / 8.0)) / rj
}

/// f₃(s, x) = (π/2) ∫_x^∞ r RHS(s, r) dr in closed form. The difference
/// √(3λ²+x²) - x is evaluated as 3λ²/(√(3λ²+x²) + x).
pub fn f3<S: Real>(lam: S, lam1: S, lam2: S, x: S) -> S {
    let l2 = lam * lam;
    let d = l2 * 3.0 + x * x;
    let s = d.sqrt();
    let s_minus_x = l2 * 3.0 / (s + x);
    let t1 = (x * l2 * (s + x * 6.0) * 3.0 + x * x * x * s_minus_x + l2 * l2 * 27.0)
        * lam1
        * lam1
        * (-SQRT3 * PI / 8.0)
        / (lam * d).powf(1.5);
    let t2 = (x * (-s_minus_x) + l2 * 9.0) * lam2 * (-PI / 4.0) / (x * x * lam / 3.0 + l2 * lam).sqrt();
    t1 + t2
}

/// v_{ex,ell}(t, r): the elliptic particular solution driven by the
/// subleading soliton error; r - √(3λ²+r²) handled cancellation-free.
pub fn vexell<S: Real>(lam: S, lam1: S, lam2: S, r: S) -> S {
    let l2 = lam * lam;
    let d = l2 * 3.0 + r * r;
    let s = d.sqrt();
    let r_minus_s = l2 * (-3.0) / (r + s);
    let ash = (r / (lam * SQRT3)).asinh();
    let a = (r * r_minus_s + l2 * (ash * 45.0 - r * 24.0 / s)) * lam1 * lam1 * SQRT3
        / (r * lam.powf(1.5) * 8.0);
    let b = (-r * r_minus_s + l2 * ash * 15.0) * lam2 * SQRT3 / (r * lam.sqrt() * 4.0);
    a + b
}

/// Principal matching-region part of v_{ex,ell}:
/// [g₁ + g₂ log(4r²/(3λ²))]/r with the standard g₁, g₂ coefficients.
pub fn vexell0<S: Real>(lam: S, lam1: S, lam2: S, r: S) -> S {
    let lg = (r * r * (4.0 / 3.0) / (lam * lam)).ln();
    let g1 = lam.sqrt() * (lam1 * lam1 * (-17.0) + lam * lam2 * 2.0) * (3.0 * SQRT3 / 16.0);
    let g2 = lam.sqrt() * (lam1 * lam1 * 15.0 + lam * lam2 * 10.0) * (3.0 * SQRT3 / 16.0);
    (g1 + g2 * lg) / r
}

/// v_{ex,ell} - v_{ex,ell,0}, exactly: the O(log r / r) tails of the two
/// pieces cancel analytically, leaving
///   √3λ'²/(8rλ^{3/2})·[-rδ - 24λ²r/S + λ²(45 L₂ + 51/2)]
/// + √3λ'' /(4r√λ)  ·[ rδ + 15λ² L₂ - (3/2)λ²]
/// with S = √(r²+3λ²), δ = S - r = 3λ²/(S+r), L₂ = ln((r+S)/(2r)).
pub fn vexell_minus_vexell0<S: Real>(lam: S, lam1: S, lam2: S, r: S) -> S {
    let l2 = lam * lam;
    let s = (r * r + l2 * 3.0).sqrt();
    let delta = l2 * 3.0 / (s + r);
    let log2term = (delta / (r * 2.0)).ln_1p();
    let t1 = (-r * delta - l2 * r * 24.0 / s + l2 * (log2term * 45.0 + 25.5))
        * lam1
        * lam1
        * (SQRT3 / 8.0)
        / (r * lam.powf(1.5));
    let t2 = (r * delta + l2 * log2term * 15.0 - l2 * 1.5) * lam2 * (SQRT3 / 4.0)
        / (r * lam.sqrt());
    t1 + t2
}

/// RHS(t, r) as a (t, r) jet from a profile.
pub fn rhs_source_tr<const NT: usize, const NR: usize>(
    profile: &ScaleProfile,
    t: f64,
    r: f64,
) -> Jet2<NT, NR> {
    let lj = profile.lambda_jet(t);
    let l = Jet2::from_t_jet(&lj);
    let l1 = Jet2::from_t_jet(&lj.d());
    let l2 = Jet2::from_t_jet(&lj.d().d());
    rhs_source(l, l1, l2, Jet2::var_r(r))
}
