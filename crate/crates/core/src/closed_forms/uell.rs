//! The first near-origin correction u_ell, its matching-region leading part,
//! and the remainder e_{ell,1}: everything in closed form once λ's jets are
//! supplied.

use super::homogeneous::{f1, f10, f11, f2, f20, f21, phi0, phi0_plus};
use crate::jet::{Jet2, Real};
use crate::scale::ScaleProfile;

const SQRT3: f64 = 1.732050807568877293527446341505872367_f64;
const PI: f64 = std::f64::consts::PI;

/// The coefficient fixed by first-order matching:
/// c₁ = 3((74 - 30 log 4) λ'² + (75π² - 4(53 + 5 log 4)) λ λ'') / (16 √λ).
pub fn c1_coef<S: Real>(lam: S, lam1: S, lam2: S) -> S {
    let ln4 = 4.0f64.ln();
    (lam1 * lam1 * (74.0 - 30.0 * ln4)
        + lam * lam2 * (75.0 * PI * PI - 4.0 * (53.0 + 5.0 * ln4)))
        * 3.0
        / (lam.sqrt() * 16.0)
}

/// u_ell(t, r) = f₁(R) λ'²/√λ + f₂(R) √λ λ'' + c₁(t) φ₀(R), R = r/λ.
pub fn u_ell<S: Real>(lam: S, lam1: S, lam2: S, r: S) -> S {
    let big_r = r / lam;
    f1(big_r) * lam1 * lam1 / lam.sqrt()
        + f2(big_r) * lam.sqrt() * lam2
        + c1_coef(lam, lam1, lam2) * phi0(big_r)
}

/// Matching-region leading part of u_ell.
pub fn u_ell_main<S: Real>(lam: S, lam1: S, lam2: S, r: S) -> S {
    let big_r = r / lam;
    c1_coef(lam, lam1, lam2) * lam * (-SQRT3 / 2.0) / r
        + f10(big_r) * lam1 * lam1 / lam.sqrt()
        + f20(big_r) * lam.sqrt() * lam2
}

/// e_{ell,1} = u_ell - u_ell,main, assembled from the cancellation-safe
/// difference forms (valid at any radius).
pub fn e_ell1<S: Real>(lam: S, lam1: S, lam2: S, r: S) -> S {
    let big_r = r / lam;
    f11(big_r) * lam1 * lam1 / lam.sqrt()
        + f21(big_r) * lam.sqrt() * lam2
        + c1_coef(lam, lam1, lam2) * phi0_plus(big_r)
}

/// u_ell as a (t, r) jet from a profile.
pub fn u_ell_tr<const NT: usize, const NR: usize>(
    profile: &ScaleProfile,
    t: f64,
    r: f64,
) -> Jet2<NT, NR> {
    let l = profile.lambda_at(Jet2::<NT, NR>::var_t(t));
    let lj = profile.lambda_jet(t);
    let l1 = Jet2::from_t_jet(&lj.d());
    let l2 = Jet2::from_t_jet(&lj.d().d());
    u_ell(l, l1, l2, Jet2::var_r(r))
}
