//! The static bubble Q_λ, the linearization potential, and the exactly
//! cancelled large-r combination of ∂_t Q_λ with the first far-field
//! correction's time derivative.

use crate::jet::{Jet2, Real};
use crate::scale::ScaleProfile;

/// Q_λ(r) = λ^{-1/2} (r²/(3λ²) + 1)^{-1/2} = √(3λ) / √(r² + 3λ²).
pub fn soliton<S: Real>(lam: S, r: S) -> S {
    (lam * 3.0).sqrt() / (r * r + lam * lam * 3.0).sqrt()
}

/// Q_λ(t)(r) with λ from the profile, as a (t, r) jet.
pub fn soliton_scaled<const NT: usize, const NR: usize>(
    profile: &ScaleProfile,
    t: f64,
    r: f64,
) -> Jet2<NT, NR> {
    let lam = profile.lambda_at(Jet2::<NT, NR>::var_t(t));
    soliton(lam, Jet2::var_r(r))
}

/// V(t, r) = -45 λ² / (r² + 3λ²)², the (negative of the) linearization
/// potential; -V = 5 Q_λ⁴ identically.
pub fn potential<S: Real>(lam: S, r: S) -> S {
    let d = r * r + lam * lam * 3.0;
    lam * lam * (-45.0) / (d * d)
}

/// ∂_t Q_λ(t)(r) = (√3/2) λ' (r² - 3λ²) / (√λ (r² + 3λ²)^{3/2}).
pub fn dt_q<S: Real>(lam: S, lam1: S, r: S) -> S {
    let d = r * r + lam * lam * 3.0;
    lam1 * (r * r - lam * lam * 3.0) * (3.0f64.sqrt() / 2.0) / (lam.sqrt() * d * d.sqrt())
}

/// ∂_t² Q_λ(t)(r), written term by term in (λ, λ', λ'').
pub fn dtt_q<S: Real>(lam: S, lam1: S, lam2: S, r: S) -> S {
    let s3 = 3.0f64.sqrt();
    let d = r * r + lam * lam * 3.0;
    let dh = d.sqrt();
    let d32 = d * dh;
    let d52 = d * d * dh;
    let t_l2 = lam2 * s3 * (lam.sqrt().recip() / dh * 0.5 - lam.powf(1.5) / d32 * 3.0);
    let t_l1 = lam1 * lam1 * s3
        * (-lam.powf(-1.5) / dh * 0.25 - lam.sqrt() / d32 * 6.0 + lam.powf(2.5) / d52 * 27.0);
    t_l2 + t_l1
}

/// RHS(t, r) = ∂_t² Q_λ - √3 (2λλ'' - λ'²) / (4 r λ^{3/2}): the part of the
/// soliton's linear error that decays like r^{-3}. Written cancellation-free:
/// 1/√(r²+3λ²) - 1/r is evaluated as -3λ²/(r √(r²+3λ²) (r + √(r²+3λ²))).
pub fn rhs_source<S: Real>(lam: S, lam1: S, lam2: S, r: S) -> S {
    let s3 = 3.0f64.sqrt();
    let d = r * r + lam * lam * 3.0;
    let dh = d.sqrt();
    let d32 = d * dh;
    let d52 = d * d * dh;
    // 1/dh - 1/r, exactly
    let diff = lam * lam * (-3.0) / (r * dh * (r + dh));
    lam2 * s3 * (diff / lam.sqrt() * 0.5 - lam.powf(1.5) / d32 * 3.0)
        + lam1
            * lam1
            * s3
            * (diff * lam.powf(-1.5) * (-0.25) - lam.sqrt() / d32 * 6.0
                + lam.powf(2.5) / d52 * 27.0)
}

/// The exact cancellation in ∂_t(w_{1,0} + Q_λ): each term decays like 1/r,
/// the combination strictly faster.
pub fn dt_w10_plus_q_cancellation(profile: &ScaleProfile, t: f64, r: f64) -> f64 {
    let s3 = 3.0f64.sqrt();
    let l = profile.lambda(t);
    let l1 = profile.deriv(1, t);
    let jtr = profile.lambda_jet(t + r);
    let (ltr, l1tr) = (jtr.c[0], jtr.deriv(1));
    let d = r * r + 3.0 * l * l;
    // λ'/(√λ r) ((1 + 3λ²/r²)^{-3/2} - 1): the parenthesis equals
    // (r³ - d^{3/2})/d^{3/2}; rationalized to avoid the large-r cancellation.
    let r3 = r * r * r;
    let d32 = d * d.sqrt();
    let paren = (r3 * r3 - d32 * d32) / (d32 * (r3 + d32));
    s3 / 2.0
        * (l1 / (l.sqrt() * r) * paren - 3.0 * l.powf(1.5) * l1 / d32 + l1tr / (r * ltr.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{Jet, TJet};
    use crate::scale::{ProfileKind, ScaleProfile};
    use approx::assert_relative_eq;

    #[test]
    fn soliton_values() {
        assert_relative_eq!(soliton(1.0, 0.0), 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            soliton(1.0, 3.0f64.sqrt()),
            0.5f64.sqrt(),
            max_relative = 1e-15
        );
        // scaling identity Q_2(2r) = 2^{-1/2} Q_1(r)
        for &r in &[0.5, 1.0, 5.0] {
            assert_relative_eq!(
                soliton(2.0, 2.0 * r),
                soliton(1.0, r) / 2.0f64.sqrt(),
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn soliton_solves_ground_state_equation() {
        // Q'' + 2/r Q' + Q^5 = 0 at 100 radii, residual <= 1e-10
        for i in 0..100 {
            let r = 0.05 + 30.0 * i as f64 / 99.0;
            let q = soliton(Jet::<3>::c(1.0), Jet::<3>::var(r));
            let resid = q.deriv(2) + 2.0 / r * q.deriv(1) + q.deriv(0).powi(5);
            assert!(resid.abs() <= 1e-10, "residual {resid:e} at r={r}");
        }
    }

    #[test]
    fn potential_is_minus_five_q_fourth() {
        for i in 0..20 {
            let r = 0.1 + i as f64;
            for &lam in &[0.5, 1.0, 3.7] {
                let v = potential(lam, r);
                assert_relative_eq!(-v, 5.0 * soliton(lam, r).powi(4), max_relative = 1e-13);
                assert_relative_eq!(potential(lam, 0.0), -5.0 / (lam * lam), max_relative = 1e-15);
            }
        }
    }

    #[test]
    fn potential_far_field_asymptote() {
        // V -> -45 λ²/r⁴: ratio 1 within 1e-5 at r = 1e3 λ
        let lam = 0.8;
        let r = 1e3 * lam;
        let v = potential(lam, r);
        assert_relative_eq!(v / (-45.0 * lam * lam / r.powi(4)), 1.0, epsilon = 1e-5);
    }

    #[test]
    fn dtt_q_matches_jet_differentiation() {
        let profile = ScaleProfile::new(ProfileKind::Power { c: 1.3, p: 0.04 }, 50.0);
        let (t, r) = (800.0, 5.0);
        let q: TJet = soliton_scaled(&profile, t, r);
        let j = profile.lambda_jet(t);
        let direct = dtt_q(j.c[0], j.deriv(1), j.deriv(2), r);
        assert_relative_eq!(q.deriv(2, 0), direct, max_relative = 1e-12);
        let d1 = dt_q(j.c[0], j.deriv(1), r);
        assert_relative_eq!(q.deriv(1, 0), d1, max_relative = 1e-12);
    }

    #[test]
    fn rhs_is_dtt_q_minus_leading() {
        let profile = ScaleProfile::new(ProfileKind::Power { c: 1.3, p: 0.04 }, 50.0);
        let t = 500.0;
        let j = profile.lambda_jet(t);
        let (l, l1, l2) = (j.c[0], j.deriv(1), j.deriv(2));
        for &r in &[0.3, 2.0, 40.0] {
            let lead = 3.0f64.sqrt() * (2.0 * l * l2 - l1 * l1) / (4.0 * r * l.powf(1.5));
            assert_relative_eq!(
                rhs_source(l, l1, l2, r),
                dtt_q(l, l1, l2, r) - lead,
                max_relative = 1e-9
            );
        }
        // r³-weighted boundedness of the remainder at large radius
        for &r in &[1e2 * l, 1e3 * l, 1e4 * l] {
            let lead = 3.0f64.sqrt() * (2.0 * l * l2 - l1 * l1) / (4.0 * r * l.powf(1.5));
            let ratio = rhs_source(l, l1, l2, r) * r.powi(3) / lead.abs().max(1e-300);
            assert!(ratio.is_finite());
            assert!(
                (rhs_source(l, l1, l2, r) * r.powi(3)).abs() < 1e3 * (l * l * lead * r).abs(),
            );
        }
    }

    #[test]
    fn cancellation_matches_direct_sum_and_decays() {
        let profile = ScaleProfile::new(ProfileKind::Power { c: 1.0, p: 0.01 }, 50.0);
        let t = 2000.0;
        for i in 0..30 {
            let r = 1.0 * 10f64.powf(4.0 * i as f64 / 29.0);
            let jt = profile.lambda_jet(t);
            let jtr = profile.lambda_jet(t + r);
            let direct = dt_q(jt.c[0], jt.deriv(1), r)
                + 3.0f64.sqrt()
                    * (jtr.deriv(1) / (2.0 * jtr.c[0].sqrt())
                        - jt.deriv(1) / (2.0 * jt.c[0].sqrt()))
                    / r;
            let formula = dt_w10_plus_q_cancellation(&profile, t, r);
            assert_relative_eq!(formula, direct, max_relative = 1e-9);
        }
        // r * |value| -> 0 for large r (faster than 1/r decay)
        let v1 = dt_w10_plus_q_cancellation(&profile, t, 1e3).abs() * 1e3;
        let v2 = dt_w10_plus_q_cancellation(&profile, t, 1e5).abs() * 1e5;
        assert!(v2 < v1);
    }
}
