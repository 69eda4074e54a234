//! Smooth cutoffs. The plateaus are contractual; the transition shape is the
//! standard exp(-1/x) partition bump, symmetric about the midpoint.

use crate::jet::Real;

/// C^∞ step: 0 for x ≤ 0, 1 for x ≥ 1, strictly increasing in between,
/// value 1/2 at the midpoint.
pub fn smoothstep<S: Real>(x: S) -> S {
    let v = x.val();
    if v <= 0.0 {
        S::c(0.0)
    } else if v >= 1.0 {
        S::c(1.0)
    } else {
        let a = (-x.recip()).exp();
        let b = (-(-x + 1.0).recip()).exp();
        a / (a + b)
    }
}

/// 1 on [0, 1], 0 on [2, ∞).
pub fn chi_le1<S: Real>(x: S) -> S {
    -smoothstep(x - 1.0) + 1.0
}

/// Complement: 0 on [0, 1], 1 on [2, ∞).
pub fn chi_ge1<S: Real>(x: S) -> S {
    smoothstep(x - 1.0)
}

/// 0 for x ≤ t_lambda, 1 for x ≥ 2 t_lambda.
pub fn psi<S: Real>(x: S, t_lambda: f64) -> S {
    smoothstep((x - t_lambda) / t_lambda)
}

/// 1 for x ≤ 1/2, 0 for x ≥ 3/4.
pub fn psi1<S: Real>(x: S) -> S {
    -smoothstep((x - 0.5) * 4.0) + 1.0
}

/// 0 for x ≤ 1/4, 1 for x ≥ 1/2.
pub fn psi2<S: Real>(x: S) -> S {
    smoothstep((x - 0.25) * 4.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;
    use approx::assert_relative_eq;

    #[test]
    fn plateaus() {
        assert_eq!(chi_le1(0.5), 1.0);
        assert_eq!(chi_le1(3.0), 0.0);
        assert_eq!(psi2(0.2), 0.0);
        assert_eq!(psi2(0.7), 1.0);
        assert_eq!(psi1(0.4), 1.0);
        assert_eq!(psi1(0.8), 0.0);
        assert_eq!(psi(50.0, 100.0), 0.0);
        assert_eq!(psi(250.0, 100.0), 1.0);
    }

    #[test]
    fn partition_of_unity_and_midpoint() {
        for i in 0..40 {
            let x = 0.1 + 2.4 * i as f64 / 39.0;
            assert_relative_eq!(chi_le1(x) + chi_ge1(x), 1.0, max_relative = 1e-15);
        }
        assert_relative_eq!(smoothstep(0.5), 0.5, max_relative = 1e-15);
        assert_relative_eq!(chi_le1(1.5), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn jets_are_smooth_across_transition() {
        // first two derivatives from jets match finite differences
        let h = 1e-6;
        for &x in &[1.2, 1.5, 1.9] {
            let j = chi_le1(Jet::<3>::var(x));
            let d1 = (chi_le1(x + h) - chi_le1(x - h)) / (2.0 * h);
            let d2 = (chi_le1(x + h) - 2.0 * chi_le1(x) + chi_le1(x - h)) / (h * h);
            assert_relative_eq!(j.deriv(1), d1, max_relative = 1e-7);
            assert_relative_eq!(j.deriv(2), d2, max_relative = 1e-3, epsilon = 1e-6);
        }
        // deep plateau: derivatives vanish identically
        let j = chi_le1(Jet::<3>::var(0.3));
        assert_eq!(j.deriv(1), 0.0);
        let j = chi_le1(Jet::<3>::var(2.5));
        assert_eq!(j.deriv(1), 0.0);
    }
}
