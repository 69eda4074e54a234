//! The homogeneous pair (φ₀, e₂) of the linearized elliptic operator, the
//! coefficient functions f₁, f₂ of the first near-origin correction, their
//! matching-region leading parts f_{1,0}, f_{2,0}, and the differences
//! f_{1,1}, f_{2,1}.
//!
//! The differences are the numerically delicate pieces: both terms are O(R)
//! while the difference is O(log R / R³), so the naive subtraction loses all
//! digits by R ~ 10³. Each difference therefore switches to an exact
//! rationalized form (f_{1,1}) or a frozen high-precision asymptotic series
//! (f_{2,1}) beyond a crossover radius.

use crate::jet::Real;

const SQRT3: f64 = 1.732050807568877293527446341505872367_f64;
const PI: f64 = std::f64::consts::PI;

/// φ₀(R) = -√3 (R² - 3) / (2 (R² + 3)^{3/2}); bounded solution, φ₀(0) = 1/2.
pub fn phi0<S: Real>(r: S) -> S {
    let d = r * r + 3.0;
    (r * r - 3.0) * (-0.5 * SQRT3) / (d * d.sqrt())
}

/// e₂(R) = 2 (R⁴ - 18R² + 9) / (√3 R (R² + 3)^{3/2}); singular like 2/R at 0.
pub fn e2<S: Real>(r: S) -> S {
    let r2 = r * r;
    let d = r2 + 3.0;
    (r2 * r2 - r2 * 18.0 + 9.0) * (2.0 / SQRT3) / (r * d * d.sqrt())
}

/// φ₀(R) + √3/(2R), rationalized: the two O(1/R) tails cancel exactly and the
/// result decays like R^{-3} without subtraction loss.
pub fn phi0_plus<S: Real>(r: S) -> S {
    let r2 = r * r;
    let d = r2 + 3.0;
    let d32 = d * d.sqrt();
    let num = (r2 * r2 * 15.0 + r2 * 18.0 + 27.0) * (SQRT3 / 2.0);
    num / (r * d32 * (d32 + r * r2 - r * 3.0))
}

/// f₁(R) = -√3 R² (R² - 3) / (8 (R² + 3)^{3/2}).
pub fn f1<S: Real>(r: S) -> S {
    let d = r * r + 3.0;
    r * r * (r * r - 3.0) * (-SQRT3 / 8.0) / (d * d.sqrt())
}

/// f_{1,0}(R) = 15√3/(16R) - √3 R/8.
pub fn f10<S: Real>(r: S) -> S {
    r.recip() * (15.0 * SQRT3 / 16.0) - r * (SQRT3 / 8.0)
}

/// f_{1,1} = f₁ - f_{1,0}. Exact rationalized form for R ≥ 4 (the direct
/// subtraction loses ~R⁴ in relative accuracy).
pub fn f11<S: Real>(r: S) -> S {
    if r.val() < 4.0 {
        return f1(r) - f10(r);
    }
    let r2 = r * r;
    let t = (r2 + 3.0).sqrt();
    let u = r2 * r2 * 2.0 - r2 * 9.0 - 45.0;
    let p = r2 * r2 * r2 * 243.0 - r2 * r2 * 513.0 - r2 * 4455.0 - 6075.0;
    let conj = r * r2 * (r2 * 2.0 - 6.0) + u * t;
    p * (-SQRT3 / 8.0) / (conj * r * 2.0 * t * t * t)
}

/// Even Taylor coefficients of f₂ at R = 0 (orders R², R⁴, ..., R²²).
const F2_SERIES: [f64; 11] = [
    -1.0 / 12.0,
    1.0 / 24.0,
    -97.0 / 6048.0,
    655.0 / 108864.0,
    -21199.0 / 9580032.0,
    1797239.0 / 2241727488.0,
    -7725505.0 / 26900729856.0,
    93268411.0 / 914624815104.0,
    -29994873665.0 / 834137831374848.0,
    27046352167.0 / 2144925852106752.0,
    -106661604253.0 / 24233899100995584.0,
];

/// f₂(R): coefficient of √λ λ'' in the first near-origin correction. The
/// closed form is a 0/0 at the origin; below R = 0.4 the frozen Taylor series
/// is used instead (crossover chosen so both branches carry ≥ 12 digits).
pub fn f2<S: Real>(r: S) -> S {
    if r.val() < 0.4 {
        let r2 = r * r;
        let mut acc = S::c(0.0);
        for &c in F2_SERIES.iter().rev() {
            acc = acc * r2 + c;
        }
        return acc * r2;
    }
    let r2 = r * r;
    let d = r2 + 3.0;
    let num = r
        * ((r2 * r2 - r2 * 66.0 + 45.0) + (r2 - 3.0) * (d / 3.0).ln() * 30.0)
        * SQRT3
        - (r2 * r2 - r2 * 18.0 + 9.0) * (r / SQRT3).atan() * 15.0;
    num / (r * d * d.sqrt() * 4.0)
}

/// f_{2,0}(R) = 675π/(16R²) - 3√3(37 - 20 log(R²/3))/(8R) + √3R/4 - 15π/8.
pub fn f20<S: Real>(r: S) -> S {
    let r2 = r * r;
    (r2).recip() * (675.0 * PI / 16.0)
        - r.recip() * ((-(r2 / 3.0).ln() * 20.0 + 37.0) * (3.0 * SQRT3 / 8.0))
        + r * (SQRT3 / 4.0)
        - 15.0 * PI / 8.0
}

/// Frozen asymptotic coefficients of f_{2,1}(R) = Σ (A_k + B_k ln R)/R^k,
/// k = 3..=12 (odd k carry the log terms), accurate to ~4e-17 at R = 25.
const F21_A: [f64; 10] = [
    148.7670411207015575,
    -629.5457153482661553,
    -527.7549925369596058,
    2375.7067244226250383,
    1805.6774477851008766,
    -8331.04236391392473,
    -5999.0581351801792665,
    27816.002787127040357,
    8599.2299611636335875,
    -36310.746783346307417,
];
const F21_B: [f64; 10] = [
    -194.85571585149869543, // = -225√3/2
    0.0,
    789.16564919738282174, // = 3645√3/8
    0.0,
    -2849.7645359676100357,
    0.0,
    9777.6537916921758267,
    0.0,
    -28368.164837215691400,
    0.0,
];

/// f_{2,1} = f₂ - f_{2,0}; direct below R = 25, asymptotic series above.
pub fn f21<S: Real>(r: S) -> S {
    if r.val() < 25.0 {
        return f2(r) - f20(r);
    }
    let lr = r.ln();
    let rinv = r.recip();
    let mut acc = S::c(0.0);
    for k in (0..10).rev() {
        acc = (acc + lr * F21_B[k] + F21_A[k]) * rinv;
    }
    acc * rinv.powi(2)
}
