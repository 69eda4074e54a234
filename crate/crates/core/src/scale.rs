//! Admissible time-dependent scale factors λ(t).
//!
//! A [`ScaleProfile`] supplies λ and its first six derivatives analytically
//! (through jet arithmetic, i.e. exact chain/product rules — never finite
//! differences). On top of that this module estimates the symbol constants
//! certifying −C_l/t ≤ λ'/λ ≤ C_u/t and |λ^(k)|/λ ≤ C_k/t^k, checks the
//! admissibility inequalities, and produces the matching length
//! h(t) = λ(t) (t/λ(t))^a.

use crate::error::{Error, Result};
use crate::jet::{CJet, Jet, Jet2, Real};
use std::fmt;
use std::sync::Arc;

/// Tower exponentials: TOWER[k] = exp applied k times to 1.
const TOWER: [f64; 4] = [1.0, std::f64::consts::E, 15.154262241479262, 3814279.1047602734];

#[derive(Clone)]
pub enum ProfileKind {
    /// λ ≡ c
    Constant { c: f64 },
    /// λ = c t^p
    Power { c: f64, p: f64 },
    /// λ = c log^α(t)
    LogPower { c: f64, alpha: f64 },
    /// λ = t^ε ∏ (g_k(t + T_k))^{α_k} with g_k the k-fold logarithm
    IteratedLogProduct { eps: f64, factors: Vec<(u32, f64)> },
    /// λ = (l0 log^{-a0} t + l1 log^{a1} t)/2 + ((l1 log^{a1} t - l0 log^{-a0} t)/2) sin(log log t)
    OscillatoryLog { l0: f64, l1: f64, a0: f64, a1: f64 },
    /// λ = c0 t^a (2 + c sin(log t))
    OscillatoryPower { c0: f64, a: f64, c: f64 },
    /// user-supplied jet evaluator
    Custom(Arc<dyn Fn(f64) -> CJet + Send + Sync>),
}

impl fmt::Debug for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileKind::Constant { c } => write!(f, "Constant {{ c: {c} }}"),
            ProfileKind::Power { c, p } => write!(f, "Power {{ c: {c}, p: {p} }}"),
            ProfileKind::LogPower { c, alpha } => write!(f, "LogPower {{ c: {c}, alpha: {alpha} }}"),
            ProfileKind::IteratedLogProduct { eps, factors } => {
                write!(f, "IteratedLogProduct {{ eps: {eps}, factors: {factors:?} }}")
            }
            ProfileKind::OscillatoryLog { l0, l1, a0, a1 } => {
                write!(f, "OscillatoryLog {{ l0: {l0}, l1: {l1}, a0: {a0}, a1: {a1} }}")
            }
            ProfileKind::OscillatoryPower { c0, a, c } => {
                write!(f, "OscillatoryPower {{ c0: {c0}, a: {a}, c: {c} }}")
            }
            ProfileKind::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// A positive scale factor valid for t ≥ t_lambda, with analytic derivatives
/// up to order 6.
#[derive(Clone, Debug)]
pub struct ScaleProfile {
    pub kind: ProfileKind,
    pub t_lambda: f64,
}

fn eval_kind<S: Real>(kind: &ProfileKind, t: S) -> S {
    match kind {
        ProfileKind::Constant { c } => S::c(*c),
        ProfileKind::Power { c, p } => t.powf(*p) * *c,
        ProfileKind::LogPower { c, alpha } => t.ln().powf(*alpha) * *c,
        ProfileKind::IteratedLogProduct { eps, factors } => {
            let mut acc = t.powf(*eps);
            for &(k, alpha) in factors {
                let kk = (k as usize).min(3);
                let mut g = t + TOWER[kk];
                for _ in 0..kk {
                    g = g.ln();
                }
                acc = acc * g.powf(alpha);
            }
            acc
        }
        ProfileKind::OscillatoryLog { l0, l1, a0, a1 } => {
            let lg = t.ln();
            let lo = lg.powf(-*a0) * *l0;
            let hi = lg.powf(*a1) * *l1;
            (lo + hi) * 0.5 + (hi - lo) * 0.5 * lg.ln().sin()
        }
        ProfileKind::OscillatoryPower { c0, a, c } => {
            t.powf(*a) * (t.ln().sin() * *c + 2.0) * *c0
        }
        ProfileKind::Custom(_) => unreachable!("custom profiles are routed through their jets"),
    }
}

impl ScaleProfile {
    pub fn new(kind: ProfileKind, t_lambda: f64) -> Self {
        ScaleProfile { kind, t_lambda }
    }

    /// Map a (kind, params) pair from a config file onto a profile.
    pub fn from_kind_params(kind: &str, params: &[f64], t_lambda: f64) -> Result<Self> {
        let need = |n: usize| -> Result<()> {
            if params.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "lambda.kind {kind:?} needs {n} params, got {}",
                    params.len()
                )));
            }
            Ok(())
        };
        let kind = match kind {
            "constant" => {
                need(1)?;
                ProfileKind::Constant { c: params[0] }
            }
            "power" => {
                need(2)?;
                ProfileKind::Power { c: params[0], p: params[1] }
            }
            "log-power" => {
                need(2)?;
                ProfileKind::LogPower { c: params[0], alpha: params[1] }
            }
            "iterated-log-product" => {
                if params.is_empty() || params.len() % 2 == 0 {
                    return Err(Error::InvalidArgument(
                        "iterated-log-product params: [eps, k1, a1, k2, a2, ...]".into(),
                    ));
                }
                let eps = params[0];
                let factors = params[1..]
                    .chunks(2)
                    .map(|c| (c[0] as u32, c[1]))
                    .collect();
                ProfileKind::IteratedLogProduct { eps, factors }
            }
            "oscillatory-log" => {
                need(4)?;
                ProfileKind::OscillatoryLog {
                    l0: params[0],
                    l1: params[1],
                    a0: params[2],
                    a1: params[3],
                }
            }
            "oscillatory-power" => {
                need(3)?;
                ProfileKind::OscillatoryPower { c0: params[0], a: params[1], c: params[2] }
            }
            other => {
                return Err(Error::InvalidArgument(format!("unknown lambda.kind {other:?}")))
            }
        };
        Ok(ScaleProfile::new(kind, t_lambda))
    }

    /// λ with derivatives 0..=6 at time t.
    pub fn lambda_jet(&self, t: f64) -> CJet {
        match &self.kind {
            ProfileKind::Custom(f) => f(t),
            kind => eval_kind(kind, Jet::var(t)),
        }
    }

    /// λ(t).
    #[inline]
    pub fn lambda(&self, t: f64) -> f64 {
        match &self.kind {
            ProfileKind::Constant { c } => *c,
            ProfileKind::Custom(f) => f(t).c[0],
            kind => eval_kind(kind, t),
        }
    }

    /// λ^(k)(t) for k ≤ 6.
    pub fn deriv(&self, k: usize, t: f64) -> f64 {
        assert!(k <= 6, "profiles supply derivatives up to order 6");
        self.lambda_jet(t).deriv(k)
    }

    /// λ evaluated at a bivariate jet argument (e.g. t + r), carrying all
    /// mixed derivatives the argument carries.
    pub fn lambda_at<const NT: usize, const NR: usize>(
        &self,
        u: Jet2<NT, NR>,
    ) -> Jet2<NT, NR> {
        match &self.kind {
            ProfileKind::Custom(f) => u.compose_series(&f(u.val())),
            kind => eval_kind(kind, u),
        }
    }

    /// true when λ' ≡ 0 (every correction collapses to zero).
    pub fn is_constant(&self) -> bool {
        matches!(self.kind, ProfileKind::Constant { .. })
    }
}

/// Sampled symbol constants for a profile over a stated time range.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SymbolConstants {
    pub c_u: f64,
    pub c_l: f64,
    /// c_k[i] certifies order k = i + 2, for k = 2..=6.
    pub c_k: [f64; 5],
    pub sample_t: (f64, f64),
}

impl SymbolConstants {
    pub fn zero(range: (f64, f64)) -> Self {
        SymbolConstants { c_u: 0.0, c_l: 0.0, c_k: [0.0; 5], sample_t: range }
    }
    pub fn max_ul(&self) -> f64 {
        self.c_u.max(self.c_l)
    }
}

/// Tightest symbol constants over a geometric grid of `n` points on
/// [t_min, t_max]. Constants are monotone under grid refinement.
pub fn sample_symbol_constants(
    profile: &ScaleProfile,
    t_min: f64,
    t_max: f64,
    n: usize,
) -> Result<SymbolConstants> {
    if !(t_min >= profile.t_lambda) {
        return Err(Error::InvalidArgument(format!(
            "t_min = {t_min} below profile validity t_lambda = {}",
            profile.t_lambda
        )));
    }
    if n < 2 || !(t_max > t_min) {
        return Err(Error::InvalidArgument("need n >= 2 and t_max > t_min".into()));
    }
    let mut sc = SymbolConstants::zero((t_min, t_max));
    let lr = (t_max / t_min).ln();
    for i in 0..n {
        let t = t_min * (lr * i as f64 / (n - 1) as f64).exp();
        let j = profile.lambda_jet(t);
        let lam = j.c[0];
        if !(lam > 0.0) || !lam.is_finite() {
            return Err(Error::ProfileInvalid(format!("lambda({t}) = {lam} is not positive")));
        }
        let ratio = j.deriv(1) / lam * t;
        sc.c_u = sc.c_u.max(ratio.max(0.0));
        sc.c_l = sc.c_l.max((-ratio).max(0.0));
        for k in 2..=6usize {
            let v = (j.deriv(k) / lam).abs() * t.powi(k as i32);
            sc.c_k[k - 2] = sc.c_k[k - 2].max(v);
        }
    }
    Ok(sc)
}

/// User-supplied operator constants that this artifact cannot compute.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct OperatorNorms {
    /// transference-operator norm on the α = 0 weighted space
    pub k0: f64,
    /// norm on the α = 1/2 space
    pub khalf: f64,
    /// commutator norm on the α = 0 space
    pub kcomm: f64,
    /// spectral-density comparability constant
    pub crho: f64,
}

impl Default for OperatorNorms {
    fn default() -> Self {
        OperatorNorms { k0: 1.0, khalf: 1.0, kcomm: 1.0, crho: 1.0 }
    }
}

/// Admissibility report for a set of symbol constants.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConstraintReport {
    pub c0_ok: bool,
    pub c0_lhs: f64,
    pub c0_rhs: f64,
    pub c1_value: f64,
    pub c1_bound: f64,
    pub c1_ok: bool,
    pub c2_value: f64,
    pub c2_bound: f64,
    pub c2_ok: bool,
    pub notes: String,
}

/// Evaluate the three admissibility inequalities. The operator norms entering
/// the second and third are user-supplied placeholders and flagged as such.
pub fn check_constraints(sc: &SymbolConstants, norms: &OperatorNorms) -> ConstraintReport {
    let c0_lhs = sc.c_l + 163.0 / 2352.0 * sc.c_u;
    let c0_rhs = 1.0 / 588.0;
    let m = sc.max_ul();
    let c2 = sc.c_k[0];
    let ln4 = 4.0_f64.ln();
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let c1_value = 40.0
        * (3.0 * m * m / 16.0 * (111.0 - 45.0 * ln4)
            + 15.0 * c2 / 16.0 * (-12.0 + 12.0 * 3.0_f64.sqrt() + 15.0 * pi2 - 4.0 * ln4))
        + 2.0
            * (c2 * (1.0 + norms.k0)
                + m * m * (norms.k0 + 2.0 * norms.kcomm + norms.k0 * norms.k0)
                + 2.0 * m * (1.0 + norms.k0));
    let c1_bound = 1.0 / (12.0 * norms.crho.sqrt());
    let c2_value = m * (1.0 + norms.khalf);
    let c2_bound = 1.0 / (48.0 * norms.crho.sqrt());
    ConstraintReport {
        c0_ok: c0_lhs < c0_rhs,
        c0_lhs,
        c0_rhs,
        c1_value,
        c1_bound,
        c1_ok: c1_value < c1_bound,
        c2_value,
        c2_bound,
        c2_ok: c2_value < c2_bound,
        notes: "operator norms are user-supplied placeholders, not computed".into(),
    }
}

/// Admissible window for the matching exponent a.
pub fn exponent_window(sc: &SymbolConstants) -> Result<(f64, f64)> {
    let (cu, cl) = (sc.c_u, sc.c_l);
    let lo = 2.0 * (2.0 + 2.5 * cu + 84.0 * cl) / (7.0 * (1.0 - cu));
    let hi1 = 2.0 * (4.0 - 7.0 * cu - 12.0 * cl) / (13.0 * (1.0 - cu));
    let hi2 = 2.0 * (1.0 - 4.0 * cu - 12.0 * cl) / (3.0 * (1.0 - cu));
    let hi = hi1.min(hi2);
    if !(lo < hi) {
        let failing = if hi1 <= hi2 { "upper bound 2(4-7Cu-12Cl)/(13(1-Cu))" } else { "upper bound 2(1-4Cu-12Cl)/(3(1-Cu))" };
        return Err(Error::ConstraintViolation(format!(
            "empty exponent window: lower bound {lo:.6} >= {failing} = {hi:.6}"
        )));
    }
    Ok((lo, hi))
}

/// Midpoint of the admissible exponent window.
pub fn default_exponent(sc: &SymbolConstants) -> Result<f64> {
    let (lo, hi) = exponent_window(sc)?;
    Ok(0.5 * (lo + hi))
}

/// Midpoint of the window when it exists, else the zero-constant midpoint
/// 54/91. Desk-scale simulation profiles (|exponent| up to 0.05) violate the
/// first admissibility inequality, yet still need a matching length to
/// assemble the ansatz; the fallback keeps h(t) well-defined there.
pub fn exponent_or_fallback(sc: &SymbolConstants) -> f64 {
    default_exponent(sc).unwrap_or(54.0 / 91.0)
}

/// Matching length h(t) = λ(t)^{1-a} t^a.
pub fn matching_length(profile: &ScaleProfile, a: f64, t: f64) -> f64 {
    profile.lambda(t).powf(1.0 - a) * t.powf(a)
}

/// h(t) as a jet in t (the assembly cutoffs need its time derivatives).
pub fn matching_length_jet<const NT: usize, const NR: usize>(
    profile: &ScaleProfile,
    a: f64,
    t: Jet2<NT, NR>,
) -> Jet2<NT, NR> {
    let lam = profile.lambda_at(t);
    lam.powf(1.0 - a) * t.powf(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn power(c: f64, p: f64) -> ScaleProfile {
        ScaleProfile::new(ProfileKind::Power { c, p }, 100.0)
    }

    /// symbolic-differentiation oracle for the power family
    fn power_deriv(c: f64, p: f64, k: usize, t: f64) -> f64 {
        let mut a = c;
        for i in 0..k {
            a *= p - i as f64;
        }
        a * t.powf(p - k as f64)
    }

    #[test]
    fn power_family_matches_symbolic_oracle() {
        let pr = power(1.3, 0.04);
        for k in 0..=6 {
            for &t in &[150.0, 1e4, 3e6] {
                assert_relative_eq!(
                    pr.deriv(k, t),
                    power_deriv(1.3, 0.04, k, t),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn symbol_constants_power_up() {
        // λ = t^0.01: C_u = 0.01, C_l = 0, C_2 = 0.01*0.99
        let sc = sample_symbol_constants(&power(1.0, 0.01), 100.0, 1e8, 4000).unwrap();
        assert_relative_eq!(sc.c_u, 0.01, max_relative = 1e-12);
        assert_eq!(sc.c_l, 0.0);
        assert_relative_eq!(sc.c_k[0], 0.01 * 0.99, max_relative = 1e-12);
    }

    #[test]
    fn symbol_constants_power_down() {
        // λ = t^-0.05: C_l = 0.05, C_u = 0, C_2 = 0.05*1.05
        let sc = sample_symbol_constants(&power(1.0, -0.05), 100.0, 1e8, 4000).unwrap();
        assert_relative_eq!(sc.c_l, 0.05, max_relative = 1e-12);
        assert_eq!(sc.c_u, 0.0);
        assert_relative_eq!(sc.c_k[0], 0.05 * 1.05, max_relative = 1e-12);
    }

    #[test]
    fn symbol_constants_constant_profile() {
        let pr = ScaleProfile::new(ProfileKind::Constant { c: 2.0 }, 100.0);
        let sc = sample_symbol_constants(&pr, 100.0, 1e6, 500).unwrap();
        assert_eq!(sc.c_u, 0.0);
        assert_eq!(sc.c_l, 0.0);
        assert_eq!(sc.c_k, [0.0; 5]);
    }

    #[test]
    fn constants_monotone_under_refinement() {
        let pr = ScaleProfile::new(
            ProfileKind::OscillatoryPower { c0: 1.0, a: 0.02, c: 0.1 },
            100.0,
        );
        let coarse = sample_symbol_constants(&pr, 100.0, 1e6, 200).unwrap();
        let fine = sample_symbol_constants(&pr, 100.0, 1e6, 3583).unwrap();
        assert!(fine.c_u + 1e-15 >= coarse.c_u);
        assert!(fine.c_l + 1e-15 >= coarse.c_l);
        for i in 0..5 {
            assert!(fine.c_k[i] + 1e-15 >= coarse.c_k[i]);
        }
    }

    #[test]
    fn nonpositive_lambda_rejected() {
        let pr = ScaleProfile::new(ProfileKind::Constant { c: -1.0 }, 100.0);
        assert!(matches!(
            sample_symbol_constants(&pr, 100.0, 1e4, 10),
            Err(Error::ProfileInvalid(_))
        ));
    }

    #[test]
    fn constraint_c0_examples() {
        let mut sc = SymbolConstants::zero((100.0, 1e6));
        let norms = OperatorNorms::default();
        // Cl=0.001, Cu=0.01 -> 0.0016930 < 0.0017007
        sc.c_l = 0.001;
        sc.c_u = 0.01;
        let rep = check_constraints(&sc, &norms);
        assert!(rep.c0_ok);
        assert_relative_eq!(rep.c0_lhs, 0.001 + 0.01 * 163.0 / 2352.0, max_relative = 1e-15);
        // Cl=0.002, Cu=0 -> false
        sc.c_l = 0.002;
        sc.c_u = 0.0;
        assert!(!check_constraints(&sc, &norms).c0_ok);
        // zero constants -> true
        sc.c_l = 0.0;
        assert!(check_constraints(&sc, &norms).c0_ok);
    }

    #[test]
    fn exponent_window_zero_constants() {
        let sc = SymbolConstants::zero((100.0, 1e6));
        let (lo, hi) = exponent_window(&sc).unwrap();
        assert_relative_eq!(lo, 4.0 / 7.0, max_relative = 1e-15);
        assert_relative_eq!(hi, 8.0 / 13.0, max_relative = 1e-15);
        assert_relative_eq!(default_exponent(&sc).unwrap(), 54.0 / 91.0, max_relative = 1e-14);
    }

    #[test]
    fn exponent_window_empty_errors() {
        let mut sc = SymbolConstants::zero((100.0, 1e6));
        sc.c_u = 0.5;
        assert!(matches!(exponent_window(&sc), Err(Error::ConstraintViolation(_))));
    }

    #[test]
    fn matching_length_examples() {
        let unit = ScaleProfile::new(ProfileKind::Constant { c: 1.0 }, 1.0);
        assert_relative_eq!(
            matching_length(&unit, 0.6, 100.0),
            100.0_f64.powf(0.6),
            max_relative = 1e-14
        );
        // λ = t^0.01, a = 0.59 -> h = t^{0.01*0.41 + 0.59}
        let pr = power(1.0, 0.01);
        let t = 1e4;
        assert_relative_eq!(
            matching_length(&pr, 0.59, t),
            t.powf(0.01 * 0.41 + 0.59),
            max_relative = 1e-13
        );
    }

    #[test]
    fn matching_length_increasing_on_catalog() {
        let catalog: Vec<ScaleProfile> = vec![
            power(1.0, 0.01),
            power(1.0, -0.05),
            ScaleProfile::new(ProfileKind::OscillatoryPower { c0: 1.0, a: 0.02, c: 0.1 }, 100.0),
            ScaleProfile::new(
                ProfileKind::OscillatoryLog { l0: 1.0, l1: 2.0, a0: 0.2, a1: 0.3 },
                100.0,
            ),
            ScaleProfile::new(
                ProfileKind::IteratedLogProduct { eps: 0.005, factors: vec![(2, 0.5)] },
                100.0,
            ),
        ];
        for pr in &catalog {
            let sc = sample_symbol_constants(pr, 1e4, 1e8, 2000).unwrap();
            let a = exponent_or_fallback(&sc);
            let mut prev = 0.0;
            let mut prev_sqrt_ratio = f64::INFINITY;
            for i in 0..200 {
                let t = 1e4 * (1e4_f64.ln() * i as f64 / 199.0).exp();
                let h = matching_length(pr, a, t);
                assert!(h > prev, "h not increasing for {:?} at t={t}", pr.kind);
                prev = h;
                prev_sqrt_ratio = prev_sqrt_ratio.min(h / t.sqrt());
            }
            assert!(prev_sqrt_ratio > 1e-3, "h(t)/sqrt(t) lower bound degenerate");
        }
    }

    #[test]
    fn remark_closure_iterated_log_profiles_admissible() {
        // t^{±ε} ∏ h_{β,α}: the first inequality is strongly asymmetric
        // (C_l enters with weight 1, C_u with 163/2352), so the shrinking
        // branch needs a much smaller exponent. The iterated-log factors
        // contribute constants that decay like 1/log t, hence the far-out
        // sampling range.
        for eps in [0.01, -0.0008] {
            let pr = ScaleProfile::new(
                ProfileKind::IteratedLogProduct {
                    eps,
                    factors: vec![(1, 0.05), (2, -0.05)],
                },
                100.0,
            );
            let sc = sample_symbol_constants(&pr, 1e10, 1e14, 4000).unwrap();
            let rep = check_constraints(&sc, &OperatorNorms::default());
            assert!(rep.c0_ok, "constraint failed for eps={eps}: {rep:?}");
        }
    }

    #[test]
    fn centered_difference_consistency_all_families() {
        let catalog: Vec<ScaleProfile> = vec![
            power(1.3, 0.04),
            power(0.7, -0.05),
            ScaleProfile::new(ProfileKind::LogPower { c: 2.0, alpha: 0.7 }, 100.0),
            ScaleProfile::new(ProfileKind::OscillatoryPower { c0: 1.0, a: 0.02, c: 0.1 }, 100.0),
            ScaleProfile::new(
                ProfileKind::OscillatoryLog { l0: 1.0, l1: 2.0, a0: 0.2, a1: 0.3 },
                100.0,
            ),
            ScaleProfile::new(
                ProfileKind::IteratedLogProduct { eps: 0.01, factors: vec![(1, 0.5), (3, 1.0)] },
                100.0,
            ),
            ScaleProfile::new(ProfileKind::Constant { c: 1.0 }, 100.0),
        ];
        for pr in &catalog {
            for k in 0..=5usize {
                for i in 0..100 {
                    let t = 200.0 * (9.0 * i as f64 / 99.0).exp();
                    let h = 1.2e-4 * t;
                    let cd = (pr.deriv(k, t + h) - pr.deriv(k, t - h)) / (2.0 * h);
                    let d = pr.deriv(k + 1, t);
                    assert!(
                        (cd - d).abs() <= 1e-6 * d.abs() + 1e-12,
                        "family {:?} k={k} t={t}: cd={cd:e} deriv={d:e}",
                        pr.kind
                    );
                }
            }
        }
    }
}
