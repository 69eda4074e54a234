//! Exact evaluators for every closed-form function in the construction:
//! soliton and potential, the homogeneous pair of the linearized operator,
//! the near-origin correction and its matching-region leading parts, the
//! far-field forms, the second-order coefficient functions, and the smooth
//! cutoffs gluing the regions together.
//!
//! Everything is generic over [`crate::jet::Real`], so each formula written
//! here once yields values and exact (t, r)-derivatives alike.

pub mod cutoffs;
pub mod far;
pub mod homogeneous;
pub mod second;
pub mod soliton;
pub mod uell;

pub use cutoffs::{chi_ge1, chi_le1, psi, psi1, psi2, smoothstep};
pub use far::{
    f3, rhs_source_tr, v20, v20_jet, v20_tilde, v20_tilde_jet, vexell, vexell0,
    vexell_minus_vexell0, w10,
};
pub use homogeneous::{e2, f1, f10, f11, f2, f20, f21, phi0, phi0_plus};
pub use second::SecondCoeffs;
pub use soliton::{
    dt_q, dt_w10_plus_q_cancellation, dtt_q, potential, rhs_source, soliton, soliton_scaled,
};
pub use uell::{c1_coef, e_ell1, u_ell, u_ell_main, u_ell_tr};

/// A space-time evaluation point with the rescaled radius attached.
#[derive(Clone, Copy, Debug)]
pub struct Point {
    pub t: f64,
    pub r: f64,
    /// r / λ(t)
    pub big_r: f64,
}

/// Derivative orders requested from an evaluator: `j` time orders (0..=3) and
/// `k` radial orders (0..=2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetRequest {
    pub j: usize,
    pub k: usize,
}

impl JetRequest {
    pub fn value() -> Self {
        JetRequest { j: 0, k: 0 }
    }
    pub fn new(j: usize, k: usize) -> Self {
        assert!(j <= 3 && k <= 2, "jets are carried to (3, 2)");
        JetRequest { j, k }
    }
}
