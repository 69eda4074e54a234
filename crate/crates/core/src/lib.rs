//! Numerical toolkit for modulated-soliton dynamics of the radial quintic
//! focusing wave equation in three space dimensions.
//!
//! The crate builds the full matched correction hierarchy around a soliton
//! with a time-dependent scale factor, verifies its algebraic matching
//! identities and decay-rate estimates, and validates the assembled ansatz
//! end-to-end with a finite-difference simulation of the nonlinear equation.
//!
//! Modules follow the pipeline:
//! * [`scale`] — admissible scale factors λ(t), symbol constants, matching length
//! * [`closed_forms`] — every exactly-known function (soliton, potential,
//!   homogeneous pair, correction coefficients, cutoffs)
//! * [`quadrature`] — certified adaptive integration and the wave-equation
//!   kernels (spherical means, source tails, variation of parameters)
//! * [`corrections`] — the lazily built correction hierarchy and residuals
//! * [`matching`] — exact identity checks and statistical rate checks
//! * [`pde`] — the radial leapfrog solver and energy accounting

pub mod closed_forms;
pub mod corrections;
pub mod error;
pub mod grid1d;
pub mod jet;
pub mod matching;
pub mod pde;
pub mod quadrature;
pub mod scale;

pub use error::{Error, Result};
pub use jet::{CJet, Jet, Jet2, Real, TJet};
