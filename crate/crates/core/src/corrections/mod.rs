//! The correction hierarchy around the rescaled bubble: free waves, far-field
//! and near-origin corrections, the nonlinear layer, assembly into the full
//! ansatz, and the residual bundle.

pub mod far;
pub mod third_order;
pub mod waves;
