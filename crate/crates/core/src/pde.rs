//! Finite-difference solver (placeholder during bring-up).
