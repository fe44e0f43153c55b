//! Bound-state eigensolver for wave equations reducible to
//!
//! ```text
//! Ψ''(s) + (k1 − k2 s) / (s (1 − k3 s)) Ψ'(s) + (A s² + B s + C) / (s² (1 − k3 s)²) Ψ(s) = 0
//! ```
//!
//! Three engines solve for the same spectral value: the closed-form
//! [`formula`] method, the numeric asymptotic iteration method in [`aim`],
//! and a Numerov [`shooting`] oracle that integrates the original radial
//! equation. [`catalog`] holds the supported potential models.

// `!(x < y)` is used on purpose so that NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aim;
pub mod canonical;
pub mod catalog;
pub mod error;
pub mod formula;
pub mod hypergeom;
pub mod roots;
pub mod shooting;

pub use canonical::{
    compute_k4, compute_k5, CanonicalCoefficients, CoefficientMap, QuantumNumbers, Regime,
    SolutionParams, SpectralUnknown, K3_EPSILON,
};
pub use error::{Error, Result};
pub use formula::{solve_eigenvalue, EigenResult, Engine};
