//! Verification of log-submodularity and (strong) log-concavity for
//! distributions over subsets, given as multi-affine generating polynomials
//! `g(x) = Σ_S p(S) ∏_{v∈S} x_v`.
//!
//! * [`checkers::check_nlc`] decides the negative lattice condition exactly.
//! * [`checkers::check_slc`] checks every derivative `∂^A g` for
//!   log-concavity on the positive orthant, preferring exact certificates
//!   and falling back to seeded sampling.
//! * [`family`] sweeps the symmetric three-variable family and emits region
//!   tables; [`repro`] replays the counterexample end to end.

pub mod calculus;
pub mod checkers;
pub mod cli;
pub mod error;
pub mod family;
pub mod linalg;
pub mod poly;
pub mod repro;
pub mod scalar;
pub mod sparse;

pub use error::{Error, Result};
pub use poly::{PositivePoint, Subset, SubsetPoly};
pub use scalar::ExactScalar;
pub use sparse::SparsePoly;
