//! Numerical laboratory for a quantum autonomous oscillator in the hard
//! excitation regime.
//!
//! The classical oscillator ż = −iωz − ε₁z + ε₂z|z|² − cz|z|⁴ is lifted
//! to a Lindblad master equation with channels √ε₁ â, √(ε₂/2) â⁺²,
//! √(c/3) â³ on a truncated Fock space. The crate computes stationary
//! populations three independent ways — full Liouvillian kernel, diagonal
//! recurrence, and the closed-form small-nonlinearity expression in
//! γ = ε₂/(2ε₁) — classifies the population-ordering bands, and compares
//! against the soft-excitation oscillator and the classical limit.
//!
//! See the `examples/` directory for one runnable example per capability
//! and the `qao` binary for the CSV-emitting command line.

// link the system BLAS/LAPACK backend
use openblas_src as _;

pub mod analytic;
pub mod classical;
pub mod cli;
pub mod config;
pub mod error;
pub mod fock;
pub mod liouvillian;
pub mod model;
pub mod recurrence;

pub use error::{Error, Result};
pub use fock::{DensityMatrix, FockOperator, FockSpace};
pub use model::{GammaRatio, HardParams, SoftParams};
pub use recurrence::PopulationVector;
