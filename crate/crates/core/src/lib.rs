//! Quasi-parabolic composition operators on the Hardy space of the upper
//! half-plane, realized as finite matrices.
//!
//! The operator `f ↦ f(z + ψ(z))` is discretized in a Paley–Wiener model of
//! `H²`: a uniform spatial grid on `[-L, L)` paired with its frequency grid,
//! where Hardy functions are exactly the vectors supported on nonnegative
//! frequencies. The operator is expanded as a norm-convergent series of
//! Toeplitz operators times Fourier multipliers with a computable tail bound,
//! cross-checked against a direct Cauchy-integral quadrature, and its finite
//! sections are compared with the predicted essential spectrum (unions of
//! logarithmic spirals `e^{izt}` plus the origin).
//!
//! Modules:
//! - [`symbols`]: analytic symbols, the Cayley transform, cluster sets and
//!   essential ranges at infinity.
//! - [`halfline`]: grids, Hardy projection, Fourier multipliers, Toeplitz and
//!   dilation operators, dense assembly and matrix I/O.
//! - [`expansion`]: α selection, series planning with certified truncation,
//!   the series operator and the quadrature oracle.
//! - [`spectra`]: spiral-set prediction, eigenvalues, pseudospectral
//!   indicators, Hausdorff comparison, essential-normality diagnostics.
//! - [`cli`]: the config-driven batch front end.
//! - [`acceptance`]: the end-to-end acceptance experiments, shared by the
//!   `selftest` subcommand and the `acceptance` test target.

pub mod acceptance;
pub mod cli;
mod error;
pub mod exec;
pub mod expansion;
pub mod halfline;
pub mod spectra;
pub mod symbols;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Crate version recorded in artifact metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
