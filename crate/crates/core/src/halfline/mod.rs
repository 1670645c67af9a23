//! Discrete Paley–Wiener model of `H²` of the upper half-plane.
//!
//! A [`HardyGrid`] pairs `N` spatial samples on `[-L, L)` with `N`
//! frequencies `t_j = j·π/L`, `j = -N/2 … N/2 - 1`. The unitary transform
//! between them discretizes `f(x) = (2π)^{-1/2} ∫ f̂(t) e^{ixt} dt`, so Hardy
//! vectors are exactly those supported on `t ≥ 0`. Operators act on the
//! nonnegative half (`N⁺ = N/2` coefficients) and dense sections are
//! `N⁺ × N⁺`.

mod export;
mod grid;
mod norm;
mod operator;
mod vector;

pub use export::{read_matrix_binary, read_matrix_csv, write_matrix_binary, write_matrix_csv};
pub use grid::HardyGrid;
pub use norm::{operator_norm_dense, operator_norm_estimate, NormOptions};
pub use operator::{
    assemble_dense, assemble_dense_with, dilation, fourier_multiplier, theta_n, theta_n_sup, toeplitz,
    DenseMatrix, DilationInfo, DiscreteOperator, LinearMap, OperatorKind, ToeplitzMultiplierSum,
    DEFAULT_DENSE_CAP,
};
pub use vector::{inner, norm2, project_hardy, random_hardy_vector, taper, H2Vector, DEFAULT_HARDY_TOL};
