use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::operator::{DenseMatrix, DiscreteOperator};
use super::vector::norm2;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct NormOptions {
    pub max_iter: usize,
    /// Stop once successive estimates differ by at most `tol` relative.
    pub tol: f64,
    /// Absolute floor on the stopping test, so roundoff-sized operators
    /// terminate.
    pub abs_tol: f64,
    pub seed: u64,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            max_iter: 20_000,
            tol: 1e-11,
            abs_tol: 1e-15,
            seed: 42,
        }
    }
}

/// Largest singular value by power iteration on `A*A` from a seeded random
/// start. Every iterate `‖A v‖` (unit `v`) is a lower bound.
pub fn operator_norm_estimate(op: &DiscreteOperator, opts: &NormOptions) -> Result<f64> {
    let n = op.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut last = 0.0;
    for it in 0..opts.max_iter {
        let w = op.apply_half(&v);
        let sigma = norm2(&w);
        if sigma == 0.0 {
            // the random start is annihilated only by the zero operator
            return Ok(0.0);
        }
        if it > 0 && (sigma - last).abs() <= opts.tol * sigma + opts.abs_tol {
            return Ok(sigma);
        }
        last = sigma;
        let mut z = op.apply_adjoint_half(&w);
        let nz = norm2(&z);
        if nz == 0.0 {
            return Ok(sigma);
        }
        z.iter_mut().for_each(|x| *x /= nz);
        v = z;
    }
    Err(Error::Convergence {
        iterations: opts.max_iter,
        last_estimate: last,
    })
}

/// Exact spectral norm of a dense matrix from its singular values.
pub fn operator_norm_dense(m: &DenseMatrix) -> Result<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0.0);
    }
    let s = m
        .singular_values()
        .map_err(|e| Error::Eigensolver(format!("singular values: {e:?}")))?;
    Ok(s.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfline::{assemble_dense, fourier_multiplier, HardyGrid};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_unit_norm() {
        let op = DiscreteOperator::identity(64);
        let s = operator_norm_estimate(&op, &NormOptions::default()).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_operator() {
        let op = DiscreteOperator::Diagonal(vec![c(0.0, 0.0); 8]);
        assert_eq!(operator_norm_estimate(&op, &NormOptions::default()).unwrap(), 0.0);
    }

    #[test]
    fn diagonal_norm_is_max_modulus() {
        let g = HardyGrid::new(256, 20.0).unwrap();
        let op = fourier_multiplier(|t| c(t * (-t).exp(), 0.3 * (-2.0 * t).exp()), &g).unwrap();
        let DiscreteOperator::Diagonal(d) = &op else { panic!() };
        let exact = d.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let s = operator_norm_estimate(&op, &NormOptions::default()).unwrap();
        assert!((s - exact).abs() <= 1e-6 * exact, "{s} vs {exact}");
        let dense = operator_norm_dense(&assemble_dense(&op).unwrap()).unwrap();
        assert!((dense - exact).abs() <= 1e-12);
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[3, 0], [4, 5]]: AᵀA = [[25, 20], [20, 25]], eigenvalues 45 and 5
        let m = DenseMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => c(3.0, 0.0),
            (1, 0) => c(4.0, 0.0),
            (1, 1) => c(5.0, 0.0),
            _ => c(0.0, 0.0),
        });
        let op = DiscreteOperator::dense(m);
        let s = operator_norm_estimate(&op, &NormOptions::default()).unwrap();
        assert!((s - 45f64.sqrt()).abs() < 1e-6 * 45f64.sqrt());
    }

    #[test]
    fn reports_non_convergence() {
        let m = DenseMatrix::from_fn(2, 2, |i, j| if i == j { c(1.0, 0.0) } else { c(0.99, 0.0) });
        let op = DiscreteOperator::dense(m);
        let opts = NormOptions {
            max_iter: 1,
            tol: 0.0,
            abs_tol: 0.0,
            seed: 1,
        };
        assert!(matches!(
            operator_norm_estimate(&op, &opts),
            Err(Error::Convergence { iterations: 1, .. })
        ));
    }
}
