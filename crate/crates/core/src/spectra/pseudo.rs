use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::hessenberg;
use faer::Par;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec::Execution;
use crate::halfline::DenseMatrix;

/// Smallest singular value of `A − λI` from a full SVD.
pub fn pseudospectrum_indicator(m: &DenseMatrix, lambda: Complex64) -> f64 {
    let n = m.nrows().min(m.ncols());
    if n == 0 {
        return 0.0;
    }
    let shifted = DenseMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        if i == j {
            m[(i, j)] - lambda
        } else {
            m[(i, j)]
        }
    });
    match shifted.singular_values() {
        Ok(s) => s.into_iter().fold(f64::INFINITY, f64::min),
        Err(_) => f64::NAN,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SigmaMinOptions {
    pub max_iter: usize,
    /// Relative change between iterates at which inverse iteration stops.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SigmaMinOptions {
    fn default() -> Self {
        Self {
            max_iter: 60,
            tol: 1e-6,
            seed: 7,
        }
    }
}

/// `σ_min(A − λI)` for many `λ` from one unitary Hessenberg reduction
/// `A = QHQ*`.
///
/// Each shift costs a Givens QR of `H − λI` and inverse iteration on the
/// triangular factor. Every iterate `1/‖R^{-1}v‖` is an upper bound on
/// `σ_min`.
#[derive(Debug, Clone)]
pub struct HessenbergSigmaMin {
    n: usize,
    /// Row-major upper Hessenberg matrix.
    h: Vec<Complex64>,
    opts: SigmaMinOptions,
}

fn faer_par(exec: Execution) -> Par {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => Par::rayon(0),
        _ => Par::Seq,
    }
}

impl HessenbergSigmaMin {
    pub fn new(m: &DenseMatrix, exec: Execution) -> Self {
        Self::with_options(m, exec, SigmaMinOptions::default())
    }

    pub fn with_options(m: &DenseMatrix, exec: Execution, opts: SigmaMinOptions) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "square matrix required");
        let n = m.nrows();
        let mut a = m.clone();
        if n > 2 {
            let bs = faer::linalg::qr::no_pivoting::factor::recommended_block_size::<Complex64>(n - 1, n - 1);
            let par = faer_par(exec);
            let mut householder = DenseMatrix::zeros(bs, n - 1);
            let mut mem = MemBuffer::new(hessenberg::hessenberg_in_place_scratch::<Complex64>(
                n,
                bs,
                par,
                Default::default(),
            ));
            hessenberg::hessenberg_in_place(
                a.as_mut(),
                householder.as_mut(),
                par,
                MemStack::new(&mut mem),
                Default::default(),
            );
        }
        let mut h = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i.saturating_sub(1)..n {
                h[i * n + j] = a[(i, j)];
            }
        }
        Self { n, h, opts }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn sigma_min(&self, lambda: Complex64) -> f64 {
        let n = self.n;
        if n == 0 {
            return 0.0;
        }
        let mut r = self.h.clone();
        for i in 0..n {
            r[i * n + i] -= lambda;
        }
        for k in 0..n.saturating_sub(1) {
            let a = r[k * n + k];
            let b = r[(k + 1) * n + k];
            if b == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (na, nb) = (a.norm(), b.norm());
            let rho = na.hypot(nb);
            let (c, s) = if na == 0.0 {
                (0.0, b.conj() / nb)
            } else {
                (na / rho, (a / na) * b.conj() / rho)
            };
            let (top, bottom) = r.split_at_mut((k + 1) * n);
            let row_k = &mut top[k * n + k..k * n + n];
            let row_k1 = &mut bottom[k..n];
            for (x, y) in row_k.iter_mut().zip(row_k1.iter_mut()) {
                let (xv, yv) = (*x, *y);
                *x = c * xv + s * yv;
                *y = -s.conj() * xv + c * yv;
            }
            r[(k + 1) * n + k] = Complex64::new(0.0, 0.0);
        }
        if (0..n).any(|i| r[i * n + i] == Complex64::new(0.0, 0.0)) {
            return 0.0;
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        normalize(&mut v);
        let mut best = f64::INFINITY;
        for _ in 0..self.opts.max_iter {
            let mut w = v;
            back_substitute(&r, n, &mut w);
            let s = norm(&w);
            if !s.is_finite() {
                return 0.0;
            }
            let est = 1.0 / s;
            let converged = (best - est).abs() <= self.opts.tol * est;
            best = best.min(est);
            if converged {
                break;
            }
            w.iter_mut().for_each(|x| *x /= s);
            adjoint_forward_substitute(&r, n, &mut w);
            if !normalize(&mut w) {
                return 0.0;
            }
            v = w;
        }
        best
    }

    pub fn sigma_min_many(&self, lambdas: &[Complex64], exec: Execution) -> Vec<f64> {
        exec.map(lambdas.len(), |k| self.sigma_min(lambdas[k]))
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) -> bool {
    let s = norm(v);
    if !(s > 0.0 && s.is_finite()) {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= s);
    true
}

/// Solves `R x = b` in place for row-major upper triangular `R`.
fn back_substitute(r: &[Complex64], n: usize, b: &mut [Complex64]) {
    for i in (0..n).rev() {
        let row = &r[i * n..(i + 1) * n];
        let s: Complex64 = row[i + 1..].iter().zip(&b[i + 1..]).map(|(a, x)| a * x).sum();
        b[i] = (b[i] - s) / row[i];
    }
}

/// Solves `R* x = b` in place for row-major upper triangular `R`.
fn adjoint_forward_substitute(r: &[Complex64], n: usize, b: &mut [Complex64]) {
    for j in 0..n {
        let row = &r[j * n..(j + 1) * n];
        b[j] /= row[j].conj();
        let yj = b[j];
        for (bi, rji) in b[j + 1..].iter_mut().zip(&row[j + 1..]) {
            *bi -= rji.conj() * yj;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(d: &[Complex64]) -> DenseMatrix {
        DenseMatrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i] } else { c(0.0, 0.0) })
    }

    #[test]
    fn reference_examples() {
        let id = diag(&[c(1.0, 0.0); 3]);
        assert!(pseudospectrum_indicator(&id, c(1.0, 0.0)).abs() < 1e-15);
        assert!((pseudospectrum_indicator(&id, c(0.0, 0.0)) - 1.0).abs() < 1e-14);
        let d = diag(&[c(2.0, 0.0), c(3.0, 0.0)]);
        assert!((pseudospectrum_indicator(&d, c(2.5, 0.0)) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn fast_path_examples() {
        let d = diag(&[c(2.0, 0.0), c(3.0, 0.0)]);
        let s = HessenbergSigmaMin::new(&d, Execution::Sequential);
        assert!((s.sigma_min(c(2.5, 0.0)) - 0.5).abs() < 1e-12);
        assert_eq!(s.sigma_min(c(2.0, 0.0)), 0.0);
        let id = diag(&[c(1.0, 0.0); 4]);
        let s = HessenbergSigmaMin::new(&id, Execution::Sequential);
        assert_eq!(s.sigma_min(c(1.0, 0.0)), 0.0);
        assert!((s.sigma_min(c(0.0, 0.0)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fast_path_matches_svd() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 40;
        let m = DenseMatrix::from_fn(n, n, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        let fast = HessenbergSigmaMin::with_options(
            &m,
            Execution::Sequential,
            SigmaMinOptions {
                max_iter: 2000,
                tol: 1e-13,
                seed: 1,
            },
        );
        for lambda in [c(0.0, 0.0), c(0.3, -0.2), c(1.5, 1.0), c(-0.7, 0.1)] {
            let reference = pseudospectrum_indicator(&m, lambda);
            let got = fast.sigma_min(lambda);
            assert!(got >= reference * (1.0 - 1e-9), "{lambda}: {got} < {reference}");
            assert!((got - reference).abs() <= 1e-6 * (1.0 + reference), "{lambda}: {got} vs {reference}");
        }
    }

    #[test]
    fn eigenvalues_of_triangular_matrix_are_detected() {
        let m = DenseMatrix::from_fn(5, 5, |i, j| if j >= i { c((i + 1) as f64, j as f64) } else { c(0.0, 0.0) });
        let fast = HessenbergSigmaMin::new(&m, Execution::Sequential);
        for i in 0..5 {
            assert!(fast.sigma_min(m[(i, i)]) < 1e-10);
        }
    }

    #[test]
    fn strategies_agree() {
        let m = DenseMatrix::from_fn(30, 30, |i, j| c(((i * 7 + j * 3) % 11) as f64, (i as f64 - j as f64) / 10.0));
        let lambdas: Vec<_> = (0..10).map(|k| c(k as f64, 0.5)).collect();
        let a = HessenbergSigmaMin::new(&m, Execution::Sequential).sigma_min_many(&lambdas, Execution::Sequential);
        let b = HessenbergSigmaMin::new(&m, Execution::Sequential).sigma_min_many(&lambdas, Execution::Parallel);
        assert_eq!(a, b);
    }
}
