use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::plan::{plan_expansion_with, PlanOptions};
use super::series::build_composition_operator;
use crate::exec::Execution;
use crate::halfline::{fourier_multiplier, norm2, random_hardy_vector, DiscreteOperator, HardyGrid, LinearMap};
use crate::symbols::AnalyticSymbol;
use crate::{Error, Result};

/// Trapezoidal Cauchy integral
/// `h(x_m) = Δx/(2πi) Σ_k u(x_k)/(x_k − φ(x_m))`,
/// followed by projection onto nonnegative frequencies.
#[derive(Debug, Clone)]
pub struct CauchyQuadrature {
    grid: HardyGrid,
    xs: Vec<f64>,
    images: Vec<Complex64>,
    exec: Execution,
}

impl CauchyQuadrature {
    /// `φ(x) = px + ψ(x)` sampled at the grid nodes.
    pub fn new(psi: &AnalyticSymbol, p: f64, grid: &HardyGrid) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("p = {p} must be positive")));
        }
        let xs = grid.xs();
        let images: Vec<Complex64> = xs.iter().map(|&x| p * x + psi.boundary_value(x)).collect();
        if let Some(w) = images.iter().find(|w| !(w.im > 0.0)) {
            return Err(Error::Hypothesis(format!("φ(x) = {w} is not in the upper half-plane")));
        }
        Ok(Self {
            grid: grid.clone(),
            xs,
            images,
            exec: Execution::default(),
        })
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    /// Smallest distance from the images to the real axis.
    pub fn min_image_height(&self) -> f64 {
        self.images.iter().map(|w| w.im).fold(f64::INFINITY, f64::min)
    }

    /// Trapezoid error factor `2e^{−2πd/Δx}/(1 − e^{−2πd/Δx})` for an
    /// integrand analytic in the strip of half-width `d`.
    pub fn quadrature_bound(&self) -> f64 {
        let q = (-2.0 * PI * self.min_image_height() / self.grid.dx()).exp();
        2.0 * q / (1.0 - q)
    }

    fn weight(&self) -> Complex64 {
        Complex64::new(0.0, -self.grid.dx() / (2.0 * PI))
    }

    fn embed(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut full = x.to_vec();
        full.resize(self.grid.n_points(), Complex64::new(0.0, 0.0));
        full
    }
}

impl LinearMap for CauchyQuadrature {
    fn dim(&self) -> usize {
        self.grid.n_plus()
    }

    fn apply_half(&self, x: &[Complex64]) -> Vec<Complex64> {
        let u = self.grid.to_spatial(&self.embed(x));
        let w = self.weight();
        let h = self.exec.map(self.images.len(), |m| {
            let phi = self.images[m];
            let s: Complex64 = self.xs.iter().zip(&u).map(|(&xk, uk)| uk / (xk - phi)).sum();
            w * s
        });
        let mut out = self.grid.to_frequency(&h);
        out.truncate(self.grid.n_plus());
        out
    }

    fn apply_adjoint_half(&self, x: &[Complex64]) -> Vec<Complex64> {
        let h = self.grid.to_spatial(&self.embed(x));
        let w = self.weight().conj();
        let u = self.exec.map(self.xs.len(), |k| {
            let xk = self.xs[k];
            let s: Complex64 = self
                .images
                .iter()
                .zip(&h)
                .map(|(phi, hm)| hm / (xk - phi).conj())
                .sum();
            w * s
        });
        let mut out = self.grid.to_frequency(&u);
        out.truncate(self.grid.n_plus());
        out
    }
}

/// The quadrature oracle for `C_φ` with `φ(z) = z + ψ(z)`.
pub fn oracle_composition_operator(psi: &AnalyticSymbol, grid: &HardyGrid) -> Result<DiscreteOperator> {
    Ok(DiscreteOperator::Custom(Arc::new(CauchyQuadrature::new(psi, 1.0, grid)?)))
}

/// Trapezoidal Cauchy integral of spatial samples at an arbitrary point
/// `w` of the upper half-plane.
pub fn cauchy_integral_at(samples: &[Complex64], grid: &HardyGrid, w: Complex64) -> Complex64 {
    let weight = Complex64::new(0.0, -grid.dx() / (2.0 * PI));
    let s: Complex64 = (0..grid.n_points()).map(|k| samples[k] / (grid.x(k) - w)).sum();
    weight * s
}

#[derive(Debug, Clone)]
pub struct QuadSpec {
    pub n_test_vectors: usize,
    pub seed: u64,
    pub p: f64,
    pub exec: Execution,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            n_test_vectors: 16,
            seed: 42,
            p: 1.0,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleReport {
    pub rel_errors: Vec<f64>,
    pub max_rel_err: f64,
    pub tail_bound: f64,
    pub quadrature_bound: f64,
    /// Largest discrepancy of the quadrature against exactly known
    /// translations on the same vectors: by `ih` with `h` the lowest image
    /// height, and by the symbol's values at both ends of the grid.
    pub grid_eps: f64,
    pub combined_tol: f64,
    pub trunc_order: usize,
    pub pass: bool,
}

/// Compares the truncated series with the quadrature oracle on seeded
/// random Hardy vectors.
pub fn oracle_vs_series_report(
    psi: &AnalyticSymbol,
    grid: &HardyGrid,
    tol: f64,
    spec: &QuadSpec,
) -> Result<OracleReport> {
    if spec.n_test_vectors == 0 {
        return Err(Error::InvalidParameter("n_test_vectors must be positive".into()));
    }
    let opts = PlanOptions {
        p: spec.p,
        ..Default::default()
    };
    let plan = plan_expansion_with(psi, grid, tol, &opts)?;
    let series = build_composition_operator(&plan, grid)?;
    let oracle = CauchyQuadrature::new(psi, spec.p, grid)?.with_execution(spec.exec);
    let quadrature_bound = oracle.quadrature_bound();

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let vectors: Vec<_> = (0..spec.n_test_vectors)
        .map(|_| random_hardy_vector(grid, &mut rng))
        .collect();
    let rel_errors: Vec<f64> = vectors
        .iter()
        .map(|v| {
            let a = series.apply_half(v.half());
            let b = oracle.apply_half(v.half());
            let diff: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            let scale = norm2(&b);
            let d = norm2(&diff);
            if scale > 0.0 {
                d / scale
            } else {
                d
            }
        })
        .collect();
    let max_rel_err = rel_errors.iter().cloned().fold(0.0, f64::max);

    let h = oracle.min_image_height();
    let edges = [psi.boundary_value(grid.x(0)), psi.boundary_value(grid.x(grid.n_points() - 1))];
    let mut grid_eps: f64 = 0.0;
    for c in std::iter::once(Complex64::new(0.0, h)).chain(edges) {
        let shift = AnalyticSymbol::constant(c)?;
        let reference = CauchyQuadrature::new(&shift, 1.0, grid)?.with_execution(spec.exec);
        let exact = fourier_multiplier(move |t| (Complex64::i() * c * t).exp(), grid)?;
        for v in &vectors {
            let a = exact.apply_half(v.half());
            let b = reference.apply_half(v.half());
            let diff: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            grid_eps = grid_eps.max(norm2(&diff) / norm2(&b).max(f64::MIN_POSITIVE));
        }
    }
    let combined_tol = plan.tail_bound + quadrature_bound + grid_eps;
    Ok(OracleReport {
        max_rel_err,
        tail_bound: plan.tail_bound,
        quadrature_bound,
        grid_eps,
        combined_tol,
        trunc_order: plan.trunc_order,
        pass: max_rel_err <= combined_tol,
        rel_errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfline::H2Vector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cauchy_integral_of_simple_pole() {
        // f(ξ) = 1/(ξ + i) continues to 1/(w + i); truncating the integral
        // at ±L costs O(1/L)
        let g = HardyGrid::new(4096, 400.0).unwrap();
        let f: Vec<Complex64> = g.xs().iter().map(|&x| 1.0 / (c(x, 0.0) + c(0.0, 1.0))).collect();
        for x in [-10.0, -1.0, 0.0, 3.0, 10.0] {
            let w = c(x, 1.0);
            let got = cauchy_integral_at(&f, &g, w);
            let exact = 1.0 / (w + c(0.0, 1.0));
            assert!((got - exact).norm() < 2.5 / (400.0 - 10.0), "{x}: {got} vs {exact}");
        }
    }

    #[test]
    fn adjoint_is_consistent() {
        let g = HardyGrid::new(128, 16.0).unwrap();
        let psi = AnalyticSymbol::moebius_decay(c(0.0, 2.0), c(1.0, 0.0), c(0.0, -2.0)).unwrap();
        let q = CauchyQuadrature::new(&psi, 1.0, &g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_hardy_vector(&g, &mut rng);
        let v = random_hardy_vector(&g, &mut rng);
        let lhs = crate::halfline::inner(v.half(), &q.apply_half(u.half()));
        let rhs = crate::halfline::inner(&q.apply_adjoint_half(v.half()), u.half());
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn strategies_agree() {
        let g = HardyGrid::new(256, 25.0).unwrap();
        let psi = AnalyticSymbol::constant(c(0.0, 1.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v: H2Vector = random_hardy_vector(&g, &mut rng);
        let a = CauchyQuadrature::new(&psi, 1.0, &g)
            .unwrap()
            .with_execution(Execution::Sequential)
            .apply_half(v.half());
        let b = CauchyQuadrature::new(&psi, 1.0, &g)
            .unwrap()
            .with_execution(Execution::Parallel)
            .apply_half(v.half());
        assert_eq!(a, b);
    }

    #[test]
    fn constant_symbol_matches_translation() {
        let g = HardyGrid::new(512, 50.0).unwrap();
        let psi = AnalyticSymbol::constant(c(0.0, 1.0)).unwrap();
        let r = oracle_vs_series_report(&psi, &g, 1e-6, &QuadSpec { n_test_vectors: 4, ..Default::default() }).unwrap();
        assert!(r.max_rel_err < 5e-3, "{r:?}");
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn moebius_series_matches_oracle() {
        let g = HardyGrid::new(512, 50.0).unwrap();
        let psi = AnalyticSymbol::moebius_decay(c(0.0, 2.0), c(1.0, 0.0), c(0.0, -2.0)).unwrap();
        let r = oracle_vs_series_report(&psi, &g, 1e-3, &QuadSpec { n_test_vectors: 4, ..Default::default() }).unwrap();
        assert!(r.max_rel_err < 5e-3, "{r:?}");
    }

    #[test]
    fn grid_error_covers_edge_translation() {
        use crate::symbols::{transfer_disc_symbol, DiscSymbol};
        let g = HardyGrid::new(512, 50.0).unwrap();
        let disc = DiscSymbol::polynomial(vec![c(0.0, 2.0), c(0.5, 0.0), c(0.0, 0.25)]).unwrap();
        let psi = transfer_disc_symbol(&disc).unwrap();
        let r = oracle_vs_series_report(&psi, &g, 1e-6, &QuadSpec { n_test_vectors: 8, ..Default::default() }).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
