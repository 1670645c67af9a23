//! Sampling-based estimators: hypothesis check, cluster set at infinity
//! (interior sequences) and local essential range at infinity (boundary
//! values on sets of positive measure).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cayley::HalfPlanePoint;
use super::cloud::PointCloud;
use super::family::AnalyticSymbol;

/// Interior sample set for [`verify_hypothesis`]: points `r·e^{iθ}` on
/// log-spaced radii and uniform angles, plus grazing angles near both
/// halves of the real axis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_radii: usize,
    pub n_angles: usize,
    pub grazing_angles: Vec<f64>,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self {
            r_min: 1e-4,
            r_max: 1e6,
            n_radii: 161,
            n_angles: 128,
            grazing_angles: vec![1e-9, 1e-6, 1e-3],
        }
    }
}

impl SampleSpec {
    pub fn points(&self) -> Vec<HalfPlanePoint> {
        let mut angles: Vec<f64> = (0..self.n_angles)
            .map(|k| PI * (k as f64 + 0.5) / self.n_angles as f64)
            .collect();
        for &g in &self.grazing_angles {
            angles.push(g);
            angles.push(PI - g);
        }
        let radii = log_space(self.r_min, self.r_max, self.n_radii);
        let mut out = Vec::with_capacity(radii.len() * angles.len());
        for &r in &radii {
            for &th in &angles {
                out.push(HalfPlanePoint::new(r * th.cos(), r * th.sin()).expect("interior sample"));
            }
        }
        out
    }
}

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub min_im: f64,
    pub argmin: Complex64,
    pub sup_abs: f64,
    pub eps_lower: f64,
    pub n_samples: usize,
    pub ok: bool,
}

/// Samples `ψ` on the interior set and checks `min Im ψ ≥ ε`. A failed
/// check is a normal result, not an error.
pub fn verify_hypothesis(psi: &AnalyticSymbol, spec: &SampleSpec) -> HypothesisReport {
    let mut min_im = f64::INFINITY;
    let mut argmin = Complex64::new(0.0, 0.0);
    let mut sup_abs: f64 = 0.0;
    let pts = spec.points();
    for z in &pts {
        // interior samples never hit a singular point
        let v = psi.eval(*z).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        if !(v.im >= min_im) {
            min_im = v.im;
            argmin = z.to_complex();
        }
        sup_abs = sup_abs.max(v.norm());
    }
    HypothesisReport {
        min_im,
        argmin,
        sup_abs,
        eps_lower: psi.eps_lower(),
        n_samples: pts.len(),
        ok: min_im >= psi.eps_lower(),
    }
}

/// Annuli for the cluster-set estimator. `edges` are increasing radii; the
/// outermost `outer_annuli` annuli `[edges[k], edges[k+1]]` are sampled.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterSampling {
    pub edges: Vec<f64>,
    pub outer_annuli: usize,
    pub radial_per_annulus: usize,
    pub n_angles: usize,
    pub dedup_tol: f64,
}

impl Default for ClusterSampling {
    fn default() -> Self {
        Self {
            edges: (1..=6).map(|k| 10f64.powi(k)).collect(),
            outer_annuli: 3,
            radial_per_annulus: 32,
            n_angles: 256,
            dedup_tol: 1e-3,
        }
    }
}

impl ClusterSampling {
    /// Innermost sampled radius.
    pub fn r_min(&self) -> f64 {
        let k = self.edges.len().saturating_sub(self.outer_annuli + 1);
        self.edges[k]
    }
}

/// Values of `ψ` on interior points far out in the half-plane: a finite
/// approximation of the cluster set at infinity.
pub fn estimate_cluster_set_at_infinity(psi: &AnalyticSymbol, spec: &ClusterSampling) -> PointCloud {
    assert!(spec.edges.len() >= 2, "need at least one annulus");
    let first = spec.edges.len().saturating_sub(spec.outer_annuli + 1);
    let mut values = Vec::new();
    for k in first..spec.edges.len() - 1 {
        let radii = log_space(spec.edges[k], spec.edges[k + 1], spec.radial_per_annulus + 1);
        for &r in &radii {
            for a in 0..spec.n_angles {
                let th = PI * (a as f64 + 0.5) / spec.n_angles as f64;
                let z = HalfPlanePoint::new(r * th.cos(), r * th.sin()).expect("interior sample");
                if let Ok(v) = psi.eval(z) {
                    values.push(v);
                }
            }
        }
    }
    PointCloud::new(values).dedup(spec.dedup_tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sides {
    Both,
    Positive,
    Negative,
}

/// Boundary sampling for the essential-range estimator.
///
/// Each cutoff `n_k` owns the window `n_k ≤ |x| < n_k·2^window_blocks`,
/// sampled with `samples_per_block` equal cells per dyadic block. Candidate
/// values come from the window of the last cutoff; a candidate is kept when
/// every window puts positive measure inside its `ball_radius`-ball.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundarySampling {
    pub cutoffs: Vec<f64>,
    pub window_blocks: u32,
    pub samples_per_block: usize,
    pub sides: Sides,
    pub ball_radius: f64,
    pub dedup_tol: f64,
}

impl Default for BoundarySampling {
    fn default() -> Self {
        Self {
            cutoffs: (1..=6).map(|k| 10f64.powi(k)).collect(),
            window_blocks: 10,
            samples_per_block: 128,
            sides: Sides::Both,
            ball_radius: 0.05,
            dedup_tol: 1e-3,
        }
    }
}

struct BoundarySample {
    value: Complex64,
    weight: f64,
}

fn window_samples(psi: &AnalyticSymbol, start: f64, spec: &BoundarySampling) -> Vec<BoundarySample> {
    let signs: &[f64] = match spec.sides {
        Sides::Both => &[1.0, -1.0],
        Sides::Positive => &[1.0],
        Sides::Negative => &[-1.0],
    };
    let mut out = Vec::new();
    for &s in signs {
        for b in 0..spec.window_blocks {
            let lo = start * 2f64.powi(b as i32);
            let width = lo / spec.samples_per_block as f64;
            for c in 0..spec.samples_per_block {
                let x = lo + (c as f64 + 0.5) * width;
                out.push(BoundarySample {
                    value: psi.boundary_value(s * x),
                    weight: width,
                });
            }
        }
    }
    out
}

/// Boundary values of `ψ` near infinity that recur with positive measure at
/// every cutoff scale: a finite approximation of the local essential range.
pub fn estimate_essential_range_at_infinity(psi: &AnalyticSymbol, spec: &BoundarySampling) -> PointCloud {
    assert!(!spec.cutoffs.is_empty(), "need at least one cutoff");
    let windows: Vec<Vec<BoundarySample>> = spec
        .cutoffs
        .iter()
        .map(|&n| window_samples(psi, n, spec))
        .collect();
    let deepest = windows.last().expect("nonempty");
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for cand in deepest {
        let recurs = windows.iter().all(|w| {
            w.iter()
                .filter(|s| (s.value - cand.value).norm() < spec.ball_radius)
                .map(|s| s.weight)
                .sum::<f64>()
                > 0.0
        });
        if recurs {
            points.push(cand.value);
            weights.push(cand.weight);
        }
    }
    PointCloud::with_weights(points, weights)
        .expect("weights are cell widths")
        .dedup(spec.dedup_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hypothesis_examples() {
        let spec = SampleSpec::default();
        let k = AnalyticSymbol::constant(c(0.0, 2.0)).unwrap().with_eps_lower(1.0).unwrap();
        let r = verify_hypothesis(&k, &spec);
        assert!(r.ok && r.min_im == 2.0);

        let m = AnalyticSymbol::moebius_decay(c(0.0, 2.0), c(1.0, 0.0), c(0.0, -2.0))
            .unwrap()
            .with_eps_lower(1.4)
            .unwrap();
        let r = verify_hypothesis(&m, &spec);
        assert!(r.ok && r.min_im >= 1.5 - 1e-12, "{r:?}");

        let l = AnalyticSymbol::log_oscillation(c(0.0, 3.0), c(0.2, 0.0), 1.0)
            .unwrap()
            .with_eps_lower(0.5)
            .unwrap();
        let r = verify_hypothesis(&l, &spec);
        assert!(r.ok, "{r:?}");
        // grazing samples on the negative axis reach the cosh(π) extreme
        assert!(r.min_im < 0.7 && r.min_im >= 3.0 - 0.2 * PI.cosh() - 1e-9);
    }

    #[test]
    fn real_constant_fails_hypothesis() {
        let bad = AnalyticSymbol::new(
            crate::symbols::SymbolFamily::Constant { value: c(1.0, 0.0) },
            0.5,
        )
        .unwrap();
        assert!(!verify_hypothesis(&bad, &SampleSpec::default()).ok);
    }

    #[test]
    fn cluster_of_constant_is_singleton() {
        let k = AnalyticSymbol::constant(c(0.5, 1.0)).unwrap();
        let cloud = estimate_cluster_set_at_infinity(&k, &ClusterSampling::default());
        assert_eq!(cloud.points(), &[c(0.5, 1.0)]);
    }

    #[test]
    fn cluster_of_decaying_symbol_collapses() {
        let m = AnalyticSymbol::moebius_decay(c(0.0, 2.0), c(1.0, 0.0), c(0.0, -2.0)).unwrap();
        let spec = ClusterSampling::default();
        let cloud = estimate_cluster_set_at_infinity(&m, &spec);
        assert!(cloud.diameter() <= 2.0 / spec.r_min());
        assert!(cloud.points().iter().all(|z| (z - c(0.0, 2.0)).norm() <= 1.0 / spec.r_min()));
    }

    #[test]
    fn cluster_of_log_oscillation_is_two_dimensional() {
        let l = AnalyticSymbol::log_oscillation(c(0.0, 3.0), c(0.2, 0.0), 1.0).unwrap();
        let hull = |spec: &ClusterSampling| {
            let cloud = estimate_cluster_set_at_infinity(&l, spec);
            let re = cloud.points().iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
            let im_lo = cloud.min_im();
            let im_hi = cloud.points().iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max);
            (re, im_lo, im_hi)
        };
        let near = ClusterSampling {
            edges: vec![1e1, 1e2, 1e3, 1e4],
            ..Default::default()
        };
        let far = ClusterSampling::default();
        let (a, b) = (hull(&near), hull(&far));
        // max of 0.2·|sin(u + iv)| over the strip is 0.2·cosh(π) ≈ 2.318
        for (x, y) in [(a.0, b.0), (a.1, b.1), (a.2, b.2)] {
            assert!((x - y).abs() < 0.05, "{a:?} vs {b:?}");
        }
        assert!(a.0 > 2.2 && a.1 < 0.8 && a.2 > 5.2);
    }

    #[test]
    fn essential_range_of_constant_is_singleton() {
        let k = AnalyticSymbol::constant(c(-1.0, 2.0)).unwrap();
        let cloud = estimate_essential_range_at_infinity(&k, &BoundarySampling::default());
        assert_eq!(cloud.points(), &[c(-1.0, 2.0)]);
        let total: f64 = cloud.weights().unwrap().iter().sum();
        assert!(total > 0.0);
    }

    #[test]
    fn essential_range_of_decaying_symbol() {
        let m = AnalyticSymbol::moebius_decay(c(0.0, 2.0), c(1.0, 0.0), c(0.0, -2.0)).unwrap();
        let spec = BoundarySampling::default();
        let cloud = estimate_essential_range_at_infinity(&m, &spec);
        let n_max = *spec.cutoffs.last().unwrap();
        assert!(!cloud.is_empty());
        assert!(cloud.points().iter().all(|z| (z - c(0.0, 2.0)).norm() <= 2.0 / n_max));
    }

    #[test]
    fn essential_range_of_log_oscillation_covers_segment() {
        let l = AnalyticSymbol::log_oscillation(c(0.0, 3.0), c(0.2, 0.0), 1.0).unwrap();
        let spec = BoundarySampling {
            sides: Sides::Positive,
            ..Default::default()
        };
        let cloud = estimate_essential_range_at_infinity(&l, &spec);
        let mut bins = [0usize; 20];
        for z in cloud.points() {
            assert!((z.im - 3.0).abs() < 1e-12 && z.re.abs() <= 0.2 + 1e-12);
            let b = (((z.re + 0.2) / 0.4) * 20.0).floor().clamp(0.0, 19.0) as usize;
            bins[b] += 1;
        }
        assert!(bins.iter().all(|&n| n > 0), "{bins:?}");
    }
}
