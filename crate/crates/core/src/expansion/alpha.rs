use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::symbols::PointCloud;
use crate::{Error, Result};

const TERNARY_ITERS: usize = 200;
const FALLBACK_SCAN: usize = 20_000;

/// A centre `iα` on the imaginary axis and a ratio `δ < 1` with
/// `|iα − z| < δα` for every `z` in the range cloud.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaSelection {
    pub alpha: f64,
    pub delta: f64,
    #[serde(skip)]
    pub range_cloud: PointCloud,
}

fn ratio(points: &[Complex64], alpha: f64) -> f64 {
    let c = Complex64::new(0.0, alpha);
    points.iter().map(|z| (c - z).norm()).fold(0.0, f64::max) / alpha
}

/// Minimizes `δ(α) = max_z |iα − z|/α`.
///
/// `δ(α)²` is a maximum of convex quadratics in `1/α`, hence unimodal in
/// `log α`; a ternary search on `[ε/10, 10³(ε + sup|z|)]` finds the minimum,
/// with a dense log-grid scan as fallback. The returned `δ` is nudged above
/// the attained maximum so the strict inequality holds in floating point.
pub fn select_alpha(range_cloud: PointCloud) -> Result<AlphaSelection> {
    let pts = range_cloud.points();
    if pts.is_empty() {
        return Err(Error::InvalidParameter("empty range cloud".into()));
    }
    let eps = range_cloud.min_im();
    if !(eps > 0.0) {
        return Err(Error::Hypothesis(format!(
            "range cloud reaches Im z = {eps}; it must stay in the open upper half-plane"
        )));
    }
    let sup = range_cloud.max_abs();
    let (mut lo, mut hi) = ((eps / 10.0).ln(), (1e3 * (eps + sup)).ln());
    for _ in 0..TERNARY_ITERS {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if ratio(pts, m1.exp()) <= ratio(pts, m2.exp()) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let mut alpha = (0.5 * (lo + hi)).exp();
    let mut best = ratio(pts, alpha);
    if !(best < 1.0) {
        let (a, b) = ((eps / 10.0).ln(), (1e3 * (eps + sup)).ln());
        for k in 0..=FALLBACK_SCAN {
            let cand = (a + (b - a) * k as f64 / FALLBACK_SCAN as f64).exp();
            let r = ratio(pts, cand);
            if r < best {
                best = r;
                alpha = cand;
            }
        }
    }
    let c = Complex64::new(0.0, alpha);
    let worst = pts.iter().map(|z| (c - z).norm()).fold(0.0, f64::max);
    let mut delta = best * (1.0 + 1e-12) + 1e-15;
    while !(worst < delta * alpha) {
        delta = delta * (1.0 + 1e-12) + 1e-15;
    }
    if !(delta < 1.0) {
        return Err(Error::ExpansionInfeasible { alpha, delta });
    }
    Ok(AlphaSelection {
        alpha,
        delta,
        range_cloud,
    })
}
