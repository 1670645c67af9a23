use std::f64::consts::E;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::symbols::PointCloud;
use crate::{Error, Result};

/// Samples of `{e^{izt}: z ∈ generators, t ≥ 0} ∪ {0}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpiralSet {
    pub generators: PointCloud,
    /// Common time grid; each generator uses the prefix with `t ≤ −ln(res)/Im z`.
    pub t_grid: Vec<f64>,
    pub points: PointCloud,
    pub resolution: f64,
    pub eps_lower: f64,
}

impl SpiralSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Samples every spiral `t ↦ e^{izt}` until it is within `resolution` of 0,
/// with steps `resolution/max|z|` so consecutive points are at most
/// `resolution` apart.
///
/// Generators closer than `resolution·e·eps_lower` are merged first: two
/// spirals differ by at most `t|z − z'|e^{−t Im z} ≤ |z − z'|/(e·Im z)`.
/// The sampled points are deduplicated at `resolution/4`.
pub fn predict_essential_spectrum(cloud: &PointCloud, eps_lower: f64, resolution: f64) -> Result<SpiralSet> {
    if !(eps_lower > 0.0 && eps_lower.is_finite()) {
        return Err(Error::InvalidParameter(format!("eps_lower = {eps_lower} must be positive")));
    }
    if !(resolution > 0.0 && resolution < 1.0) {
        return Err(Error::InvalidParameter(format!("resolution = {resolution} must lie in (0, 1)")));
    }
    if let Some(z) = cloud.points().iter().find(|z| !(z.im >= eps_lower)) {
        return Err(Error::Hypothesis(format!(
            "generator {z} has Im z below eps_lower = {eps_lower}"
        )));
    }
    let generators = cloud.dedup(resolution * E * eps_lower);
    let t_spiral = -resolution.ln() / eps_lower;
    let zmax = generators.max_abs().max(1.0);
    let dt = resolution / zmax;
    let steps = (t_spiral / dt).ceil() as usize;
    let t_grid: Vec<f64> = (0..=steps).map(|k| (k as f64 * dt).min(t_spiral)).collect();

    let mut pts = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let i = Complex64::new(0.0, 1.0);
    for z in generators.points() {
        let t_z = -resolution.ln() / z.im;
        for &t in t_grid.iter().take_while(|&&t| t <= t_z + dt) {
            pts.push((i * z * t).exp());
        }
    }
    let points = PointCloud::new(pts).dedup(resolution / 4.0);
    Ok(SpiralSet {
        generators,
        t_grid,
        points,
        resolution,
        eps_lower,
    })
}
