use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Finite set of complex values, optionally carrying a nonnegative mass per
/// point (used for essential-range estimates).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PointCloud {
    points: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

impl PointCloud {
    pub fn new(points: Vec<Complex64>) -> Self {
        Self {
            points,
            weights: None,
        }
    }

    pub fn with_weights(points: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != points.len() {
            return Err(Error::InvalidParameter(format!(
                "{} weights for {} points",
                weights.len(),
                points.len()
            )));
        }
        if weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::InvalidParameter(
                "weights must be nonnegative".into(),
            ));
        }
        Ok(Self {
            points,
            weights: Some(weights),
        })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Complex64> {
        self.points
    }

    /// Greedy merge: a point within `tol` of an earlier representative is
    /// absorbed into it (its weight is added). Representatives keep their
    /// original coordinates and first-seen order.
    pub fn dedup(&self, tol: f64) -> PointCloud {
        assert!(tol > 0.0, "dedup tolerance must be positive");
        let cell = |z: Complex64| ((z.re / tol).floor() as i64, (z.im / tol).floor() as i64);
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let mut reps: Vec<Complex64> = Vec::new();
        let mut mass: Vec<f64> = Vec::new();
        for (k, &z) in self.points.iter().enumerate() {
            let w = self.weights.as_ref().map_or(0.0, |w| w[k]);
            let (cx, cy) = cell(z);
            let mut hit = None;
            'search: for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(ids) = grid.get(&(cx + dx, cy + dy)) {
                        for &r in ids {
                            if (reps[r] - z).norm() <= tol {
                                hit = Some(r);
                                break 'search;
                            }
                        }
                    }
                }
            }
            match hit {
                Some(r) => mass[r] += w,
                None => {
                    grid.entry((cx, cy)).or_default().push(reps.len());
                    reps.push(z);
                    mass.push(w);
                }
            }
        }
        PointCloud {
            points: reps,
            weights: self.weights.as_ref().map(|_| mass),
        }
    }

    /// Largest pairwise distance (0 for fewer than two points).
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (k, a) in self.points.iter().enumerate() {
            for b in &self.points[k + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    pub fn min_im(&self) -> f64 {
        self.points.iter().map(|z| z.im).fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Concatenates two clouds; weights survive only if both carry them.
    pub fn union(&self, other: &PointCloud) -> PointCloud {
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        let weights = match (&self.weights, &other.weights) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        PointCloud { points, weights }
    }
}

impl FromIterator<Complex64> for PointCloud {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        PointCloud::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_merges_weights() {
        let pts = vec![
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0005, 1.0),
            Complex64::new(0.5, 1.0),
        ];
        let cloud = PointCloud::with_weights(pts, vec![1.0, 2.0, 3.0]).unwrap();
        let d = cloud.dedup(1e-3);
        assert_eq!(d.len(), 2);
        assert_eq!(d.weights().unwrap(), &[3.0, 3.0]);
    }

    #[test]
    fn rejects_bad_weights() {
        let pts = vec![Complex64::new(0.0, 1.0)];
        assert!(PointCloud::with_weights(pts.clone(), vec![]).is_err());
        assert!(PointCloud::with_weights(pts, vec![-1.0]).is_err());
    }

    #[test]
    fn diameter_of_segment() {
        let cloud: PointCloud = (0..=10).map(|k| Complex64::new(k as f64 * 0.1, 0.0)).collect();
        assert!((cloud.diameter() - 1.0).abs() < 1e-12);
    }
}
