use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Closed-disc points within this distance outside the unit circle are
/// accepted by [`inverse_cayley`] and land on the real axis.
const CIRCLE_SLACK: f64 = 1e-12;

/// A point of the closed upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlanePoint {
    re: f64,
    im: f64,
}

impl HalfPlanePoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() || im < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "({re}, {im}) is not in the closed upper half-plane"
            )));
        }
        // normalizes -0.0 so boundary logarithms take the upper branch
        Ok(Self { re, im: im.abs() })
    }

    /// Boundary point `x ∈ ℝ`.
    pub fn boundary(x: f64) -> Result<Self> {
        Self::new(x, 0.0)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn is_interior(&self) -> bool {
        self.im > 0.0
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// The Cayley transform `(z − i)/(z + i)`, mapping the upper half-plane
/// onto the unit disc and the real line onto the circle minus `1`.
pub fn cayley(z: HalfPlanePoint) -> Complex64 {
    let z = z.to_complex();
    (z - Complex64::i()) / (z + Complex64::i())
}

/// Inverse Cayley transform `i(1 + w)/(1 − w)` on the closed disc minus `1`.
pub fn inverse_cayley(w: Complex64) -> Result<HalfPlanePoint> {
    let r2 = w.norm_sqr();
    if !r2.is_finite() || r2.sqrt() > 1.0 + CIRCLE_SLACK {
        return Err(Error::InvalidParameter(format!(
            "{w} lies outside the closed unit disc"
        )));
    }
    let denom = (Complex64::new(1.0, 0.0) - w).norm_sqr();
    if denom == 0.0 {
        return Err(Error::InvalidParameter(
            "w = 1 corresponds to the point at infinity".into(),
        ));
    }
    // written out so that Im = (1 − |w|²)/|1 − w|² is never negative
    let re = -2.0 * w.im / denom;
    let im = ((1.0 - r2) / denom).max(0.0);
    HalfPlanePoint::new(re, im)
}
