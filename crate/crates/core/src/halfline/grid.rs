use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::{Error, Result};

/// Paired spatial and frequency grids.
///
/// Invariants: `N` is a power of two, `Δx·Δt·N = 2π`, `T_max = πN/(2L)`.
#[derive(Clone)]
pub struct HardyGrid {
    n: usize,
    half_width: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for HardyGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HardyGrid")
            .field("n_points", &self.n)
            .field("spatial_halfwidth", &self.half_width)
            .finish()
    }
}

impl PartialEq for HardyGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.half_width == other.half_width
    }
}

impl HardyGrid {
    pub fn new(n_points: usize, spatial_halfwidth: f64) -> Result<Self> {
        if n_points < 4 || !n_points.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "n_points = {n_points} must be a power of two ≥ 4"
            )));
        }
        if !(spatial_halfwidth.is_finite() && spatial_halfwidth > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "spatial_halfwidth = {spatial_halfwidth} must be positive"
            )));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            n: n_points,
            half_width: spatial_halfwidth,
            forward: planner.plan_fft_forward(n_points),
            inverse: planner.plan_fft_inverse(n_points),
        })
    }

    /// `N = 2048`, `L = 200`.
    pub fn default_grid() -> Self {
        Self::new(2048, 200.0).expect("valid default grid")
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    /// Number of nonnegative frequencies, `N/2`.
    pub fn n_plus(&self) -> usize {
        self.n / 2
    }

    pub fn spatial_halfwidth(&self) -> f64 {
        self.half_width
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn dt(&self) -> f64 {
        PI / self.half_width
    }

    pub fn t_max(&self) -> f64 {
        PI * self.n as f64 / (2.0 * self.half_width)
    }

    /// Spatial node `x_k = -L + k·Δx`.
    pub fn x(&self, k: usize) -> f64 {
        -self.half_width + k as f64 * self.dx()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.x(k)).collect()
    }

    /// Frequency at storage index `i`; indices `0..N/2` hold `t ≥ 0`,
    /// indices `N/2..N` hold the negative frequencies in FFT order.
    pub fn t(&self, i: usize) -> f64 {
        let j = if i < self.n / 2 {
            i as f64
        } else {
            i as f64 - self.n as f64
        };
        j * self.dt()
    }

    /// The nonnegative frequencies `t_0 … t_{N⁺-1}`.
    pub fn nonneg_ts(&self) -> Vec<f64> {
        (0..self.n_plus()).map(|j| j as f64 * self.dt()).collect()
    }

    /// Index of the first nonnegative frequency with `t ≥ t_cut`.
    pub fn index_at_or_above(&self, t_cut: f64) -> usize {
        ((t_cut / self.dt()).ceil().max(0.0) as usize).min(self.n_plus())
    }

    /// Frequency coefficients to spatial samples (unitary).
    ///
    /// `u_k = N^{-1/2} Σ_j c_j e^{i x_k t_j}`; since `x_k t_j = -πj + 2πjk/N`
    /// this is an inverse FFT of `(-1)^j c_j`.
    pub fn to_spatial(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(coeffs.len(), self.n);
        let mut buf: Vec<Complex64> = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| if j % 2 == 0 { *c } else { -*c })
            .collect();
        self.inverse.process(&mut buf);
        let s = 1.0 / (self.n as f64).sqrt();
        buf.iter_mut().for_each(|v| *v *= s);
        buf
    }

    /// Spatial samples to frequency coefficients (unitary inverse of
    /// [`to_spatial`](Self::to_spatial)).
    pub fn to_frequency(&self, samples: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(samples.len(), self.n);
        let mut buf = samples.to_vec();
        self.forward.process(&mut buf);
        let s = 1.0 / (self.n as f64).sqrt();
        buf.iter_mut()
            .enumerate()
            .for_each(|(j, v)| *v *= if j % 2 == 0 { s } else { -s });
        buf
    }

    /// Spatial samples of the `j`-th nonnegative basis vector, in closed form.
    pub(crate) fn basis_spatial(&self, j: usize) -> Vec<Complex64> {
        let s = 1.0 / (self.n as f64).sqrt();
        let sign = if j % 2 == 0 { s } else { -s };
        (0..self.n)
            .map(|k| {
                // reduce jk mod N before forming the angle to keep it exact
                let m = (j * k) % self.n;
                Complex64::from_polar(sign, 2.0 * PI * m as f64 / self.n as f64)
            })
            .collect()
    }
}
