use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::alpha::{select_alpha, AlphaSelection};
use crate::halfline::HardyGrid;
use crate::symbols::{verify_hypothesis, AnalyticSymbol, HypothesisReport, PointCloud, SampleSpec, BOUNDARY_OFFSET};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct PlanOptions {
    pub sample_spec: SampleSpec,
    pub max_order: usize,
    /// Dilation factor `p` of `φ(z) = pz + ψ(z)`.
    pub p: f64,
    pub range_dedup_tol: f64,
}

impl Default for PlanOptions {
    fn default() -> Self {
        Self {
            sample_spec: SampleSpec::default(),
            max_order: 200,
            p: 1.0,
            range_dedup_tol: 1e-4,
        }
    }
}

/// Everything needed to build the truncated series on one grid.
#[derive(Debug, Clone)]
pub struct ExpansionPlan {
    pub alpha_sel: AlphaSelection,
    /// `δ̂ = max(‖τ‖_grid/α, δ)`.
    pub delta_hat: f64,
    pub trunc_order: usize,
    pub tail_bound: f64,
    pub tol: f64,
    /// `τ(x_k) = iα − ψ(x_k/p)` on the spatial grid.
    pub tau_samples: Vec<Complex64>,
    pub tau_norm: f64,
    pub p: f64,
    pub grid_n: usize,
    pub grid_halfwidth: f64,
    pub hypothesis: HypothesisReport,
    pub warnings: Vec<String>,
}

/// JSON-facing view of a plan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanSummary {
    pub alpha: f64,
    pub delta: f64,
    pub delta_hat: f64,
    pub tau_norm: f64,
    pub trunc_order: usize,
    pub tail_bound: f64,
    pub tol: f64,
    pub p: f64,
    pub range_cloud_size: usize,
    pub n_points: usize,
    pub spatial_halfwidth: f64,
    pub t_max: f64,
    pub boundary_offset: f64,
    pub min_im_sampled: f64,
    pub sup_abs_sampled: f64,
    pub warnings: Vec<String>,
}

impl ExpansionPlan {
    pub fn summary(&self) -> PlanSummary {
        PlanSummary {
            alpha: self.alpha_sel.alpha,
            delta: self.alpha_sel.delta,
            delta_hat: self.delta_hat,
            tau_norm: self.tau_norm,
            trunc_order: self.trunc_order,
            tail_bound: self.tail_bound,
            tol: self.tol,
            p: self.p,
            range_cloud_size: self.alpha_sel.range_cloud.len(),
            n_points: self.grid_n,
            spatial_halfwidth: self.grid_halfwidth,
            t_max: std::f64::consts::PI * self.grid_n as f64 / (2.0 * self.grid_halfwidth),
            boundary_offset: BOUNDARY_OFFSET,
            min_im_sampled: self.hypothesis.min_im,
            sup_abs_sampled: self.hypothesis.sup_abs,
            warnings: self.warnings.clone(),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha_sel.alpha
    }
}

/// Truncation order `⌈log(tol·(1 − δ̂))/log δ̂⌉`, at least 1.
fn truncation_order(delta_hat: f64, tol: f64) -> usize {
    if delta_hat <= 0.0 {
        return 1;
    }
    let m = ((tol * (1.0 - delta_hat)).ln() / delta_hat.ln()).ceil();
    if m.is_finite() && m >= 1.0 {
        m as usize
    } else {
        1
    }
}

pub fn plan_expansion(psi: &AnalyticSymbol, grid: &HardyGrid, tol: f64) -> Result<ExpansionPlan> {
    plan_expansion_with(psi, grid, tol, &PlanOptions::default())
}

pub fn plan_expansion_with(
    psi: &AnalyticSymbol,
    grid: &HardyGrid,
    tol: f64,
    opts: &PlanOptions,
) -> Result<ExpansionPlan> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tol = {tol} must be positive")));
    }
    if !(opts.p > 0.0 && opts.p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p = {} must be positive", opts.p)));
    }
    let hypothesis = verify_hypothesis(psi, &opts.sample_spec);
    if !hypothesis.ok {
        return Err(Error::Hypothesis(format!(
            "sampled min Im ψ = {} at z = {} is below eps_lower = {}",
            hypothesis.min_im, hypothesis.argmin, hypothesis.eps_lower
        )));
    }

    let boundary: Vec<Complex64> = grid
        .xs()
        .iter()
        .map(|x| psi.boundary_value(x / opts.p))
        .collect();
    let mut values = boundary.clone();
    for z in opts.sample_spec.points() {
        values.push(psi.eval(z)?);
    }
    let range_cloud = PointCloud::new(values).dedup(opts.range_dedup_tol);
    let alpha_sel = select_alpha(range_cloud)?;
    let alpha = alpha_sel.alpha;

    let ia = Complex64::new(0.0, alpha);
    let tau_samples: Vec<Complex64> = boundary.iter().map(|v| ia - v).collect();
    let tau_norm = tau_samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let grid_ratio = tau_norm / alpha;
    let delta_hat = grid_ratio.max(alpha_sel.delta);

    let mut warnings = Vec::new();
    if (grid_ratio - alpha_sel.delta).abs() > 0.1 * alpha_sel.delta {
        warnings.push(format!(
            "grid ratio ‖τ‖/α = {grid_ratio:.6} and range-cloud δ = {:.6} differ by more than 10%; the range may be under-sampled",
            alpha_sel.delta
        ));
    }
    if opts.p > 1.0 {
        warnings.push(format!("dilation p = {} truncates content above T_max/p", opts.p));
    }
    if !(delta_hat < 1.0) {
        return Err(Error::ExpansionInfeasible {
            alpha,
            delta: delta_hat,
        });
    }

    let m = truncation_order(delta_hat, tol);
    if m > opts.max_order {
        return Err(Error::ToleranceUnreachable {
            tol,
            max_order: opts.max_order,
            achievable: delta_hat.powi(opts.max_order as i32) / (1.0 - delta_hat),
        });
    }
    let tail_bound = delta_hat.powi(m as i32) / (1.0 - delta_hat);

    Ok(ExpansionPlan {
        alpha_sel,
        delta_hat,
        trunc_order: m,
        tail_bound,
        tol,
        tau_samples,
        tau_norm,
        p: opts.p,
        grid_n: grid.n_points(),
        grid_halfwidth: grid.spatial_halfwidth(),
        hypothesis,
        warnings,
    })
}
