use num_complex::Complex64;

use super::plan::ExpansionPlan;
use crate::halfline::{dilation, theta_n, DiscreteOperator, HardyGrid, ToeplitzMultiplierSum};
use crate::{Error, Result};

/// The truncated sum `Σ_{n<M} T_{τⁿ} D_{ϑ_n}` (without the dilation).
pub fn build_series(plan: &ExpansionPlan, grid: &HardyGrid) -> Result<ToeplitzMultiplierSum> {
    if grid.n_points() != plan.grid_n || grid.spatial_halfwidth() != plan.grid_halfwidth {
        return Err(Error::InvalidParameter("plan was made for a different grid".into()));
    }
    let m = plan.trunc_order;
    let ts = grid.nonneg_ts();
    let mut symbols = Vec::with_capacity(m);
    let mut power = vec![Complex64::new(1.0, 0.0); grid.n_points()];
    for n in 0..m {
        if n > 0 {
            power
                .iter_mut()
                .zip(&plan.tau_samples)
                .for_each(|(p, t)| *p *= t);
        }
        symbols.push(power.clone());
    }
    let multipliers = (0..m)
        .map(|n| {
            let th = theta_n(n, plan.alpha());
            ts.iter().map(|&t| th(t)).collect()
        })
        .collect();
    ToeplitzMultiplierSum::new(grid, symbols, multipliers)
}

/// `V_p Σ_{n<M} T_{τⁿ} D_{ϑ_n}`; the dilation is omitted when `p = 1`.
pub fn build_composition_operator(plan: &ExpansionPlan, grid: &HardyGrid) -> Result<DiscreteOperator> {
    let series = DiscreteOperator::Series(build_series(plan, grid)?);
    if plan.p == 1.0 {
        Ok(series)
    } else {
        Ok(DiscreteOperator::Product(vec![dilation(plan.p, grid)?, series]))
    }
}
