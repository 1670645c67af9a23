use serde::{Deserialize, Serialize};

use crate::halfline::{DenseMatrix, HardyGrid};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormalityReport {
    /// `‖A*A − AA*‖`.
    pub comm_norm: f64,
    pub t_cuts: Vec<f64>,
    pub cut_indices: Vec<usize>,
    /// `‖(A*A − AA*)P_cut‖`, `P_cut` the projection onto coefficients with
    /// index `≥ cut`.
    pub tail_comm_norms: Vec<f64>,
    pub strictly_decreasing: bool,
}

fn largest_singular_value(m: faer::MatRef<'_, num_complex::Complex64>) -> Result<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0.0);
    }
    let s = m
        .singular_values()
        .map_err(|e| Error::Eigensolver(format!("singular values of commutator: {e:?}")))?;
    Ok(s.into_iter().fold(0.0, f64::max))
}

/// Commutator norms on the frequency-tail ladder `T_max/8, T_max/4, T_max/2`.
pub fn essential_normality_diagnostic(m: &DenseMatrix, grid: &HardyGrid) -> Result<NormalityReport> {
    if m.nrows() != grid.n_plus() {
        return Err(Error::InvalidParameter(format!(
            "matrix dimension {} does not match the grid's {}",
            m.nrows(),
            grid.n_plus()
        )));
    }
    let t_cuts: Vec<f64> = [8.0, 4.0, 2.0].iter().map(|d| grid.t_max() / d).collect();
    let cuts: Vec<usize> = t_cuts.iter().map(|&t| grid.index_at_or_above(t)).collect();
    let mut r = essential_normality_with_cuts(m, &cuts)?;
    r.t_cuts = t_cuts;
    Ok(r)
}

/// Commutator norms restricted to the coordinate tails starting at `cuts`.
pub fn essential_normality_with_cuts(m: &DenseMatrix, cuts: &[usize]) -> Result<NormalityReport> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidParameter("square matrix required".into()));
    }
    let n = m.nrows();
    if let Some(c) = cuts.iter().find(|&&c| c > n) {
        return Err(Error::InvalidParameter(format!("cut {c} exceeds dimension {n}")));
    }
    let comm: DenseMatrix = m.adjoint() * m - m * m.adjoint();
    let comm_norm = largest_singular_value(comm.as_ref())?;
    let tail_comm_norms = cuts
        .iter()
        .map(|&c| largest_singular_value(comm.as_ref().subcols(c, n - c)))
        .collect::<Result<Vec<_>>>()?;
    let strictly_decreasing = tail_comm_norms.windows(2).all(|w| w[1] < w[0]);
    Ok(NormalityReport {
        comm_norm,
        t_cuts: cuts.iter().map(|&c| c as f64).collect(),
        cut_indices: cuts.to_vec(),
        tail_comm_norms,
        strictly_decreasing,
    })
}
