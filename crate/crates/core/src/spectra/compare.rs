use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::eigenvalues;
use super::pseudo::{HessenbergSigmaMin, SigmaMinOptions};
use super::spiral::{predict_essential_spectrum, SpiralSet};
use crate::exec::Execution;
use crate::expansion::{build_composition_operator, plan_expansion_with, PlanOptions, PlanSummary};
use crate::halfline::{assemble_dense_with, DenseMatrix, HardyGrid, DEFAULT_DENSE_CAP};
use crate::symbols::{
    estimate_cluster_set_at_infinity, estimate_essential_range_at_infinity, AnalyticSymbol, BoundarySampling,
    ClusterSampling, PointCloud, SymbolFamily,
};
use crate::{Error, Result};

fn directed(a: &[Complex64], b: &[Complex64], exec: Execution) -> f64 {
    exec.map(a.len(), |i| b.iter().map(|q| (a[i] - q).norm()).fold(f64::INFINITY, f64::min))
        .into_iter()
        .fold(0.0, f64::max)
}

/// Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParameter("hausdorff distance of an empty cloud".into()));
    }
    let exec = Execution::default();
    Ok(directed(a.points(), b.points(), exec).max(directed(b.points(), a.points(), exec)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompareMode {
    /// Two-sided: Hausdorff distance between prediction and eigenvalues.
    Equality,
    /// One-sided: largest `σ_min(A − λI)` over predicted points `λ`.
    Containment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct CompareOptions {
    /// Predicted points are thinned to representatives at this spacing
    /// before `σ_min` is evaluated; 0 evaluates every point.
    pub thinning_cell: f64,
    pub sigma: SigmaMinOptions,
    pub exec: Execution,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            thinning_cell: 0.02,
            sigma: SigmaMinOptions::default(),
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub matrix_dim: usize,
    pub n_points: Option<usize>,
    pub spatial_halfwidth: Option<f64>,
    pub symbol_family: Option<String>,
    pub plan: Option<PlanSummary>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub mode: CompareMode,
    pub predicted: SpiralSet,
    pub eigenvalues: PointCloud,
    pub hausdorff: Option<f64>,
    /// Largest indicator over the evaluated predicted points.
    pub containment_margin: Option<f64>,
    /// `max_λ min_c (σ_min(c) + |λ − c|)` over all predicted `λ` and
    /// evaluated `c`; an upper bound for every predicted point since
    /// `σ_min(A − λI)` is 1-Lipschitz in `λ`.
    pub containment_bound: Option<f64>,
    pub evaluated_points: usize,
    pub thinning_cell: f64,
    pub verdict: Option<Verdict>,
    pub metadata: ReportMetadata,
}

/// Compares a predicted spiral set with a finite section.
pub fn compare(
    predicted: &SpiralSet,
    matrix: &DenseMatrix,
    mode: CompareMode,
    opts: &CompareOptions,
) -> Result<SpectrumReport> {
    let eig = eigenvalues(matrix)?;
    let mut report = SpectrumReport {
        mode,
        predicted: predicted.clone(),
        eigenvalues: eig,
        hausdorff: None,
        containment_margin: None,
        containment_bound: None,
        evaluated_points: 0,
        thinning_cell: opts.thinning_cell,
        verdict: None,
        metadata: ReportMetadata {
            matrix_dim: matrix.nrows(),
            ..Default::default()
        },
    };
    match mode {
        CompareMode::Equality => {
            report.hausdorff = Some(hausdorff(&predicted.points, &report.eigenvalues)?);
        }
        CompareMode::Containment => {
            let all = predicted.points.points();
            let centers = if opts.thinning_cell > 0.0 {
                predicted.points.dedup(opts.thinning_cell).into_points()
            } else {
                all.to_vec()
            };
            let solver = HessenbergSigmaMin::with_options(matrix, opts.exec, opts.sigma);
            let sig = solver.sigma_min_many(&centers, opts.exec);
            if sig.iter().any(|s| !s.is_finite()) {
                return Err(Error::Eigensolver("non-finite pseudospectral indicator".into()));
            }
            let margin = sig.iter().cloned().fold(0.0, f64::max);
            let bound = opts
                .exec
                .map(all.len(), |i| {
                    centers
                        .iter()
                        .zip(&sig)
                        .map(|(c, s)| s + (all[i] - c).norm())
                        .fold(f64::INFINITY, f64::min)
                })
                .into_iter()
                .fold(margin, f64::max);
            report.containment_margin = Some(margin);
            report.containment_bound = Some(bound);
            report.evaluated_points = centers.len();
        }
    }
    Ok(report)
}

/// Which symbol cloud generates the predicted spirals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSource {
    /// Cluster points of `ψ(z)` as `z → ∞` in the closed half-plane.
    ClusterSet,
    /// Local essential range of the boundary values at `±∞`.
    EssentialRange,
}

#[derive(Debug, Clone)]
pub struct SpectrumOptions {
    pub mode: CompareMode,
    pub resolution: f64,
    /// Defaults to the cluster set in equality mode and the essential range
    /// in containment mode.
    pub source: Option<GeneratorSource>,
    pub compare: CompareOptions,
    pub cluster: ClusterSampling,
    pub boundary: BoundarySampling,
    pub plan: PlanOptions,
    pub equality_tol: f64,
    pub containment_tol: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            mode: CompareMode::Equality,
            resolution: 0.01,
            source: None,
            compare: CompareOptions::default(),
            cluster: ClusterSampling::default(),
            boundary: BoundarySampling::default(),
            plan: PlanOptions::default(),
            equality_tol: 0.05,
            containment_tol: 0.1,
        }
    }
}

impl SpectrumOptions {
    pub fn containment() -> Self {
        Self {
            mode: CompareMode::Containment,
            ..Default::default()
        }
    }

    pub fn generator_source(&self) -> GeneratorSource {
        self.source.unwrap_or(match self.mode {
            CompareMode::Equality => GeneratorSource::ClusterSet,
            CompareMode::Containment => GeneratorSource::EssentialRange,
        })
    }
}

fn is_oscillatory(family: &SymbolFamily) -> bool {
    match family {
        SymbolFamily::LogOscillation { .. } => true,
        SymbolFamily::Sum { terms } => terms.iter().any(|t| is_oscillatory(t.family())),
        _ => false,
    }
}

/// Full pipeline on one grid: plan, assemble, predict, compare.
pub fn spectrum_report(
    psi: &AnalyticSymbol,
    grid: &HardyGrid,
    tol: f64,
    opts: &SpectrumOptions,
) -> Result<SpectrumReport> {
    let plan = plan_expansion_with(psi, grid, tol, &opts.plan)?;
    let op = build_composition_operator(&plan, grid)?;
    let matrix = assemble_dense_with(&op, opts.compare.exec, DEFAULT_DENSE_CAP)?;
    let source = opts.generator_source();
    let cloud = match source {
        GeneratorSource::ClusterSet => estimate_cluster_set_at_infinity(psi, &opts.cluster),
        GeneratorSource::EssentialRange => estimate_essential_range_at_infinity(psi, &opts.boundary),
    };
    if cloud.is_empty() {
        return Err(Error::Hypothesis("the sampled generator cloud is empty".into()));
    }
    let eps = psi.eps_lower().min(cloud.min_im());
    let predicted = predict_essential_spectrum(&cloud, eps, opts.resolution)?;
    let mut report = compare(&predicted, &matrix, opts.mode, &opts.compare)?;

    let mut notes = plan.warnings.clone();
    notes.push(format!("generators: {source:?}, {} sampled values", cloud.len()));
    let verdict = match opts.mode {
        CompareMode::Equality => {
            let h = report.hausdorff.unwrap_or(f64::INFINITY);
            if h <= opts.equality_tol {
                Verdict::Pass
            } else if is_oscillatory(psi.family()) {
                notes.push("inconclusive (QC hypothesis unverified)".into());
                Verdict::Inconclusive
            } else {
                Verdict::Fail
            }
        }
        CompareMode::Containment => {
            if report.containment_margin.unwrap_or(f64::INFINITY) <= opts.containment_tol {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
    };
    report.verdict = Some(verdict);
    report.metadata = ReportMetadata {
        matrix_dim: matrix.nrows(),
        n_points: Some(grid.n_points()),
        spatial_halfwidth: Some(grid.spatial_halfwidth()),
        symbol_family: Some(psi.family_name().to_string()),
        plan: Some(plan.summary()),
        notes,
    };
    Ok(report)
}

/// Results on a grid and on its refinement with twice the points.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumStudy {
    pub coarse: SpectrumReport,
    pub fine: Option<SpectrumReport>,
}

impl SpectrumStudy {
    /// The finer grid's report when it exists.
    pub fn primary(&self) -> &SpectrumReport {
        self.fine.as_ref().unwrap_or(&self.coarse)
    }
}

pub fn spectrum_study(
    psi: &AnalyticSymbol,
    grid: &HardyGrid,
    tol: f64,
    opts: &SpectrumOptions,
    refine: bool,
) -> Result<SpectrumStudy> {
    let mut coarse = spectrum_report(psi, grid, tol, opts)?;
    let fine = if refine {
        let n2 = grid.n_points() * 2;
        if (n2 / 2) * (n2 / 2) > DEFAULT_DENSE_CAP {
            coarse
                .metadata
                .notes
                .push(format!("refinement to N = {n2} skipped: dense matrix exceeds the size cap"));
            None
        } else {
            let g2 = HardyGrid::new(n2, grid.spatial_halfwidth())?;
            Some(spectrum_report(psi, &g2, tol, opts)?)
        }
    } else {
        None
    };
    Ok(SpectrumStudy { coarse, fine })
}
