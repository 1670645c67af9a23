//! The composition operator `C_φ`, `φ(z) = z + ψ(z)`, as the norm-convergent
//! series `Σ_n T_{τⁿ} D_{ϑ_n}` with `τ = iα − ψ`, plus an independent
//! Cauchy-integral quadrature of the same operator.
//!
//! Truncation after `M` terms is certified: `sup_t tⁿe^{−αt}/n! ≤ α^{−n}`
//! bounds the `n`-th term by `δ̂ⁿ` with `δ̂ = ‖τ‖_∞/α < 1`, so the dropped
//! tail is at most `δ̂^M/(1 − δ̂)`.

mod alpha;
mod oracle;
mod plan;
mod series;

pub use alpha::{select_alpha, AlphaSelection};
pub use oracle::{
    cauchy_integral_at, oracle_composition_operator, oracle_vs_series_report, CauchyQuadrature,
    OracleReport, QuadSpec,
};
pub use plan::{plan_expansion, plan_expansion_with, ExpansionPlan, PlanOptions, PlanSummary};
pub use series::{build_composition_operator, build_series};
