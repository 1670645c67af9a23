//! Analytic symbols on the upper half-plane and the disc.
//!
//! A quasi-parabolic map is `φ(z) = z + ψ(z)` with `ψ` bounded analytic on
//! the upper half-plane and `Im ψ ≥ ε > 0`; the map itself is never stored,
//! only `ψ`. Disc symbols `η` are pulled back through the Cayley transform.

mod cayley;
mod cloud;
mod estimate;
mod family;

pub use cayley::{cayley, inverse_cayley, HalfPlanePoint};
pub use cloud::PointCloud;
pub use estimate::{
    estimate_cluster_set_at_infinity, estimate_essential_range_at_infinity, verify_hypothesis,
    BoundarySampling, ClusterSampling, HypothesisReport, SampleSpec, Sides,
};
pub use family::{transfer_disc_symbol, AnalyticSymbol, DiscSymbol, SymbolFamily, BOUNDARY_OFFSET};
