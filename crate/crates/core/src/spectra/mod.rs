//! Essential spectra predicted as spiral sets `{e^{izt}: t ≥ 0} ∪ {0}`,
//! finite-section eigenvalues and pseudospectral indicators, and the
//! comparison between them.

mod compare;
mod eigen;
mod normality;
mod pseudo;
mod spiral;

pub use compare::{
    compare, hausdorff, spectrum_report, spectrum_study, CompareMode, CompareOptions, GeneratorSource,
    ReportMetadata, SpectrumOptions, SpectrumReport, SpectrumStudy, Verdict,
};
pub use eigen::eigenvalues;
pub use normality::{essential_normality_diagnostic, essential_normality_with_cuts, NormalityReport};
pub use pseudo::{pseudospectrum_indicator, HessenbergSigmaMin, SigmaMinOptions};
pub use spiral::{predict_essential_spectrum, SpiralSet};
