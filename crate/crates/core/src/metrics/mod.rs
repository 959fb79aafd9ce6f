//! Amenability-related measurements: isoperimetric constants, spectral gaps,
//! neighborhood growth and exact return probabilities.

mod cheeger;
mod growth;
mod regular;
mod report;
mod spectral;
mod walks;

pub use cheeger::{cheeger_exact, CheegerResult, CheegerWitness, CHEEGER_MAX_VERTICES};
pub use growth::{boundary, neighborhood_growth, Growth, HalfEdge};
pub use regular::RegularGraph;
pub use report::{
    metrics_report, metrics_report_on, return_probs_csv, CheegerEntry, CheegerSummary, Metric,
    MetricsReport, MetricsRequest,
    ReturnProbabilityRow, Truncation,
};
pub use spectral::{spectral_gap, SpectralGap, SPECTRAL_TOLERANCE};
pub use walks::{
    closed_walk_counts, return_probabilities, return_probabilities_in, return_probability,
    rho_estimate, rho_estimates, walk_ball, walk_distribution, walk_radius, ReturnProbability,
    RhoEstimate,
};
