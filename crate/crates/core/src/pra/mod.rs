//! The product replacement algorithm: seeded random walks on Γₙ(G), element
//! output and mixing diagnostics against the exact walk law.

mod exact;
mod mixing;
mod walk;

pub use exact::{
    component, exact_walk_distribution, exact_walk_distribution_in, tv_distance, tv_to_uniform,
    ExactDistribution, EXACT_VERTEX_CAP,
};
pub use mixing::{chi_square, mixing_report, ChiSquare, MixingReport, MIN_EXPECTED};
pub use walk::{
    histogram_csv, pra_walk, sample_elements, trial_rng, Emit, Histogram, MoveStream, WalkConfig,
};
