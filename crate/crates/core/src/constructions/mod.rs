//! Executable forms of the structural constructions on product replacement
//! graphs, each paired with a verifier that reports what it checked.

mod center_cheeger;
mod conjugation;
mod embed;
mod lift;
mod quadrant;
mod reduce;

pub use center_cheeger::{verify_center_quotient_cheeger, CenterCheegerReport, ConventionComparison};
pub use conjugation::{
    conjugate_tuple, conjugation_fibers, verify_conjugation_lipschitz, ConjugationMap, FibersReport,
    LipschitzReport, LipschitzWitness, PartitionReport, PARTITION_LIMIT,
};
pub use embed::{verify_embedding, EmbeddingReport, Gamma2Embedding};
pub use lift::{
    verify_local_isomorphism, verify_local_isomorphism_on, verify_return_domination, DominationReport,
    DominationRow, LiftMap, LocalIsoReport,
};
pub use quadrant::{quadrant_parent, quadrant_tree_check, QuadrantReport};
pub use reduce::{reduce_redundant_tuple, reduction_report, replay, Reduction, ReductionReport};
