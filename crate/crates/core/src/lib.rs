//! Product replacement graphs Γₙ(G): exploration by Nielsen moves,
//! amenability metrics, executable proof constructions and the product
//! replacement algorithm.

pub mod error;
pub mod group;

pub use error::{Error, Result};
pub use group::{parse_group_spec, Element, Group, GroupKind, Quotient, Subgroup};
pub mod graph;
pub mod metrics;
pub mod constructions;
pub mod pra;

pub use graph::{ExploredGraph, GenTuple, NielsenMove, PrGraph, Side};
