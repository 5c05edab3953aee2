//! Isomorphism equations, lifting, multilinearisation and assignment checks.

pub mod assignment;
pub mod lift;
pub mod system;

pub use crate::graph::is_local_isomorphism;
pub use assignment::{verify_assignment, AssignmentCheck, MlinAssignment};
pub use lift::{lift_system, lift_within_degree, multilinearise, multilinearise_with_columns, LiftedSystem};
pub use system::{build_axb_system, build_iso_system, AxiomKind, IsoOptions, IsoSystem, PairVariableSpace};
