//! Instances, solvers and exact oracles for four covering/packing problems:
//! node-disjoint triangle packing, full-sibling cover under the 2-/4-allele
//! conditions, maximum profit coverage and 2-coverage.
//!
//! Ids are 0-based everywhere in this crate. The text formats in [`io`] are
//! 1-based.

pub mod budget;
pub mod cov2;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod lin2;
pub mod matching;
pub mod mpc;
pub mod packing;
pub mod ratio;
pub mod setsystem;
pub mod sib;
pub mod sibcheck;
pub mod sibcover;
pub mod solution;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::Graph;
pub use lin2::{Lin2System, Literal};
pub use ratio::Ratio;
pub use setsystem::WeightedSetSystem;
pub use sib::{AlleleCondition, LabelCoverInstance, SibInstance};
pub use solution::{
    Cov2Solution, CoverSolution, MpcSolution, PackingSolution, TrianglePacking,
    VerificationReport,
};
