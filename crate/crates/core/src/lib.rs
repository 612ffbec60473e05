//! Exact invariants and non-existence obstructions for complex plane curves
//! and line arrangements, given only their combinatorial type.
//!
//! The pipeline in [`pipeline`] runs every applicable check on a parsed
//! [`input::Document`] and returns an [`report::ObstructionReport`].

pub mod curve_model;
pub mod error;
pub mod hurwitz;
pub mod input;
pub mod invariants;
pub mod lattice;
pub mod pipeline;
pub mod realize_ff;
pub mod report;
pub mod singularities;
pub mod smith;

pub use curve_model::{CombinatorialCurve, LineArrangement, WeakProfile};
pub use error::{Error, Result};
pub use report::{CheckRecord, ObstructionReport, Verdict};
pub use singularities::SingularityType;
