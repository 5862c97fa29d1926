//! Branch decompositions of bounded mim-width for `(K_t, sP1+P5)`-free
//! graphs, together with exhaustive oracles that check every width claim on
//! small inputs.
//!
//! The main entry point is [`construct::decompose`], which returns a branch
//! decomposition, a [`composer::WidthCertificate`] bounding its width, and a
//! trace of the recursion. [`decomp::mimw_of`] measures any decomposition
//! exactly and [`decomp::exact_mimw`] computes the true mim-width of small
//! graphs by enumeration.

pub mod coloring;
pub mod composer;
pub mod construct;
pub mod decomp;
pub mod domfind;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod pattern;
mod search;
pub mod sweep;

pub use composer::WidthCertificate;
pub use construct::{decompose, DecompositionResult};
pub use decomp::{BranchDecomposition, CutReport, WidthReport};
pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use pattern::{ClassParams, Pattern, PatternWitness};
