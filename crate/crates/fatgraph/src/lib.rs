//! Trivalent fatgraph spines of a once-bordered (or once-punctured)
//! surface: flips and their relation loops, integer homology markings,
//! the flip cocycles and the homology-valued invariant they bound, its
//! mod-2 reduction, and the three associated quadratic forms over GF(2).
//!
//! Everything is exact integer combinatorics; no floats anywhere.

pub mod cocycle;
pub mod enumerate;
pub mod error;
pub mod examples;
pub mod graph;
pub mod io;
pub mod marking;
pub mod spin;
pub mod verify;
pub mod xi;

pub use error::GraphError;
pub use graph::{
    BoundaryOrder, Dart, Fatgraph, FlipMove, GraphKind, ValidationReport, VertexFrame, VertexType,
};
pub use marking::{HomologyClass, Marking, Mod2Class};
