use thiserror::Error;

/// Errors raised by graph construction and the combinatorial operations.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed dart permutation: {detail}")]
    MalformedPermutation { detail: String },
    #[error("vertex {vertex} has valence {valence}")]
    BadValence { vertex: usize, valence: usize },
    #[error("graph is disconnected (vertex {vertex} unreachable)")]
    Disconnected { vertex: usize },
    #[error("complement is not a disk: boundary walk misses dart {dart}")]
    MultipleBoundaryCycles { dart: usize },
    #[error("vertex/edge counts ({vertices}, {edges}) fit no spine genus")]
    BadGenus { vertices: usize, edges: usize },
    #[error("vertex {vertex} is not trivalent")]
    NotTrivalent { vertex: usize },
    #[error("edge {edge} is a loop; flip undefined")]
    LoopEdge { edge: usize },
    #[error("edge {edge} touches the univalent vertex; flip undefined")]
    TailEdge { edge: usize },
    #[error("invalid inputs: {detail}")]
    InvalidInputs { detail: String },
    #[error("corner count is odd")]
    OddCornerCount,
    #[error("darts {0} and {1} lie on the same edge")]
    SameEdge(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cycle is not closed at step {0}")]
    NotClosed(usize),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("edge form violates the vertex conditions at vertex {vertex}")]
    NotInQ { vertex: usize },
    #[error("mod-2 Gram matrix is singular")]
    SingularGram,
    #[error("flip sequence failed at step {step}: {source}")]
    SequenceStep {
        step: usize,
        #[source]
        source: Box<GraphError>,
    },
    #[error("exhaustive enumeration capped at genus 3 (asked for {0})")]
    GenusTooLarge(usize),
    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },
}
