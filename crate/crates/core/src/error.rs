use thiserror::Error;

use crate::multigraph::{EdgeId, VertexId};

/// Errors raised by the finite and infinite graph algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(EdgeId),
    #[error("edge {0} would be a loop")]
    LoopEdge(EdgeId),
    #[error("edge id {0} is already in use")]
    DuplicateEdge(EdgeId),
    #[error("partition classes overlap at vertex {0}")]
    OverlappingPartition(VertexId),
    #[error("partition contains an empty class")]
    EmptyPartitionClass,
    #[error("terminal sets intersect at vertex {0}")]
    TerminalsOverlap(VertexId),
    #[error("terminal set is empty")]
    EmptyTerminalSet,
    #[error("vertex {0} is not a terminal")]
    NotATerminal(VertexId),
    #[error("at least two terminals are required")]
    TooFewTerminals,
    #[error("edge {edge} is not incident to vertex {vertex}")]
    NotIncident { edge: EdgeId, vertex: VertexId },
    #[error("splitting requires two distinct edges")]
    SameEdge,
    #[error("vertex {0} is a terminal and cannot be split")]
    TerminalSplit(VertexId),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("line-graph path is not vertex-minimal: positions {0} and {1} are adjacent")]
    NotVertexMinimal(usize, usize),
    #[error("enumeration needs {needed} free vertices but the bound is {bound}")]
    EnumerationBound { needed: usize, bound: usize },
    #[error("parity condition fails: |delta(X)| = {cut_size} is odd")]
    ParityViolation { side: Vec<VertexId>, cut_size: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("invalid presentation: {}", .0.join("; "))]
    Presentation(Vec<String>),
    #[error("{0}")]
    Ends(String),
    #[error("stabilization window exceeded up to depth {depth}: bounds [{lo}, {hi}]")]
    NotStabilized { depth: u32, lo: usize, hi: usize },
    #[error("routing capacity exceeded: demand {demand}, period cut {cut}")]
    Infeasible { demand: usize, cut: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
