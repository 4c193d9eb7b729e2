//! Edge-ends of periodically presented infinite graphs.
//!
//! The finite layer ([`multigraph`], [`menger`], [`tpath`]) implements
//! edge-disjoint Menger with cuts lying on path families and T-path packing
//! in inner-Eulerian multigraphs. The infinite layer ([`presentation`],
//! [`ends`]) encodes infinite graphs as a finite core with periodic arms and
//! dominating edge columns, computes their edge-ends, and builds path
//! families and separator certificates for edge-end Menger duality and
//! Lovász-Cherkassky packing with edge-ends.

pub mod ends;
pub mod error;
pub mod flow;
pub mod generate;
pub mod io;
pub mod menger;
pub mod multigraph;
pub mod oracle;
pub mod presentation;
pub mod suites;
pub mod tpath;

pub use error::{Error, Result};
pub use menger::{MengerResult, PathFamily};
pub use tpath::{pack_tpaths, PackingResult};
pub use multigraph::{Cut, EdgeId, EdgeLineage, Multigraph, Path, VertexId, VertexSet};
