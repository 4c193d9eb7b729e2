//! Edge-end versions of Menger's theorem and of the Lovász-Cherkassky theorem
//! on presented graphs.
//!
//! Everything here works on the quotient truncations `M_n`: the truncation
//! `G_n` where the layer-`n` vertices of every strand are tied to a hub of its
//! class with uncuttable edges, as are the dominators of the class. Tails above
//! layer `n` stay on the side of their hub, so every finite cut of `M_n` pulls
//! back to a finite cut of the infinite graph.

mod channels;
mod lambda;
mod lovasz;
mod menger;
mod path;
mod quotient;
mod reduced;
mod routing;
mod verify;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::VertexId;
use crate::presentation::{EdgeCoord, EndStructure, Presentation, StrandId, VertexCoord};

pub use channels::{strand_channels, Channel, ChannelSet};
pub use lambda::{lambda_ends, Lambda, LambdaOptions, LambdaResult, MergeWitness};
pub use lovasz::{lovasz_cherkassky_ends, LcEndsResult, LcOptions, TerminalCut};
pub use menger::{menger_ends, MengerEndsResult};
pub use path::{edge_disjoint, first_shared_edge, ray_prefix, ExtendedPath, PathEnd, PathKind};
pub use quotient::{cut_in_model, Wiring};
pub use reduced::{check_parity_condition_ends, reduced_multigraph, Bundle, CappedGraph, ReducedEdge, ReducedGraph, ReducedNode, ReducedParity};
pub use routing::{route_to_ends, strand_ray_family, RouteRequest};
pub use verify::{verify_family, VerifyReport};

/// An edge-end given either by class id or by one of its strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndSelector {
    Class(usize),
    Strand(StrandId),
}

impl EndSelector {
    pub fn class(&self, ends: &EndStructure) -> Result<usize> {
        match *self {
            EndSelector::Class(c) => ends.class(c).map(|c| c.id),
            EndSelector::Strand(s) => {
                ends.class_of.get(&s).copied().ok_or_else(|| Error::Ends(format!("no strand {s:?}")))
            }
        }
    }

    /// `class:N`, `N`, `strand:ARM` (first strand of the arm) or `strand:ARM:COMPONENT:RESIDUE`.
    pub fn parse(p: &Presentation, text: &str) -> Result<EndSelector> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("strand:") {
            let parts: Vec<&str> = rest.split(':').collect();
            let arm = p
                .arms
                .iter()
                .position(|a| a.name == parts[0])
                .or_else(|| parts[0].parse().ok().filter(|&i: &usize| i < p.arms.len()))
                .ok_or_else(|| Error::Parse(format!("unknown arm {:?}", parts[0])))?;
            let num = |s: &str| s.parse::<u32>().map_err(|_| Error::Parse(format!("bad strand index {s:?}")));
            return match parts.len() {
                1 => Ok(EndSelector::Strand(StrandId { arm, component: 0, residue: 0 })),
                3 => Ok(EndSelector::Strand(StrandId { arm, component: num(parts[1])? as usize, residue: num(parts[2])? })),
                _ => Err(Error::Parse(format!("bad strand selector {text:?}"))),
            };
        }
        let id = text.strip_prefix("class:").unwrap_or(text);
        id.parse().map(EndSelector::Class).map_err(|_| Error::Parse(format!("bad end selector {text:?}")))
    }
}

/// A terminal of the infinite graph: a core vertex or an edge-end class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    Core(VertexId),
    Class(usize),
}

impl Terminal {
    /// End selectors as above, anything else names a core vertex by label.
    pub fn parse(p: &Presentation, ends: &EndStructure, text: &str) -> Result<Terminal> {
        let text = text.trim();
        if text.starts_with("class:") || text.starts_with("strand:") {
            return Ok(Terminal::Class(EndSelector::parse(p, text)?.class(ends)?));
        }
        p.core
            .vertex_by_label(text)
            .map(Terminal::Core)
            .ok_or_else(|| Error::Parse(format!("unknown core vertex {text:?}")))
    }
}

/// Per-end evidence of a separator: no edge of `guard` lies in the tail
/// component `C(guard, class)`; for a cut `S = delta(X)` the guard is `S` itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndEvidence {
    pub class: usize,
    pub guard: BTreeSet<EdgeCoord>,
    /// which side of the cut holds the tails of the class
    pub in_side: bool,
}

/// A finite cut `S = delta(X)` of the infinite graph.
///
/// `X` is given by its vertices up to layer `depth` plus the classes whose
/// tails it contains; arm vertices above `depth` belong to `X` exactly when
/// the class of their strand does.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorCertificate {
    pub sources: Vec<Terminal>,
    pub sinks: Vec<Terminal>,
    pub edges: BTreeSet<EdgeCoord>,
    pub side: BTreeSet<VertexCoord>,
    pub side_classes: BTreeSet<usize>,
    pub depth: u32,
    pub evidence: Vec<EndEvidence>,
}

impl SeparatorCertificate {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, ends: &EndStructure, v: VertexCoord) -> bool {
        match v {
            VertexCoord::Arm { arm, layer, pat } if layer > self.depth => {
                self.side_classes.contains(&ends.class_of_vertex(arm, pat, layer))
            }
            _ => self.side.contains(&v),
        }
    }

    pub(crate) fn with_evidence(mut self, ends: &EndStructure) -> Self {
        self.evidence = ends
            .classes
            .iter()
            .map(|c| EndEvidence { class: c.id, guard: self.edges.clone(), in_side: self.side_classes.contains(&c.id) })
            .collect();
        self
    }
}

/// Checks the shape of a terminal set for the ends algorithms.
pub(crate) fn check_terminals(p: &Presentation, ends: &EndStructure, terminals: &[Terminal]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &t in terminals {
        match t {
            Terminal::Core(v) if !p.core.contains_vertex(v) => return Err(Error::UnknownVertex(v)),
            Terminal::Class(c) => {
                ends.class(c)?;
            }
            _ => {}
        }
        if !seen.insert(t) {
            return Err(Error::Ends(format!("terminal {t:?} listed twice")));
        }
    }
    Ok(())
}
