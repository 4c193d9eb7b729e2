use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;

use super::{SeparatorCertificate, Terminal};
use crate::error::{Error, Result};
use crate::flow::{Network, INF};
use crate::multigraph::{EdgeId, VertexId};
use crate::presentation::{truncate, EdgeCoord, EndStructure, Presentation, Truncation, VertexCoord};

/// The quotient truncation `M_n` as a flow network.
///
/// Nodes are the vertices of `G_n` followed by one hub per class. Each hub is
/// tied with uncuttable arcs to the layer-`n` vertices of its strands and to
/// the dominators of its class; it stands for everything above layer `n`.
#[derive(Debug, Clone)]
pub struct Wiring {
    pub trunc: Truncation,
    pub net: Network,
    node_of: BTreeMap<VertexId, usize>,
    vertex_at: Vec<VertexId>,
    pub hubs: Vec<usize>,
    tags: Vec<EdgeId>,
}

impl Wiring {
    pub fn build(p: &Presentation, ends: &EndStructure, n: u32) -> Wiring {
        let trunc = truncate(p, n);
        let vertex_at: Vec<VertexId> = trunc.graph.vertices().collect();
        let node_of: BTreeMap<VertexId, usize> = vertex_at.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut net = Network::new(vertex_at.len());
        let mut tags = Vec::new();
        for (e, u, v) in trunc.graph.edges() {
            net.add_edge(node_of[&u], node_of[&v], 1, Some(tags.len()));
            tags.push(e);
        }
        let hubs: Vec<usize> = ends.classes.iter().map(|_| net.add_node()).collect();
        for s in &ends.strands {
            let hub = hubs[ends.class_of[&s.id]];
            for pat in ends.strand_layer(s.id, n) {
                let v = trunc.arm_vertex(s.id.arm, n, pat).expect("layer vertex");
                net.add_edge(hub, node_of[&v], INF, None);
            }
        }
        for c in &ends.classes {
            for d in &c.dominators {
                net.add_edge(hubs[c.id], node_of[d], INF, None);
            }
        }
        Wiring { trunc, net, node_of, vertex_at, hubs, tags }
    }

    pub fn depth(&self) -> u32 {
        self.trunc.depth
    }

    pub fn node(&self, v: VertexId) -> Option<usize> {
        self.node_of.get(&v).copied()
    }

    pub fn terminal_node(&self, t: Terminal) -> Result<usize> {
        match t {
            Terminal::Core(v) => self.node(v).ok_or(Error::UnknownVertex(v)),
            Terminal::Class(c) => self.hubs.get(c).copied().ok_or_else(|| Error::Ends(format!("no edge-end class {c}"))),
        }
    }

    /// Graph vertex of a node, `None` for hubs and auxiliary nodes.
    pub fn vertex(&self, node: usize) -> Option<VertexId> {
        self.vertex_at.get(node).copied()
    }

    pub fn tag_edge(&self, tag: usize) -> EdgeId {
        self.tags[tag]
    }

    /// Adds a super node joined by uncuttable arcs to the given terminals.
    pub fn super_node(&mut self, terminals: &[Terminal], outgoing: bool) -> Result<usize> {
        let s = self.net.add_node();
        for &t in terminals {
            let x = self.terminal_node(t)?;
            if outgoing {
                self.net.add_arc(s, x, INF, None);
            } else {
                self.net.add_arc(x, s, INF, None);
            }
        }
        Ok(s)
    }

    /// Reads the cut `delta(X)` off a node set `X` of the network.
    pub fn certificate(
        &self,
        ends: &EndStructure,
        side: &[bool],
        sources: &[Terminal],
        sinks: &[Terminal],
    ) -> SeparatorCertificate {
        let inside = |v: VertexId| side[self.node_of[&v]];
        let edges: BTreeSet<EdgeCoord> = self
            .trunc
            .graph
            .edges()
            .filter(|&(_, u, v)| inside(u) != inside(v))
            .map(|(e, _, _)| self.trunc.edge_coord(e).expect("coordinate"))
            .collect();
        let side_vertices: BTreeSet<VertexCoord> = self
            .trunc
            .vertex_coords()
            .filter(|&(v, _)| inside(v))
            .map(|(_, c)| c)
            .collect();
        let side_classes = (0..self.hubs.len()).filter(|&c| side[self.hubs[c]]).collect();
        SeparatorCertificate {
            sources: sources.to_vec(),
            sinks: sinks.to_vec(),
            edges,
            side: side_vertices,
            side_classes,
            depth: self.depth(),
            evidence: Vec::new(),
        }
        .with_evidence(ends)
    }
}

/// Minimum cut between two terminal sets in `M_n`, with the side of `sources`
/// taken as small as possible.
pub(crate) fn model_min_cut(
    p: &Presentation,
    ends: &EndStructure,
    n: u32,
    sources: &[Terminal],
    sinks: &[Terminal],
) -> Result<(u64, SeparatorCertificate)> {
    let mut w = Wiring::build(p, ends, n);
    let s = w.super_node(sources, true)?;
    let t = w.super_node(sinks, false)?;
    let value = w.net.max_flow(s, t);
    if value >= INF {
        return Err(Error::Internal("uncuttable terminals reached the cut routine".into()));
    }
    let side = w.net.residual_reachable(s);
    Ok((value, w.certificate(ends, &side, sources, sinks)))
}

/// Whether `cert` separates its sources from its sinks in `M_n` and is the
/// coboundary of its recorded side there.
pub fn cut_in_model(p: &Presentation, ends: &EndStructure, cert: &SeparatorCertificate, n: u32) -> Result<bool> {
    if n < cert.depth {
        return Err(Error::Ends(format!("model depth {n} is below the certificate depth {}", cert.depth)));
    }
    let t = truncate(p, n);
    let ids: Vec<VertexId> = t.graph.vertices().collect();
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let hub = |c: usize| ids.len() + c;
    let mut uf = UnionFind::<usize>::new(ids.len() + ends.classes.len());
    let mut cut_seen = BTreeSet::new();
    for (e, u, v) in t.graph.edges() {
        let c = t.edge_coord(e).expect("coordinate");
        let crosses = cert.contains(ends, c.ends(p).0) != cert.contains(ends, c.ends(p).1);
        if cert.edges.contains(&c) {
            if !crosses {
                return Ok(false);
            }
            cut_seen.insert(c);
        } else if crosses {
            return Ok(false);
        } else {
            uf.union(index[&u], index[&v]);
        }
    }
    if cut_seen.len() != cert.edges.len() {
        return Ok(false);
    }
    for s in &ends.strands {
        for pat in ends.strand_layer(s.id, n) {
            let v = t.arm_vertex(s.id.arm, n, pat).expect("layer vertex");
            uf.union(index[&v], hub(ends.class_of[&s.id]));
        }
    }
    for c in &ends.classes {
        for d in &c.dominators {
            uf.union(index[d], hub(c.id));
        }
    }
    let node = |t: &Terminal| match *t {
        Terminal::Core(v) => index.get(&v).copied().ok_or(Error::UnknownVertex(v)),
        Terminal::Class(c) => Ok(hub(c)),
    };
    for a in &cert.sources {
        let a = uf.find(node(a)?);
        for b in &cert.sinks {
            if uf.find(node(b)?) == a {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
