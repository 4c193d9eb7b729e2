use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::multigraph::{EdgeId, Multigraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexCoord {
    Core { id: VertexId },
    Arm { arm: usize, layer: u32, pat: usize },
}

impl VertexCoord {
    pub fn layer(&self) -> Option<u32> {
        match *self {
            VertexCoord::Core { .. } => None,
            VertexCoord::Arm { layer, .. } => Some(layer),
        }
    }
}

/// Presentation coordinates of an edge. `Inter` is indexed by its lower layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeCoord {
    Core { id: EdgeId },
    Attach { idx: usize },
    Intra { arm: usize, idx: usize, layer: u32 },
    Inter { arm: usize, idx: usize, layer: u32 },
    Dom { idx: usize, layer: u32 },
}

impl EdgeCoord {
    /// Highest layer touched by the edge, `None` for core edges.
    pub fn top_layer(&self) -> Option<u32> {
        match *self {
            EdgeCoord::Core { .. } => None,
            EdgeCoord::Attach { .. } => Some(0),
            EdgeCoord::Intra { layer, .. } | EdgeCoord::Dom { layer, .. } => Some(layer),
            EdgeCoord::Inter { layer, .. } => Some(layer + 1),
        }
    }

    /// Endpoints in coordinates.
    pub fn ends(&self, p: &Presentation) -> (VertexCoord, VertexCoord) {
        match *self {
            EdgeCoord::Core { id } => {
                let (u, v) = p.core.endpoints(id).expect("core edge");
                (VertexCoord::Core { id: u }, VertexCoord::Core { id: v })
            }
            EdgeCoord::Attach { idx } => {
                let a = p.attach[idx];
                (VertexCoord::Core { id: a.core }, VertexCoord::Arm { arm: a.arm, layer: 0, pat: a.pat })
            }
            EdgeCoord::Dom { idx, layer } => {
                let a = p.dominating[idx];
                (VertexCoord::Core { id: a.core }, VertexCoord::Arm { arm: a.arm, layer, pat: a.pat })
            }
            EdgeCoord::Intra { arm, idx, layer } => {
                let (x, y) = p.arms[arm].intra[idx];
                (VertexCoord::Arm { arm, layer, pat: x }, VertexCoord::Arm { arm, layer, pat: y })
            }
            EdgeCoord::Inter { arm, idx, layer } => {
                let (x, y) = p.arms[arm].inter[idx];
                (VertexCoord::Arm { arm, layer, pat: x }, VertexCoord::Arm { arm, layer: layer + 1, pat: y })
            }
        }
    }
}

/// The finite subgraph `G_n` with a bijection to presentation coordinates.
///
/// Identifiers are allocated layer by layer, so `G_n` carries the same ids in
/// every deeper truncation.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub graph: Multigraph,
    pub depth: u32,
    vertex_coord: BTreeMap<VertexId, VertexCoord>,
    vertex_of: BTreeMap<VertexCoord, VertexId>,
    edge_coord: BTreeMap<EdgeId, EdgeCoord>,
    edge_of: BTreeMap<EdgeCoord, EdgeId>,
}

impl Truncation {
    pub fn vertex(&self, c: VertexCoord) -> Option<VertexId> {
        self.vertex_of.get(&c).copied()
    }

    pub fn arm_vertex(&self, arm: usize, layer: u32, pat: usize) -> Option<VertexId> {
        self.vertex(VertexCoord::Arm { arm, layer, pat })
    }

    pub fn coord(&self, v: VertexId) -> Option<VertexCoord> {
        self.vertex_coord.get(&v).copied()
    }

    pub fn edge(&self, c: EdgeCoord) -> Option<EdgeId> {
        self.edge_of.get(&c).copied()
    }

    pub fn edge_coord(&self, e: EdgeId) -> Option<EdgeCoord> {
        self.edge_coord.get(&e).copied()
    }

    pub fn edge_coords(&self) -> impl Iterator<Item = (EdgeId, EdgeCoord)> + '_ {
        self.edge_coord.iter().map(|(&e, &c)| (e, c))
    }

    pub fn vertex_coords(&self) -> impl Iterator<Item = (VertexId, VertexCoord)> + '_ {
        self.vertex_coord.iter().map(|(&v, &c)| (v, c))
    }
}

/// Id allocation state while building a truncation.
struct Cursor {
    t: Truncation,
    next_vertex: u32,
    next_edge: u32,
}

impl Cursor {
    fn new(p: &Presentation, depth: u32) -> Cursor {
        Cursor {
            t: Truncation {
                graph: Multigraph::new(),
                depth,
                vertex_coord: BTreeMap::new(),
                vertex_of: BTreeMap::new(),
                edge_coord: BTreeMap::new(),
                edge_of: BTreeMap::new(),
            },
            next_vertex: p.core.vertices().last().map_or(0, |v| v.0 + 1),
            next_edge: p.core.next_edge_id().0,
        }
    }

    fn add_vertex(&mut self, c: VertexCoord, label: String) {
        let v = match c {
            VertexCoord::Core { id } => id,
            _ => {
                self.next_vertex += 1;
                VertexId(self.next_vertex - 1)
            }
        };
        self.t.graph.add_labeled_vertex(v, label);
        self.t.vertex_coord.insert(v, c);
        self.t.vertex_of.insert(c, v);
    }

    fn add_edge(&mut self, c: EdgeCoord, p: &Presentation) {
        let (a, b) = c.ends(p);
        let id = match c {
            EdgeCoord::Core { id } => id,
            _ => {
                self.next_edge += 1;
                EdgeId(self.next_edge - 1)
            }
        };
        let (a, b) = (self.t.vertex_of[&a], self.t.vertex_of[&b]);
        self.t.graph.add_edge(id, a, b).expect("coordinates are consistent");
        self.t.edge_coord.insert(id, c);
        self.t.edge_of.insert(c, id);
    }
}

/// Builds `G_n`: the core, layers `0..=n` of every arm, attach edges, intra
/// edges on layers `0..=n`, inter edges between consecutive layers up to `n`
/// and dominating edges into layers `0..=n`.
pub fn truncate(p: &Presentation, n: u32) -> Truncation {
    let mut cur = Cursor::new(p, n);
    for v in p.core.vertices() {
        cur.add_vertex(VertexCoord::Core { id: v }, p.core.label(v));
    }
    for (e, _, _) in p.core.edges() {
        cur.add_edge(EdgeCoord::Core { id: e }, p);
    }
    for layer in 0..=n {
        for (arm, pat) in p.arms.iter().enumerate() {
            for (i, name) in pat.vertices.iter().enumerate() {
                cur.add_vertex(VertexCoord::Arm { arm, layer, pat: i }, format!("{}:{}@{}", pat.name, name, layer));
            }
        }
        if layer == 0 {
            for idx in 0..p.attach.len() {
                cur.add_edge(EdgeCoord::Attach { idx }, p);
            }
        }
        for (arm, pat) in p.arms.iter().enumerate() {
            for idx in 0..pat.intra.len() {
                cur.add_edge(EdgeCoord::Intra { arm, idx, layer }, p);
            }
            if layer > 0 {
                for idx in 0..pat.inter.len() {
                    cur.add_edge(EdgeCoord::Inter { arm, idx, layer: layer - 1 }, p);
                }
            }
        }
        for idx in 0..p.dominating.len() {
            cur.add_edge(EdgeCoord::Dom { idx, layer }, p);
        }
    }
    cur.t
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn figure1_depth3() {
        let p = figure1();
        let t = truncate(&p, 3);
        assert_eq!(t.graph.num_vertices(), 2 + 2 * 4);
        let v_inf = p.core.vertex_by_label("v_inf").unwrap();
        assert_eq!(t.graph.degree(v_inf), 9);
        for (v, c) in t.vertex_coords() {
            assert_eq!(t.vertex(c), Some(v));
        }
    }

    #[test]
    fn depth0_single_ray() {
        let p = build(0, &[], &[("R", 1, &[], &[(0, 0)])], &[], &[]);
        let t = truncate(&p, 0);
        assert_eq!(t.graph.num_vertices(), 1);
        assert_eq!(t.graph.num_edges(), 0);
    }

    #[test]
    fn truncations_are_nested() {
        let p = figure1();
        let small = truncate(&p, 4);
        let big = truncate(&p, 5);
        for (e, u, v) in small.graph.edges() {
            assert_eq!(big.graph.endpoints(e), Some((u, v)));
            assert_eq!(big.edge_coord(e), small.edge_coord(e));
        }
        for (v, c) in small.vertex_coords() {
            assert_eq!(big.coord(v), Some(c));
        }
        // induced: every big edge between small vertices is a small edge
        for (e, u, v) in big.graph.edges() {
            if small.graph.contains_vertex(u) && small.graph.contains_vertex(v) {
                assert!(small.graph.contains_edge(e));
            }
        }
    }
}
