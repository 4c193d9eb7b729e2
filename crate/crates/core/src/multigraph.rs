//! Finite multigraphs with stable edge identities.
//!
//! Parallel edges are distinct [`EdgeId`]s; loops are rejected. Derived graphs
//! (contractions, blow-ups, split-offs) keep the ids of surviving edges and
//! describe everything else through an [`EdgeLineage`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;
pub type EdgeSet = BTreeSet<EdgeId>;

/// Maps each edge of a derived graph to the source edges it stands for.
pub type EdgeLineage = BTreeMap<EdgeId, Vec<EdgeId>>;

/// An edge cut `delta(side)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side: VertexSet,
    pub edges: EdgeSet,
}

impl Cut {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// A walk given as alternating vertices and edges; `vertices.len() == edges.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path { vertices: vec![v], edges: Vec::new() }
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("path has a vertex")
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.reverse();
        edges.reverse();
        Path { vertices, edges }
    }

    pub fn is_simple(&self) -> bool {
        let distinct: VertexSet = self.vertices.iter().copied().collect();
        distinct.len() == self.vertices.len()
    }

    /// Removes closed sub-walks so that no vertex repeats. Endpoints and the
    /// set of used edges only shrink.
    pub fn shortcut(&self) -> Path {
        let mut vertices: Vec<VertexId> = Vec::with_capacity(self.vertices.len());
        let mut edges: Vec<EdgeId> = Vec::with_capacity(self.edges.len());
        let mut position: BTreeMap<VertexId, usize> = BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            if let Some(&p) = position.get(&v) {
                for dropped in vertices.drain(p + 1..) {
                    position.remove(&dropped);
                }
                edges.truncate(p);
            } else {
                if i > 0 {
                    edges.push(self.edges[i - 1]);
                }
                position.insert(v, vertices.len());
                vertices.push(v);
            }
        }
        Path { vertices, edges }
    }

    /// Checks that the walk is consistent with `g`.
    pub fn check(&self, g: &Multigraph) -> Result<()> {
        if self.vertices.len() != self.edges.len() + 1 {
            return Err(Error::InvalidPath("vertex and edge counts disagree".into()));
        }
        for (i, &e) in self.edges.iter().enumerate() {
            let (a, b) = g.endpoints(e).ok_or(Error::UnknownEdge(e))?;
            let (x, y) = (self.vertices[i], self.vertices[i + 1]);
            if !((a == x && b == y) || (a == y && b == x)) {
                return Err(Error::InvalidPath(format!("{e} does not join {x} and {y}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    vertices: VertexSet,
    labels: BTreeMap<VertexId, String>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    incidence: BTreeMap<VertexId, Vec<EdgeId>>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: u32) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.add_vertex(VertexId(i));
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        if self.vertices.insert(v) {
            self.incidence.insert(v, Vec::new());
        }
    }

    pub fn add_labeled_vertex(&mut self, v: VertexId, label: impl Into<String>) {
        self.add_vertex(v);
        self.labels.insert(v, label.into());
    }

    pub fn fresh_vertex(&mut self) -> VertexId {
        let v = VertexId(self.vertices.iter().next_back().map_or(0, |v| v.0 + 1));
        self.add_vertex(v);
        v
    }

    pub fn set_label(&mut self, v: VertexId, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn label(&self, v: VertexId) -> String {
        self.labels.get(&v).cloned().unwrap_or_else(|| v.0.to_string())
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.vertices.iter().copied().find(|&v| self.label(v) == label)
    }

    pub fn add_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::LoopEdge(id));
        }
        for w in [u, v] {
            if !self.vertices.contains(&w) {
                return Err(Error::UnknownVertex(w));
            }
        }
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        self.edges.insert(id, (u.min(v), u.max(v)));
        self.incidence.get_mut(&u).expect("vertex").push(id);
        self.incidence.get_mut(&v).expect("vertex").push(id);
        Ok(())
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.keys().next_back().map_or(0, |e| e.0 + 1))
    }

    /// Adds an edge under a fresh id. Panics on loops or unknown endpoints.
    pub fn push_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let id = self.next_edge_id();
        self.add_edge(id, u, v).expect("valid edge");
        id
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        let (u, v) = self.edges.remove(&e)?;
        for w in [u, v] {
            if let Some(list) = self.incidence.get_mut(&w) {
                list.retain(|&f| f != e);
            }
        }
        Some((u, v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(u, v))| (e, u, v))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.incidence.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).iter().filter_map(move |&e| self.other_end(e, v))
    }

    /// The cut `delta(side)`: edges with exactly one endpoint in `side`.
    pub fn delta(&self, side: &VertexSet) -> Result<Cut> {
        if let Some(&v) = side.iter().find(|v| !self.vertices.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        let edges = self
            .edges
            .iter()
            .filter(|(_, (u, v))| side.contains(u) != side.contains(v))
            .map(|(&e, _)| e)
            .collect();
        Ok(Cut { side: side.clone(), edges })
    }

    pub fn without_edges(&self, removed: &EdgeSet) -> Multigraph {
        let mut g = self.clone();
        for &e in removed {
            g.remove_edge(e);
        }
        g
    }

    /// Vertices reachable from `sources` without using edges in `blocked`.
    pub fn reachable(&self, sources: &VertexSet, blocked: &EdgeSet) -> VertexSet {
        let mut seen: VertexSet = sources.iter().copied().filter(|v| self.contains_vertex(*v)).collect();
        let mut queue: VecDeque<VertexId> = seen.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            for &e in self.incident(v) {
                if blocked.contains(&e) {
                    continue;
                }
                let w = self.other_end(e, v).expect("incident edge");
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices.clone();
        let mut out = Vec::new();
        while let Some(&v) = left.iter().next() {
            let comp = self.reachable(&[v].into_iter().collect(), &EdgeSet::new());
            for w in &comp {
                left.remove(w);
            }
            out.push(comp);
        }
        out
    }

    /// Contracts each class of `partition` to its smallest vertex. Edges inside a
    /// class vanish; every other edge keeps its id, so the lineage is the identity
    /// on surviving edges.
    pub fn contract(&self, partition: &[VertexSet]) -> Result<(Multigraph, EdgeLineage)> {
        let mut rep: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for class in partition {
            let &first = class.iter().next().ok_or(Error::EmptyPartitionClass)?;
            for &v in class {
                if !self.contains_vertex(v) {
                    return Err(Error::UnknownVertex(v));
                }
                if rep.insert(v, first).is_some() {
                    return Err(Error::OverlappingPartition(v));
                }
            }
        }
        let image = |v: VertexId| rep.get(&v).copied().unwrap_or(v);
        let mut g = Multigraph::new();
        for v in self.vertices() {
            if image(v) == v {
                g.add_vertex(v);
                if let Some(l) = self.labels.get(&v) {
                    g.labels.insert(v, l.clone());
                }
            }
        }
        let mut lineage = EdgeLineage::new();
        for (e, u, v) in self.edges() {
            let (a, b) = (image(u), image(v));
            if a != b {
                g.add_edge(e, a, b)?;
                lineage.insert(e, vec![e]);
            }
        }
        Ok((g, lineage))
    }

    /// The simple line graph. Vertex `VertexId(e.0)` stands for edge `e`.
    pub fn line_graph(&self) -> LineGraph {
        let mut graph = Multigraph::new();
        let mut vertex_of = BTreeMap::new();
        let mut edge_of = BTreeMap::new();
        for e in self.edge_ids() {
            let v = VertexId(e.0);
            graph.add_labeled_vertex(v, format!("e{}", e.0));
            vertex_of.insert(e, v);
            edge_of.insert(v, e);
        }
        let mut pairs: BTreeSet<(EdgeId, EdgeId)> = BTreeSet::new();
        for v in self.vertices() {
            let inc = self.incident(v);
            for (i, &e) in inc.iter().enumerate() {
                for &f in &inc[i + 1..] {
                    pairs.insert((e.min(f), e.max(f)));
                }
            }
        }
        for (k, (e, f)) in pairs.into_iter().enumerate() {
            graph
                .add_edge(EdgeId(k as u32), vertex_of[&e], vertex_of[&f])
                .expect("distinct source edges");
        }
        LineGraph { graph, vertex_of, edge_of }
    }

    /// Replaces every vertex `v` by a clique on `d(v)` vertices so that each
    /// clique vertex carries exactly one original ("old") edge. Old edges keep
    /// their ids; clique edges get fresh ids above the largest source id.
    pub fn clique_blowup(&self) -> BlowUp {
        let mut graph = Multigraph::new();
        let mut owner = BTreeMap::new();
        let mut clique: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        let mut port: BTreeMap<(VertexId, EdgeId), VertexId> = BTreeMap::new();
        let mut next = 0u32;
        for v in self.vertices() {
            let members: Vec<VertexId> = self
                .incident(v)
                .iter()
                .map(|&e| {
                    let w = VertexId(next);
                    next += 1;
                    graph.add_labeled_vertex(w, format!("{}#{}", self.label(v), e.0));
                    owner.insert(w, v);
                    port.insert((v, e), w);
                    w
                })
                .collect();
            clique.insert(v, members);
        }
        let mut old_edge = BTreeMap::new();
        for (e, u, v) in self.edges() {
            graph.add_edge(e, port[&(u, e)], port[&(v, e)]).expect("old edge");
            old_edge.insert(e, e);
        }
        let mut fresh = self.next_edge_id().0;
        for members in clique.values() {
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    graph.add_edge(EdgeId(fresh), a, b).expect("clique edge");
                    fresh += 1;
                }
            }
        }
        let port_vertex = port.into_iter().map(|((_, e), w)| (w, e)).collect();
        BlowUp { graph, owner, clique, old_edge, port_edge: port_vertex }
    }
}

/// Line graph with the vertex/edge correspondence.
#[derive(Debug, Clone)]
pub struct LineGraph {
    pub graph: Multigraph,
    pub vertex_of: BTreeMap<EdgeId, VertexId>,
    pub edge_of: BTreeMap<VertexId, EdgeId>,
}

/// Clique blow-up of a multigraph.
#[derive(Debug, Clone)]
pub struct BlowUp {
    pub graph: Multigraph,
    /// Clique vertex -> source vertex.
    pub owner: BTreeMap<VertexId, VertexId>,
    pub clique: BTreeMap<VertexId, Vec<VertexId>>,
    /// Old edge (in the blow-up) -> source edge. Ids coincide.
    pub old_edge: BTreeMap<EdgeId, EdgeId>,
    /// Clique vertex -> the unique old edge at it.
    pub port_edge: BTreeMap<VertexId, EdgeId>,
}

impl BlowUp {
    pub fn is_old(&self, e: EdgeId) -> bool {
        self.old_edge.contains_key(&e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ToLine,
    FromLine,
}

/// Moves a path between a graph and its line graph.
///
/// `ToLine` reads the edge sequence of a path of `g` as a path of the line
/// graph. `FromLine` recovers the path of `g` whose consecutive edges are the
/// vertices of a vertex-minimal line-graph path. A single line vertex carries
/// no orientation, so it comes back as its edge read from its first endpoint.
pub fn translate_path(g: &Multigraph, line: &LineGraph, direction: Direction, path: &Path) -> Result<Path> {
    match direction {
        Direction::ToLine => to_line(g, line, path),
        Direction::FromLine => from_line(g, line, path),
    }
}

fn to_line(g: &Multigraph, line: &LineGraph, path: &Path) -> Result<Path> {
    path.check(g)?;
    if path.edges.is_empty() {
        return Err(Error::InvalidPath("a path with at least one edge is required".into()));
    }
    if !path.is_simple() {
        return Err(Error::InvalidPath("path repeats a vertex".into()));
    }
    let vertices: Vec<VertexId> = path.edges.iter().map(|e| line.vertex_of[e]).collect();
    let edges = vertices
        .windows(2)
        .map(|w| line_edge_between(line, w[0], w[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Path { vertices, edges })
}

fn line_edge_between(line: &LineGraph, a: VertexId, b: VertexId) -> Result<EdgeId> {
    line.graph
        .incident(a)
        .iter()
        .copied()
        .find(|&e| line.graph.other_end(e, a) == Some(b))
        .ok_or_else(|| Error::InvalidPath(format!("{a} and {b} are not adjacent in the line graph")))
}

fn shared_endpoint(g: &Multigraph, e: EdgeId, f: EdgeId) -> Option<VertexId> {
    let (a, b) = g.endpoints(e)?;
    let (c, d) = g.endpoints(f)?;
    if a == c || a == d {
        Some(a)
    } else if b == c || b == d {
        Some(b)
    } else {
        None
    }
}

fn from_line(g: &Multigraph, line: &LineGraph, path: &Path) -> Result<Path> {
    path.check(&line.graph)?;
    let edges: Vec<EdgeId> = path
        .vertices
        .iter()
        .map(|v| line.edge_of.get(v).copied().ok_or(Error::UnknownVertex(*v)))
        .collect::<Result<_>>()?;
    let adjacent = |i: usize, j: usize| shared_endpoint(g, edges[i], edges[j]).is_some();
    for i in 0..edges.len() {
        for j in i + 2..edges.len() {
            if adjacent(i, j) {
                return Err(Error::NotVertexMinimal(i, j));
            }
        }
    }
    let (a, b) = g.endpoints(edges[0]).ok_or(Error::UnknownEdge(edges[0]))?;
    let mut vertices = Vec::with_capacity(edges.len() + 1);
    if edges.len() == 1 {
        vertices.extend([a, b]);
    } else {
        let joint = shared_endpoint(g, edges[0], edges[1]).expect("consecutive line vertices share an endpoint");
        vertices.push(if joint == a { b } else { a });
        vertices.push(joint);
        for w in edges.windows(2).skip(1) {
            let v = shared_endpoint(g, w[0], w[1]).expect("adjacent");
            vertices.push(v);
        }
        let last = *edges.last().unwrap();
        let prev = *vertices.last().unwrap();
        vertices.push(g.other_end(last, prev).expect("incident"));
    }
    let out = Path { vertices, edges };
    out.check(g)?;
    if !out.is_simple() {
        return Err(Error::InvalidPath("recovered walk repeats a vertex".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn complete(n: u32) -> Multigraph {
        let mut g = Multigraph::with_vertices(n);
        for i in 0..n {
            for j in i + 1..n {
                g.push_edge(VertexId(i), VertexId(j));
            }
        }
        g
    }

    fn path_graph(n: u32) -> Multigraph {
        let mut g = Multigraph::with_vertices(n);
        for i in 1..n {
            g.push_edge(VertexId(i - 1), VertexId(i));
        }
        g
    }

    fn star(leaves: u32) -> Multigraph {
        let mut g = Multigraph::with_vertices(leaves + 1);
        for i in 1..=leaves {
            g.push_edge(VertexId(0), VertexId(i));
        }
        g
    }

    fn set(vs: &[u32]) -> VertexSet {
        vs.iter().map(|&v| VertexId(v)).collect()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(complete(4).delta(&set(&[0])).unwrap().len(), 3);
        assert!(complete(4).delta(&set(&[])).unwrap().is_empty());
        assert_eq!(star(4).delta(&set(&[0])).unwrap().len(), 4);
        assert!(matches!(complete(3).delta(&set(&[7])), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn delta_counts_parallel_edges() {
        let mut g = Multigraph::with_vertices(2);
        g.push_edge(VertexId(0), VertexId(1));
        g.push_edge(VertexId(0), VertexId(1));
        assert_eq!(g.delta(&set(&[0])).unwrap().len(), 2);
    }

    #[test]
    fn loops_rejected() {
        let mut g = Multigraph::with_vertices(1);
        assert_eq!(g.add_edge(EdgeId(0), VertexId(0), VertexId(0)), Err(Error::LoopEdge(EdgeId(0))));
    }

    #[test]
    fn contract_examples() {
        let (g, lin) = path_graph(3).contract(&[set(&[1, 2])]).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 1));
        assert_eq!(lin.len(), 1);

        let (g, _) = complete(3).contract(&[set(&[0, 1])]).unwrap();
        assert_eq!(g.num_edges(), 2);
        let (a, b) = (VertexId(0), VertexId(2));
        assert!(g.edges().all(|(_, u, v)| (u, v) == (a, b)));

        let k4 = complete(4);
        let singletons: Vec<VertexSet> = (0..4).map(|i| set(&[i])).collect();
        let (g, lin) = k4.contract(&singletons).unwrap();
        assert_eq!(g, k4);
        assert!(lin.iter().all(|(e, src)| src == &vec![*e]));

        assert_eq!(k4.contract(&[set(&[0, 1]), set(&[1, 2])]), Err(Error::OverlappingPartition(VertexId(1))));
        assert_eq!(k4.contract(&[set(&[])]), Err(Error::EmptyPartitionClass));
    }

    #[test]
    fn line_graph_examples() {
        let lg = path_graph(4).line_graph();
        assert_eq!((lg.graph.num_vertices(), lg.graph.num_edges()), (3, 2));
        let lg = star(3).line_graph();
        assert_eq!((lg.graph.num_vertices(), lg.graph.num_edges()), (3, 3));
        let lg = path_graph(2).line_graph();
        assert_eq!((lg.graph.num_vertices(), lg.graph.num_edges()), (1, 0));
    }

    #[test]
    fn line_graph_of_parallel_edges_is_simple() {
        let mut g = Multigraph::with_vertices(2);
        g.push_edge(VertexId(0), VertexId(1));
        g.push_edge(VertexId(0), VertexId(1));
        let lg = g.line_graph();
        assert_eq!(lg.graph.num_edges(), 1);
    }

    #[test]
    fn blowup_examples() {
        let b = path_graph(2).clique_blowup();
        assert_eq!((b.graph.num_vertices(), b.graph.num_edges()), (2, 1));
        let b = path_graph(3).clique_blowup();
        assert_eq!((b.graph.num_vertices(), b.graph.num_edges()), (4, 3));
        assert_eq!(b.old_edge.len(), 2);
        let b = complete(4).clique_blowup();
        assert_eq!(b.graph.num_vertices(), 12);
        assert_eq!(b.old_edge.len(), 6);
        assert_eq!(b.graph.num_edges() - 6, 12);
        for w in b.graph.vertices() {
            let d = complete(4).degree(b.owner[&w]);
            assert_eq!(b.graph.degree(w), d);
        }
    }

    #[test]
    fn translate_examples() {
        let g = path_graph(4);
        let lg = g.line_graph();
        let p = Path {
            vertices: vec![VertexId(0), VertexId(1), VertexId(2), VertexId(3)],
            edges: vec![EdgeId(0), EdgeId(1), EdgeId(2)],
        };
        let q = translate_path(&g, &lg, Direction::ToLine, &p).unwrap();
        assert_eq!(q.vertices, vec![VertexId(0), VertexId(1), VertexId(2)]);
        assert_eq!(translate_path(&g, &lg, Direction::FromLine, &q).unwrap(), p);

        // triangle: (ab),(bc) -> a-b-c
        let t = complete(3);
        let lt = t.line_graph();
        let ab = t.edges().find(|&(_, u, v)| (u, v) == (VertexId(0), VertexId(1))).unwrap().0;
        let bc = t.edges().find(|&(_, u, v)| (u, v) == (VertexId(1), VertexId(2))).unwrap().0;
        let e = line_edge_between(&lt, lt.vertex_of[&ab], lt.vertex_of[&bc]).unwrap();
        let lp = Path { vertices: vec![lt.vertex_of[&ab], lt.vertex_of[&bc]], edges: vec![e] };
        let back = translate_path(&t, &lt, Direction::FromLine, &lp).unwrap();
        assert_eq!(back.vertices, vec![VertexId(0), VertexId(1), VertexId(2)]);
    }

    #[test]
    fn from_line_rejects_non_minimal() {
        // star K_{1,3}: all three edges pairwise adjacent, e0 e1 e2 is not minimal
        let g = star(3);
        let lg = g.line_graph();
        let vs: Vec<VertexId> = (0..3).map(|i| lg.vertex_of[&EdgeId(i)]).collect();
        let edges = vec![line_edge_between(&lg, vs[0], vs[1]).unwrap(), line_edge_between(&lg, vs[1], vs[2]).unwrap()];
        let lp = Path { vertices: vs, edges };
        assert_eq!(translate_path(&g, &lg, Direction::FromLine, &lp), Err(Error::NotVertexMinimal(0, 2)));
    }

    #[test]
    fn shortcut_removes_loops() {
        let p = Path {
            vertices: vec![VertexId(0), VertexId(1), VertexId(2), VertexId(1), VertexId(3)],
            edges: vec![EdgeId(0), EdgeId(1), EdgeId(2), EdgeId(3)],
        };
        let s = p.shortcut();
        assert_eq!(s.vertices, vec![VertexId(0), VertexId(1), VertexId(3)]);
        assert_eq!(s.edges, vec![EdgeId(0), EdgeId(3)]);
    }
}
