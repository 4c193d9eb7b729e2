use std::collections::{BTreeMap, BTreeSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::lambda::{default_window, LambdaOptions};
use super::{check_terminals, Terminal};
use crate::error::{Error, Result};
use crate::flow::{Network, INF};
use crate::multigraph::{EdgeId, Multigraph, VertexId, VertexSet};
use crate::presentation::{truncate, EdgeCoord, EndStructure, Presentation, Truncation, VertexCoord};

/// A vertex of the reduced graph: an uncontracted vertex or a contracted class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReducedNode {
    Vertex { at: VertexCoord },
    Class { id: usize },
}

/// Infinitely many parallel edges between a dominator and its class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bundle {
    pub class: usize,
    pub dominator: VertexId,
}

/// Lineage of an edge of a materialized reduced graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReducedEdge {
    Finite { edge: EdgeCoord },
    Bundle { bundle: usize },
}

/// The presented graph with every class region `C_ω` contracted to a vertex.
///
/// `graph` holds the finite edges only; bundles stay symbolic until
/// [`ReducedGraph::materialize`] caps them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    pub graph: Multigraph,
    pub nodes: Vec<ReducedNode>,
    pub lineage: BTreeMap<EdgeId, EdgeCoord>,
    pub bundles: Vec<Bundle>,
    pub terminals: Vec<Terminal>,
    /// region vertices up to `depth`, per class; every arm vertex above `depth`
    /// lies in the region of its class
    pub regions: Vec<BTreeSet<VertexCoord>>,
    pub depth: u32,
    /// stabilized `|delta(C_ω)|` per class, finite edges only
    pub boundary: Vec<usize>,
}

/// A reduced graph with bundles replaced by finitely many parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CappedGraph {
    pub graph: Multigraph,
    pub lineage: BTreeMap<EdgeId, ReducedEdge>,
    pub terminals: VertexSet,
    pub cap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedParity {
    pub holds: bool,
    /// a node set containing every terminal whose finite cut is odd
    pub violating: Option<Vec<ReducedNode>>,
    pub cut_size: Option<usize>,
}

impl ReducedGraph {
    pub fn node_id(&self, node: ReducedNode) -> Option<VertexId> {
        self.nodes.iter().position(|&n| n == node).map(|i| VertexId(i as u32))
    }

    pub fn node(&self, v: VertexId) -> ReducedNode {
        self.nodes[v.0 as usize]
    }

    pub fn terminal_node(&self, t: Terminal) -> VertexId {
        let node = match t {
            Terminal::Core(id) => ReducedNode::Vertex { at: VertexCoord::Core { id } },
            Terminal::Class(id) => ReducedNode::Class { id },
        };
        self.node_id(node).expect("terminals are nodes")
    }

    pub fn terminal_set(&self) -> VertexSet {
        self.terminals.iter().map(|&t| self.terminal_node(t)).collect()
    }

    /// Class whose region holds `v`, if any.
    pub fn region_of(&self, ends: &EndStructure, v: VertexCoord) -> Option<usize> {
        match v {
            VertexCoord::Core { .. } => None,
            VertexCoord::Arm { arm, layer, pat } if layer > self.depth => Some(ends.class_of_vertex(arm, pat, layer)),
            _ => self.regions.iter().position(|r| r.contains(&v)),
        }
    }

    /// Node of the reduced graph standing for `v`.
    pub fn node_of(&self, ends: &EndStructure, v: VertexCoord) -> VertexId {
        let node = match self.region_of(ends, v) {
            Some(id) => ReducedNode::Class { id },
            None => ReducedNode::Vertex { at: v },
        };
        self.node_id(node).expect("every vertex maps to a node")
    }

    /// An even number above every finite cut.
    pub fn base_cap(&self) -> u64 {
        2 * (1 + self.graph.num_edges() as u64)
    }

    fn bundle_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.nodes.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for b in &self.bundles {
            let (d, c) = self.bundle_ends(b);
            adj[d.0 as usize].push(c.0 as usize);
            adj[c.0 as usize].push(d.0 as usize);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![VertexId(s as u32)];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(VertexId(w as u32));
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    fn bundle_ends(&self, b: &Bundle) -> (VertexId, VertexId) {
        let d = self.node_id(ReducedNode::Vertex { at: VertexCoord::Core { id: b.dominator } }).expect("dominator node");
        let c = self.node_id(ReducedNode::Class { id: b.class }).expect("class node");
        (d, c)
    }

    /// Exact form of the parity condition: a set `Y` of non-terminal nodes has
    /// finite `delta(Y)` only if it is a union of bundle components, so the
    /// condition holds iff every terminal-free bundle component has even
    /// finite degree sum.
    pub fn parity(&self) -> ReducedParity {
        let terminals = self.terminal_set();
        for comp in self.bundle_components() {
            if comp.iter().any(|v| terminals.contains(v)) {
                continue;
            }
            let inside: BTreeSet<VertexId> = comp.iter().copied().collect();
            let cut = self.graph.edges().filter(|&(_, u, v)| inside.contains(&u) != inside.contains(&v)).count();
            if cut % 2 == 1 {
                let violating = (0..self.nodes.len())
                    .map(|i| VertexId(i as u32))
                    .filter(|v| !inside.contains(v))
                    .map(|v| self.node(v))
                    .collect();
                return ReducedParity { holds: false, violating: Some(violating), cut_size: Some(cut) };
            }
        }
        ReducedParity { holds: true, violating: None, cut_size: None }
    }

    /// Replaces each bundle by `cap` or `cap + 1` parallel edges, chosen so
    /// that every non-terminal node has even degree. `cap` must be even.
    pub fn materialize(&self, cap: u64) -> Result<CappedGraph> {
        if cap % 2 == 1 || cap < self.base_cap() {
            return Err(Error::Ends(format!("bundle cap {cap} must be even and at least {}", self.base_cap())));
        }
        let terminals = self.terminal_set();
        let n = self.nodes.len();
        let mut odd: Vec<bool> = (0..n).map(|i| self.graph.degree(VertexId(i as u32)) % 2 == 1).collect();
        let mut extra = vec![false; self.bundles.len()];
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, b) in self.bundles.iter().enumerate() {
            let (d, c) = self.bundle_ends(b);
            adj[d.0 as usize].push((c.0 as usize, i));
            adj[c.0 as usize].push((d.0 as usize, i));
        }
        for comp in self.bundle_components() {
            let root = comp.iter().copied().find(|v| terminals.contains(v)).unwrap_or(comp[0]).0 as usize;
            // spanning tree by breadth-first search, fixed leaves first
            let mut order = vec![root];
            let mut parent: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
            let mut seen = BTreeSet::from([root]);
            let mut i = 0;
            while i < order.len() {
                let u = order[i];
                i += 1;
                for &(w, b) in &adj[u] {
                    if seen.insert(w) {
                        parent.insert(w, (u, b));
                        order.push(w);
                    }
                }
            }
            for &v in order.iter().rev() {
                if v == root || !odd[v] || terminals.contains(&VertexId(v as u32)) {
                    continue;
                }
                let (u, b) = parent[&v];
                extra[b] = !extra[b];
                odd[v] = false;
                odd[u] = !odd[u];
            }
            if odd[root] && !terminals.contains(&VertexId(root as u32)) {
                let parity = self.parity();
                return Err(Error::ParityViolation {
                    side: parity.violating.map(|x| x.iter().filter_map(|&node| self.node_id(node)).collect()).unwrap_or_default(),
                    cut_size: parity.cut_size.unwrap_or(0),
                });
            }
        }
        let mut graph = self.graph.clone();
        let mut lineage: BTreeMap<EdgeId, ReducedEdge> =
            self.lineage.iter().map(|(&e, &edge)| (e, ReducedEdge::Finite { edge })).collect();
        for (i, b) in self.bundles.iter().enumerate() {
            let (d, c) = self.bundle_ends(b);
            for _ in 0..cap + extra[i] as u64 {
                let e = graph.push_edge(d, c);
                lineage.insert(e, ReducedEdge::Bundle { bundle: i });
            }
        }
        Ok(CappedGraph { graph, lineage, terminals, cap })
    }
}

/// Region network at depth `n`: `G_n` without dominating edges plus one hub
/// per class tied to the top layer of its strands.
struct RegionNet {
    trunc: Truncation,
    net: Network,
    node_of: BTreeMap<VertexId, usize>,
    hubs: Vec<usize>,
    core: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl RegionNet {
    fn build(p: &Presentation, ends: &EndStructure, n: u32) -> RegionNet {
        let trunc = truncate(p, n);
        let ids: Vec<VertexId> = trunc.graph.vertices().collect();
        let node_of: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut net = Network::new(ids.len());
        let mut adj = vec![Vec::new(); ids.len() + ends.classes.len()];
        let mut link = |net: &mut Network, a: usize, b: usize, cap: u64| {
            net.add_edge(a, b, cap, None);
            adj[a].push(b);
            adj[b].push(a);
        };
        for (e, u, v) in trunc.graph.edges() {
            if !matches!(trunc.edge_coord(e), Some(EdgeCoord::Dom { .. })) {
                link(&mut net, node_of[&u], node_of[&v], 1);
            }
        }
        let hubs: Vec<usize> = ends.classes.iter().map(|_| net.add_node()).collect();
        for s in &ends.strands {
            let hub = hubs[ends.class_of[&s.id]];
            for pat in ends.strand_layer(s.id, n) {
                let v = trunc.arm_vertex(s.id.arm, n, pat).expect("layer vertex");
                link(&mut net, hub, node_of[&v], INF);
            }
        }
        let core = p.core.vertices().map(|v| node_of[&trunc.vertex(VertexCoord::Core { id: v }).expect("core")]).collect();
        RegionNet { trunc, net, node_of, hubs, core, adj }
    }

    /// Min cut between class `c` and everything else, with its largest hub side.
    fn isolate(&self, c: usize) -> (u64, Vec<bool>) {
        let mut net = self.net.clone();
        let z = net.add_node();
        for &x in &self.core {
            net.add_arc(x, z, INF, None);
        }
        for (d, &h) in self.hubs.iter().enumerate() {
            if d != c {
                net.add_arc(h, z, INF, None);
            }
        }
        let value = net.max_flow(self.hubs[c], z);
        let co = net.residual_coreachable(z);
        // the part of the hub side that hangs off the hub; stray pieces carry no boundary
        let mut side = vec![false; co.len()];
        let mut queue = VecDeque::from([self.hubs[c]]);
        side[self.hubs[c]] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !co[w] && !side[w] {
                    side[w] = true;
                    queue.push_back(w);
                }
            }
        }
        (value, side)
    }
}

/// Stabilized regions: one finite-boundary region per class, pairwise disjoint.
fn regions(
    p: &Presentation,
    ends: &EndStructure,
    opts: &LambdaOptions,
) -> Result<(u32, Vec<BTreeSet<VertexCoord>>, Vec<usize>)> {
    let window = opts.window.unwrap_or_else(|| default_window(p)).max(1) as usize;
    let mut history: Vec<Vec<u64>> = Vec::new();
    for n in 0..=opts.n_max {
        let rn = RegionNet::build(p, ends, n);
        let cuts: Vec<(u64, Vec<bool>)> = (0..ends.classes.len()).map(|c| rn.isolate(c)).collect();
        let values: Vec<u64> = cuts.iter().map(|c| c.0).collect();
        if let Some(prev) = history.last() {
            if values.iter().zip(prev).any(|(a, b)| a > b) {
                return Err(Error::Internal(format!("region boundary grew at depth {n}: {prev:?} to {values:?}")));
            }
        }
        history.push(values.clone());
        let len = history.len();
        if len < window || history[len - window..].iter().any(|h| *h != values) {
            continue;
        }
        let mut sides: Vec<Vec<bool>> = cuts.into_iter().map(|c| c.1).collect();
        // uncrossing keeps both sides minimum (posimodularity of cuts)
        for i in 0..sides.len() {
            for j in i + 1..sides.len() {
                let (a, b) = (sides[i].clone(), sides[j].clone());
                for k in 0..a.len() {
                    if a[k] && b[k] {
                        sides[i][k] = false;
                        sides[j][k] = false;
                    }
                }
            }
        }
        let mut regions = vec![BTreeSet::new(); ends.classes.len()];
        for (c, side) in sides.iter().enumerate() {
            for (v, coord) in rn.trunc.vertex_coords() {
                if side[rn.node_of[&v]] {
                    regions[c].insert(coord);
                }
            }
        }
        for (c, region) in regions.iter().enumerate() {
            let boundary = rn
                .trunc
                .edge_coords()
                .filter(|(_, e)| !matches!(e, EdgeCoord::Dom { .. }))
                .filter(|(_, e)| {
                    let (u, v) = e.ends(p);
                    region.contains(&u) != region.contains(&v)
                })
                .count() as u64;
            if boundary != values[c] {
                return Err(Error::Internal(format!("region of class {c} has boundary {boundary}, cut value {}", values[c])));
            }
        }
        return Ok((n, regions, values.into_iter().map(|v| v as usize).collect()));
    }
    Err(Error::NotStabilized { depth: opts.n_max, lo: 0, hi: history.last().map_or(0, |h| h.iter().sum::<u64>() as usize) })
}

/// Contracts the region `C_ω` of every class to one vertex. Dominators keep
/// an infinite bundle to each class they dominate; every other edge of the
/// truncation at the stabilized depth stays, with its coordinates as lineage.
pub fn reduced_multigraph(
    p: &Presentation,
    ends: &EndStructure,
    terminals: &[Terminal],
    opts: &LambdaOptions,
) -> Result<ReducedGraph> {
    check_terminals(p, ends, terminals)?;
    // dominators tie a vertex to its class by infinitely many edge-disjoint paths
    let mut group: BTreeMap<Terminal, usize> = BTreeMap::new();
    for c in &ends.classes {
        group.insert(Terminal::Class(c.id), c.id);
    }
    let mut merged = UnionFind::<usize>::new(ends.classes.len());
    for c in &ends.classes {
        for &d in &c.dominators {
            match group.get(&Terminal::Core(d)).copied() {
                Some(other) => {
                    merged.union(other, c.id);
                }
                None => {
                    group.insert(Terminal::Core(d), c.id);
                }
            }
        }
    }
    let mut seen: BTreeMap<usize, Terminal> = BTreeMap::new();
    for &t in terminals {
        let Some(&g) = group.get(&t) else { continue };
        let g = merged.find(g);
        if let Some(&s) = seen.get(&g) {
            let name = |t: Terminal| match t {
                Terminal::Core(v) => p.core.label(v),
                Terminal::Class(c) => format!("class:{c}"),
            };
            return Err(Error::Ends(format!(
                "terminals {} and {} are joined by infinitely many edge-disjoint paths through dominated ends",
                name(s),
                name(t)
            )));
        }
        seen.insert(g, t);
    }
    let (depth, regions, boundary) = regions(p, ends, opts)?;
    let trunc = truncate(p, depth);
    let mut nodes: Vec<ReducedNode> = Vec::new();
    let mut index: BTreeMap<ReducedNode, VertexId> = BTreeMap::new();
    let mut graph = Multigraph::new();
    let mut add = |node: ReducedNode, label: String, graph: &mut Multigraph| {
        let id = VertexId(nodes.len() as u32);
        nodes.push(node);
        index.insert(node, id);
        graph.add_labeled_vertex(id, label);
    };
    for v in p.core.vertices() {
        add(ReducedNode::Vertex { at: VertexCoord::Core { id: v } }, p.core.label(v), &mut graph);
    }
    for (_, c) in trunc.vertex_coords() {
        if let VertexCoord::Arm { arm, layer, pat } = c {
            if !regions.iter().any(|r| r.contains(&c)) {
                let label = format!("{}:{}@{}", p.arms[arm].name, p.arms[arm].vertices[pat], layer);
                add(ReducedNode::Vertex { at: c }, label, &mut graph);
            }
        }
    }
    for c in &ends.classes {
        add(ReducedNode::Class { id: c.id }, format!("class:{}", c.id), &mut graph);
    }
    let node_of = |v: VertexCoord| match regions.iter().position(|r| r.contains(&v)) {
        Some(id) => index[&ReducedNode::Class { id }],
        None => index[&ReducedNode::Vertex { at: v }],
    };
    let mut lineage = BTreeMap::new();
    let mut coords: Vec<EdgeCoord> = trunc.edge_coords().map(|(_, c)| c).collect();
    coords.sort();
    for c in coords {
        let (u, v) = c.ends(p);
        let (a, b) = (node_of(u), node_of(v));
        if a == b {
            continue;
        }
        if let (EdgeCoord::Dom { .. }, ReducedNode::Class { id }) = (c, nodes[b.0 as usize]) {
            if ends.classes[id].dominators.iter().any(|&d| VertexCoord::Core { id: d } == u) {
                continue;
            }
        }
        let e = graph.push_edge(a, b);
        lineage.insert(e, c);
    }
    let bundles = ends
        .classes
        .iter()
        .flat_map(|c| c.dominators.iter().map(move |&d| Bundle { class: c.id, dominator: d }))
        .collect();
    Ok(ReducedGraph { graph, nodes, lineage, bundles, terminals: terminals.to_vec(), regions, depth, boundary })
}

/// Parity condition for `T` on the reduced graph.
pub fn check_parity_condition_ends(
    p: &Presentation,
    ends: &EndStructure,
    terminals: &[Terminal],
    opts: &LambdaOptions,
) -> Result<ReducedParity> {
    Ok(reduced_multigraph(p, ends, terminals, opts)?.parity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::fixtures::{build, figure1};

    fn opts() -> LambdaOptions {
        LambdaOptions::default()
    }

    fn core(v: u32) -> VertexCoord {
        VertexCoord::Core { id: VertexId(v) }
    }

    /// Brute force over all node sets containing the terminals, with bundles infinite.
    fn brute_parity(r: &ReducedGraph) -> bool {
        let t = r.terminal_set();
        let free: Vec<VertexId> = (0..r.nodes.len() as u32).map(VertexId).filter(|v| !t.contains(v)).collect();
        assert!(free.len() <= 16);
        (0u32..1 << free.len()).all(|mask| {
            let out: BTreeSet<VertexId> = free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            let infinite = r.bundles.iter().any(|b| {
                let (d, c) = r.bundle_ends(b);
                out.contains(&d) != out.contains(&c)
            });
            infinite || r.graph.edges().filter(|&(_, u, v)| out.contains(&u) != out.contains(&v)).count() % 2 == 0
        })
    }

    #[test]
    fn figure1_single_class() {
        let p = figure1();
        let ends = EndStructure::new(&p).unwrap();
        let r = reduced_multigraph(&p, &ends, &[Terminal::Class(0)], &opts()).unwrap();
        assert_eq!(r.nodes.len(), 3);
        let v0 = r.node_id(ReducedNode::Vertex { at: core(1) }).unwrap_or_else(|| r.node_id(ReducedNode::Vertex { at: core(0) }).unwrap());
        let w = r.node_id(ReducedNode::Class { id: 0 }).unwrap();
        let attach = r.graph.edges().filter(|&(_, a, b)| (a, b) == (v0, w) || (a, b) == (w, v0)).count();
        assert_eq!(r.bundles.len(), 1);
        assert_eq!(attach + 1, r.graph.num_edges());
        assert!(r.lineage.values().all(|c| matches!(c, EdgeCoord::Attach { .. } | EdgeCoord::Core { .. })));
    }

    #[test]
    fn double_ray_is_a_path() {
        let p = build(1, &[], &[("L", 1, &[], &[(0, 0)]), ("R", 1, &[], &[(0, 0)])], &[(0, 0, 0), (0, 1, 0)], &[]);
        let ends = EndStructure::new(&p).unwrap();
        let r = reduced_multigraph(&p, &ends, &[Terminal::Class(0), Terminal::Class(1)], &opts()).unwrap();
        assert_eq!(r.nodes.len(), 3);
        assert_eq!(r.graph.num_edges(), 2);
        let mid = r.node_id(ReducedNode::Vertex { at: core(0) }).unwrap();
        assert_eq!(r.graph.degree(mid), 2);
        assert!(r.parity().holds);
        assert!(brute_parity(&r));
    }

    #[test]
    fn core_terminals_without_arms_contract_nothing() {
        let p = build(3, &[(0, 1), (1, 2), (0, 2)], &[], &[], &[]);
        let ends = EndStructure::new(&p).unwrap();
        let r = reduced_multigraph(&p, &ends, &[Terminal::Core(VertexId(0)), Terminal::Core(VertexId(1))], &opts()).unwrap();
        assert_eq!(r.graph.num_edges(), 3);
        assert!(r.bundles.is_empty());
        assert!(r.parity().holds);
    }

    #[test]
    fn odd_attachment_violates() {
        // core vertex 1 has degree 3 and is neither a terminal nor a dominator
        let p = build(2, &[(0, 1), (0, 1)], &[("A", 1, &[], &[(0, 0), (0, 0), (0, 0)])], &[(0, 0, 0), (0, 0, 0), (1, 0, 0)], &[]);
        let ends = EndStructure::new(&p).unwrap();
        let r = reduced_multigraph(&p, &ends, &[Terminal::Core(VertexId(0)), Terminal::Class(0)], &opts()).unwrap();
        let par = r.parity();
        assert!(!par.holds);
        assert_eq!(par.cut_size, Some(3));
        assert!(!brute_parity(&r));
    }

    #[test]
    fn dominating_terminal_is_rejected() {
        let p = figure1();
        let ends = EndStructure::new(&p).unwrap();
        let vinf = p.dominating[0].core;
        let err = reduced_multigraph(&p, &ends, &[Terminal::Core(vinf), Terminal::Class(0)], &opts()).unwrap_err();
        assert!(matches!(err, Error::Ends(_)));
    }

    #[test]
    fn terminals_dominating_one_end_are_rejected() {
        let p = figure1();
        let ends = EndStructure::new(&p).unwrap();
        let err = reduced_multigraph(&p, &ends, &[Terminal::Core(VertexId(0)), Terminal::Class(0)], &opts()).unwrap_err();
        assert!(matches!(err, Error::Ends(_)));
        // two dominators of the same end
        let p = build(3, &[(0, 1), (1, 2)], &[("A", 1, &[], &[(0, 0)])], &[(1, 0, 0)], &[(0, 0, 0), (2, 0, 0)]);
        let ends = EndStructure::new(&p).unwrap();
        let err = reduced_multigraph(&p, &ends, &[Terminal::Core(VertexId(0)), Terminal::Core(VertexId(2))], &opts()).unwrap_err();
        assert!(matches!(err, Error::Ends(_)));
        assert!(reduced_multigraph(&p, &ends, &[Terminal::Core(VertexId(0)), Terminal::Core(VertexId(1))], &opts()).is_ok());
    }

    #[test]
    fn materialized_graph_is_inner_eulerian() {
        let p = figure1();
        let ends = EndStructure::new(&p).unwrap();
        let v0 = p.core.vertices().find(|&v| v != p.dominating[0].core).unwrap();
        let r = reduced_multigraph(&p, &ends, &[Terminal::Core(v0), Terminal::Class(0)], &opts()).unwrap();
        assert!(r.parity().holds);
        assert!(brute_parity(&r));
        let capped = r.materialize(r.base_cap()).unwrap();
        assert!(crate::tpath::is_inner_eulerian(&capped.graph, &capped.terminals));
    }

    #[test]
    fn exact_parity_matches_enumeration() {
        use crate::generate::{random_presentation, PresentationBounds};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut tried = 0;
        for _ in 0..150 {
            let p = random_presentation(&mut rng, PresentationBounds::default());
            let ends = EndStructure::new(&p).unwrap();
            let mut all: Vec<Terminal> = p.core.vertices().map(Terminal::Core).chain((0..ends.classes.len()).map(Terminal::Class)).collect();
            let k = rng.gen_range(1..=all.len());
            rand::seq::SliceRandom::shuffle(&mut all[..], &mut rng);
            let Ok(r) = reduced_multigraph(&p, &ends, &all[..k], &opts()) else { continue };
            if r.nodes.len() - k > 16 {
                continue;
            }
            tried += 1;
            assert_eq!(r.parity().holds, brute_parity(&r), "{}", p.to_json());
            if r.parity().holds {
                let capped = r.materialize(r.base_cap()).unwrap();
                assert!(crate::tpath::is_inner_eulerian(&capped.graph, &capped.terminals));
            }
        }
        assert!(tried > 50);
    }
}
