use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::lambda::LambdaOptions;
use super::path::ExtendedPath;
use super::reduced::{reduced_multigraph, CappedGraph, ReducedEdge, ReducedGraph, ReducedNode};
use super::routing::{route_to_ends, RouteRequest};
use super::{SeparatorCertificate, Terminal};
use crate::error::{Error, Result};
use crate::multigraph::{Path, VertexId};
use crate::presentation::{truncate, EdgeCoord, EndStructure, Presentation, VertexCoord};
use crate::tpath::pack_tpaths;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcOptions {
    pub lambda: LambdaOptions,
    /// bundles get `cap_factor` times the base cap
    pub cap_factor: u64,
}

impl Default for LcOptions {
    fn default() -> Self {
        LcOptions { lambda: LambdaOptions::default(), cap_factor: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalCut {
    pub terminal: Terminal,
    pub lambda: usize,
    pub certificate: SeparatorCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcEndsResult {
    pub family: Vec<ExtendedPath>,
    pub cuts: Vec<TerminalCut>,
    pub depth: u32,
    pub cap: u64,
}

impl LcEndsResult {
    pub fn certificates(&self) -> Vec<SeparatorCertificate> {
        self.cuts.iter().map(|c| c.certificate.clone()).collect()
    }
}

/// Where a reduced-graph edge meets a contracted region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Port {
    Edge(VertexCoord),
    Dominator(VertexId),
}

impl Port {
    fn vertex(self) -> VertexCoord {
        match self {
            Port::Edge(v) => v,
            Port::Dominator(id) => VertexCoord::Core { id },
        }
    }
}

fn port(p: &Presentation, ends: &EndStructure, r: &ReducedGraph, capped: &CappedGraph, e: crate::multigraph::EdgeId, class: usize) -> Port {
    match capped.lineage[&e] {
        ReducedEdge::Finite { edge } => {
            let (u, v) = edge.ends(p);
            Port::Edge(if r.region_of(ends, u) == Some(class) { u } else { v })
        }
        ReducedEdge::Bundle { bundle } => Port::Dominator(r.bundles[bundle].dominator),
    }
}

fn dominates(ends: &EndStructure, u: VertexCoord, class: usize) -> bool {
    matches!(u, VertexCoord::Core { id } if ends.classes[class].dominators.contains(&id))
}

/// A finite piece of a lifted path.
#[derive(Debug, Clone, Default)]
struct Piece {
    vertices: Vec<VertexCoord>,
    edges: Vec<EdgeCoord>,
}

/// Region of a class up to `height` as an edge list: inner edges and the
/// dominating edges of its dominators.
fn region_edges(p: &Presentation, ends: &EndStructure, r: &ReducedGraph, class: usize, height: u32) -> Vec<(EdgeCoord, VertexCoord, VertexCoord)> {
    let t = truncate(p, height);
    t.edge_coords()
        .filter_map(|(_, c)| {
            let (u, v) = c.ends(p);
            let keep = match c {
                EdgeCoord::Dom { .. } => r.region_of(ends, v) == Some(class) && dominates(ends, u, class),
                _ => r.region_of(ends, u) == Some(class) && r.region_of(ends, v) == Some(class),
            };
            keep.then_some((c, u, v))
        })
        .collect()
}

fn bfs(
    adj: &BTreeMap<VertexCoord, Vec<(EdgeCoord, VertexCoord)>>,
    used: &BTreeSet<EdgeCoord>,
    from: VertexCoord,
    to: VertexCoord,
) -> Option<Piece> {
    if from == to {
        return Some(Piece { vertices: vec![from], edges: Vec::new() });
    }
    let mut prev: BTreeMap<VertexCoord, (VertexCoord, EdgeCoord)> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    while let Some(u) = queue.pop_front() {
        for &(e, w) in adj.get(&u).into_iter().flatten() {
            if used.contains(&e) || !seen.insert(w) {
                continue;
            }
            prev.insert(w, (u, e));
            if w == to {
                let mut piece = Piece { vertices: vec![to], edges: Vec::new() };
                let mut at = to;
                while let Some(&(u, e)) = prev.get(&at) {
                    piece.vertices.push(u);
                    piece.edges.push(e);
                    at = u;
                }
                piece.vertices.reverse();
                piece.edges.reverse();
                return Some(piece);
            }
            queue.push_back(w);
        }
    }
    None
}

const PASS_HEIGHTS: [u32; 4] = [4, 8, 16, 32];
const PASS_ORDERS: u64 = 8;

/// Joins the ports of each pass through a non-terminal region by edge-disjoint
/// walks inside the region.
fn route_passes(
    p: &Presentation,
    ends: &EndStructure,
    r: &ReducedGraph,
    class: usize,
    pairs: &[(Port, Port)],
) -> Result<Vec<Piece>> {
    let span = (p.max_pattern() as u32) * (p.arms.len() as u32).max(1) + ends.dip + 2;
    for extra in PASS_HEIGHTS {
        let edges = region_edges(p, ends, r, class, r.depth + extra * span);
        let mut adj: BTreeMap<VertexCoord, Vec<(EdgeCoord, VertexCoord)>> = BTreeMap::new();
        for &(c, u, v) in &edges {
            adj.entry(u).or_default().push((c, v));
            adj.entry(v).or_default().push((c, u));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(class as u64);
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        'orders: for attempt in 0..PASS_ORDERS {
            if attempt > 0 {
                order.shuffle(&mut rng);
            }
            let mut used = BTreeSet::new();
            let mut out = vec![Piece::default(); pairs.len()];
            for &i in &order {
                let (a, b) = pairs[i];
                let Some(piece) = bfs(&adj, &used, a.vertex(), b.vertex()) else { continue 'orders };
                used.extend(piece.edges.iter().copied());
                out[i] = piece;
            }
            return Ok(out);
        }
    }
    Err(Error::Internal(format!("cannot join {} passes through the region of class {class}", pairs.len())))
}

/// Routes every entry into a terminal class on to one of its rays or dominators.
fn route_entries(p: &Presentation, ends: &EndStructure, r: &ReducedGraph, class: usize, sources: Vec<VertexCoord>) -> Result<Vec<ExtendedPath>> {
    let allowed = |e: &EdgeCoord| {
        let (u, v) = e.ends(p);
        match e {
            EdgeCoord::Dom { .. } => r.region_of(ends, v) == Some(class) && dominates(ends, u, class),
            _ => r.region_of(ends, u) == Some(class) && r.region_of(ends, v) == Some(class),
        }
    };
    // rays first; dominators only when the strands lack room
    let mut last = None;
    for allow_dominators in [false, true] {
        let req = RouteRequest {
            sources: sources.clone(),
            targets: BTreeSet::from([class]),
            allowed: &allowed,
            min_port: r.depth + 1,
            allow_dominators,
        };
        match route_to_ends(p, ends, &req) {
            Ok(paths) => return Ok(paths),
            Err(Error::Infeasible { demand, cut }) => last = Some((demand, cut)),
            Err(other) => return Err(other),
        }
    }
    let (demand, cut) = last.expect("tried");
    Err(Error::Internal(format!("entries into class {class} exceed its region: demand {demand}, routed {cut}")))
}

/// Pulls a cut of the reduced graph back to the presented graph.
fn pull_back(
    p: &Presentation,
    ends: &EndStructure,
    r: &ReducedGraph,
    capped: &CappedGraph,
    cut: &crate::multigraph::Cut,
    t: Terminal,
) -> Result<SeparatorCertificate> {
    let mut edges = BTreeSet::new();
    for e in &cut.edges {
        match capped.lineage[e] {
            ReducedEdge::Finite { edge } => {
                edges.insert(edge);
            }
            ReducedEdge::Bundle { .. } => return Err(Error::Internal(format!("cut around {t:?} contains a bundle edge"))),
        }
    }
    let mut side = BTreeSet::new();
    let mut side_classes = BTreeSet::new();
    for &v in &cut.side {
        match r.node(v) {
            ReducedNode::Vertex { at } => {
                side.insert(at);
            }
            ReducedNode::Class { id } => {
                side.extend(r.regions[id].iter().copied());
                side_classes.insert(id);
            }
        }
    }
    let _ = p;
    let cert = SeparatorCertificate {
        sources: vec![t],
        sinks: r.terminals.iter().copied().filter(|&s| s != t).collect(),
        edges,
        side,
        side_classes,
        depth: r.depth,
        evidence: Vec::new(),
    };
    Ok(cert.with_evidence(ends))
}

/// Edge-disjoint T-paths in the presented graph together with, for every
/// terminal, a minimum cut separating it from the others that lies on the
/// paths ending there. Terminals are core vertices and edge-end classes.
pub fn lovasz_cherkassky_ends(p: &Presentation, ends: &EndStructure, terminals: &[Terminal], opts: &LcOptions) -> Result<LcEndsResult> {
    if terminals.len() < 2 {
        return Err(Error::TooFewTerminals);
    }
    let r = reduced_multigraph(p, ends, terminals, &opts.lambda)?;
    let parity = r.parity();
    if !parity.holds {
        let side = parity.violating.unwrap_or_default().into_iter().filter_map(|n| r.node_id(n)).collect();
        return Err(Error::ParityViolation { side, cut_size: parity.cut_size.unwrap_or(0) });
    }
    let capped = r.materialize(r.base_cap() * opts.cap_factor.max(1))?;
    let packing = pack_tpaths(&capped.graph, &capped.terminals)?;
    let paths: Vec<Path> = packing.family.paths.clone();

    // ports at every contracted node a path visits
    let class_at = |v: VertexId| match r.node(v) {
        ReducedNode::Class { id } => Some(id),
        ReducedNode::Vertex { .. } => None,
    };
    let mut entries: BTreeMap<usize, Vec<(usize, bool, VertexCoord)>> = BTreeMap::new();
    let mut passes: BTreeMap<usize, Vec<(usize, usize, Port, Port)>> = BTreeMap::new();
    for (i, path) in paths.iter().enumerate() {
        let k = path.edges.len();
        for (j, &v) in path.vertices.iter().enumerate() {
            let Some(c) = class_at(v) else { continue };
            if j == 0 || j == k {
                let e = path.edges[if j == 0 { 0 } else { k - 1 }];
                if let Port::Edge(x) = port(p, ends, &r, &capped, e, c) {
                    entries.entry(c).or_default().push((i, j == 0, x));
                }
            } else {
                let a = port(p, ends, &r, &capped, path.edges[j - 1], c);
                let b = port(p, ends, &r, &capped, path.edges[j], c);
                passes.entry(c).or_default().push((i, j, a, b));
            }
        }
    }
    let mut rays: BTreeMap<(usize, bool), ExtendedPath> = BTreeMap::new();
    for (&c, list) in &entries {
        let routed = route_entries(p, ends, &r, c, list.iter().map(|x| x.2).collect())?;
        for (&(i, at_start, _), path) in list.iter().zip(routed) {
            rays.insert((i, at_start), path);
        }
    }
    let mut joins: BTreeMap<(usize, usize), Piece> = BTreeMap::new();
    for (&c, list) in &passes {
        let pairs: Vec<(Port, Port)> = list.iter().map(|x| (x.2, x.3)).collect();
        for (&(i, j, _, _), piece) in list.iter().zip(route_passes(p, ends, &r, c, &pairs)?) {
            joins.insert((i, j), piece);
        }
    }

    let mut family = Vec::with_capacity(paths.len());
    for (i, path) in paths.iter().enumerate() {
        let k = path.edges.len();
        let mut out = match class_at(path.vertices[0]) {
            Some(c) => match rays.remove(&(i, true)) {
                Some(ray) => ray.reversed(),
                None => ExtendedPath::finite(vec![port(p, ends, &r, &capped, path.edges[0], c).vertex()], Vec::new()),
            },
            None => match r.node(path.vertices[0]) {
                ReducedNode::Vertex { at } => ExtendedPath::finite(vec![at], Vec::new()),
                ReducedNode::Class { .. } => unreachable!(),
            },
        };
        for j in 1..=k {
            if let ReducedEdge::Finite { edge } = capped.lineage[&path.edges[j - 1]] {
                let (u, v) = edge.ends(p);
                let at = out.last();
                let next = if at == u { v } else if at == v { u } else {
                    return Err(Error::Internal(format!("lifted path {i} is at {at:?}, not at an end of {edge:?}")));
                };
                out.vertices.push(next);
                out.edges.push(edge);
            }
            let v = path.vertices[j];
            match class_at(v) {
                None => {
                    let ReducedNode::Vertex { at } = r.node(v) else { unreachable!() };
                    if out.last() != at {
                        return Err(Error::Internal(format!("lifted path {i} is at {:?}, expected {at:?}", out.last())));
                    }
                }
                Some(_) if j < k => {
                    let piece = joins.remove(&(i, j)).expect("pass routed");
                    if piece.vertices[0] != out.last() {
                        return Err(Error::Internal(format!("pass of path {i} starts away from the path")));
                    }
                    out.vertices.extend(piece.vertices[1..].iter().copied());
                    out.edges.extend(piece.edges);
                }
                Some(_) => {
                    if let Some(ray) = rays.remove(&(i, false)) {
                        if ray.first() != out.last() {
                            return Err(Error::Internal(format!("entry of path {i} starts away from the path")));
                        }
                        out.vertices.extend(ray.vertices[1..].iter().copied());
                        out.edges.extend(ray.edges);
                        out.tail = ray.tail;
                    }
                }
            }
        }
        family.push(out.without_loops());
    }

    let mut cuts = Vec::new();
    for &t in terminals {
        let node = r.terminal_node(t);
        let cut = packing.per_terminal_cuts.get(&node).ok_or_else(|| Error::Internal(format!("no cut for terminal {t:?}")))?;
        cuts.push(TerminalCut { terminal: t, lambda: cut.len(), certificate: pull_back(p, ends, &r, &capped, cut, t)? });
    }
    Ok(LcEndsResult { family, cuts, depth: r.depth, cap: capped.cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ends::{verify_family, PathEnd, PathKind};
    use crate::presentation::fixtures::{build, figure1};

    fn run(p: &Presentation, t: &[Terminal]) -> LcEndsResult {
        let ends = EndStructure::new(p).unwrap();
        let res = lovasz_cherkassky_ends(p, &ends, t, &LcOptions::default()).unwrap();
        let n_max = 4 * res.depth.max(1);
        let report = verify_family(p, &ends, &res.family, &res.certificates(), n_max).unwrap();
        assert!(report.ok, "{:?}", report.failures);
        let total: usize = res.cuts.iter().map(|c| c.lambda).sum();
        assert_eq!(res.family.len() * 2, total);
        res
    }

    #[test]
    fn double_ray_between_two_ends() {
        let p = build(1, &[], &[("L", 1, &[], &[(0, 0)]), ("R", 1, &[], &[(0, 0)])], &[(0, 0, 0), (0, 1, 0)], &[]);
        let res = run(&p, &[Terminal::Class(0), Terminal::Class(1)]);
        assert_eq!(res.family.len(), 1);
        assert_eq!(res.family[0].kind(), PathKind::DoubleRay);
        assert!(res.cuts.iter().all(|c| c.lambda == 1 && matches!(c.certificate.edges.iter().next(), Some(EdgeCoord::Attach { .. }))));
    }

    #[test]
    fn figure1_vertex_to_end() {
        let p = figure1();
        let ends = EndStructure::new(&p).unwrap();
        let vinf = p.dominating[0].core;
        let v0 = p.core.vertices().find(|&v| v != vinf).unwrap();
        let res = run(&p, &[Terminal::Core(v0), Terminal::Class(0)]);
        let cut = res.cuts.iter().find(|c| c.terminal == Terminal::Core(v0)).unwrap();
        assert_eq!(cut.lambda, p.core.degree(v0) + p.attach.iter().filter(|a| a.core == v0).count());
        // the dominator of the end is as good as the end itself
        let ends_at_end = |e: PathEnd| e == PathEnd::Class(0) || e == PathEnd::Vertex(VertexCoord::Core { id: vinf });
        assert_eq!(res.family.len(), 3);
        assert_eq!(res.family.iter().filter(|x| x.kind() == PathKind::Ray).count(), 2);
        assert!(res.family.iter().all(|x| ends_at_end(x.start(&ends)) || ends_at_end(x.end(&ends))));
    }

    #[test]
    fn finite_core_matches_packing() {
        // K4 on the core, no arms
        let p = build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], &[], &[], &[]);
        let t: Vec<Terminal> = (0..4).map(|v| Terminal::Core(VertexId(v))).collect();
        let res = run(&p, &t);
        assert_eq!(res.family.len(), 6);
    }

    #[test]
    fn cap_does_not_matter() {
        let p = figure1();
        let ends = EndStructure::new(&p).unwrap();
        let v0 = p.core.vertices().find(|&v| v != p.dominating[0].core).unwrap();
        let t = [Terminal::Core(v0), Terminal::Class(0)];
        let a = lovasz_cherkassky_ends(&p, &ends, &t, &LcOptions::default()).unwrap();
        let b = lovasz_cherkassky_ends(&p, &ends, &t, &LcOptions { cap_factor: 2, ..LcOptions::default() }).unwrap();
        assert_eq!(a.family.len(), b.family.len());
        assert_eq!(a.cuts.iter().map(|c| c.lambda).collect::<Vec<_>>(), b.cuts.iter().map(|c| c.lambda).collect::<Vec<_>>());
        assert_eq!(b.cap, 2 * a.cap);
    }

    #[test]
    fn odd_cut_is_reported() {
        let p = build(2, &[(0, 1), (0, 1)], &[("A", 1, &[], &[(0, 0), (0, 0), (0, 0)])], &[(0, 0, 0), (0, 0, 0), (1, 0, 0)], &[]);
        let ends = EndStructure::new(&p).unwrap();
        let err = lovasz_cherkassky_ends(&p, &ends, &[Terminal::Core(VertexId(0)), Terminal::Class(0)], &LcOptions::default()).unwrap_err();
        assert!(matches!(err, Error::ParityViolation { cut_size: 3, .. }));
    }
}
