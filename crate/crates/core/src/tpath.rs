//! Edge-disjoint T-path packing in inner-Eulerian multigraphs.
//!
//! Packing works by repeatedly splitting off pairs of edges at inner vertices,
//! accepting a split only when a flow computation confirms that every
//! `lambda(t, T \ {t})` survives. Once no inner vertex has an edge left, every
//! surviving edge joins two terminals and unfolds through its lineage into a
//! T-path of the input graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{Network, INF};
use crate::menger::{min_edge_cut, verify_lies_on, PathFamily};
use crate::multigraph::{Cut, EdgeId, EdgeLineage, Multigraph, Path, VertexId, VertexSet};

pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingResult {
    pub family: PathFamily,
    pub per_terminal_cuts: BTreeMap<VertexId, Cut>,
}

impl PackingResult {
    /// Paths of the family ending at `t`.
    pub fn sub_family(&self, t: VertexId) -> PathFamily {
        PathFamily {
            paths: self.family.paths.iter().filter(|p| p.first() == t || p.last() == t).cloned().collect(),
        }
    }
}

/// Outcome of the parity check: `violating` is `Some(X)` when `|delta(X)|` is odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCheck {
    pub holds: bool,
    pub violating: Option<VertexSet>,
}

pub fn is_inner_eulerian(g: &Multigraph, terminals: &VertexSet) -> bool {
    g.vertices().filter(|v| !terminals.contains(v)).all(|v| g.degree(v).is_multiple_of(2))
}

fn check_subset(g: &Multigraph, terminals: &VertexSet) -> Result<()> {
    match terminals.iter().find(|v| !g.contains_vertex(**v)) {
        Some(&v) => Err(Error::UnknownVertex(v)),
        None => Ok(()),
    }
}

/// Checks that `|delta(X)|` is even for every `X` with `T ⊆ X ⊆ V(G)`.
///
/// All `2^|V \ T|` sets are visited in Gray-code order, tracking the parity of
/// `|delta(X)|` through the degree sum. Refuses when `|V \ T|` exceeds `bound`.
pub fn check_parity_condition(g: &Multigraph, terminals: &VertexSet, bound: usize) -> Result<ParityCheck> {
    check_subset(g, terminals)?;
    if terminals.len() < 2 {
        return Err(Error::TooFewTerminals);
    }
    let free: Vec<VertexId> = g.vertices().filter(|v| !terminals.contains(v)).collect();
    if free.len() > bound {
        return Err(Error::EnumerationBound { needed: free.len(), bound });
    }
    let base = g.delta(terminals)?.len() % 2;
    let odd: Vec<bool> = free.iter().map(|&v| g.degree(v) % 2 == 1).collect();
    let mut parity = base;
    let mut member = vec![false; free.len()];
    let total: u64 = 1 << free.len();
    for step in 0..total {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            member[bit] = !member[bit];
            if odd[bit] {
                parity ^= 1;
            }
        }
        if parity == 1 {
            let mut side = terminals.clone();
            side.extend(free.iter().zip(&member).filter(|(_, &m)| m).map(|(&v, _)| v));
            debug_assert_eq!(g.delta(&side)?.len() % 2, 1);
            return Ok(ParityCheck { holds: false, violating: Some(side) });
        }
    }
    Ok(ParityCheck { holds: true, violating: None })
}

/// Replaces `e = uv` and `f = vw` by a new edge `uw` (dropped when `u = w`).
/// The lineage maps the new edge to `[e, f]` and every other edge to itself.
pub fn split_off(g: &Multigraph, v: VertexId, e: EdgeId, f: EdgeId) -> Result<(Multigraph, EdgeLineage)> {
    if e == f {
        return Err(Error::SameEdge);
    }
    let u = g.other_end(e, v).ok_or(Error::NotIncident { edge: e, vertex: v })?;
    let w = g.other_end(f, v).ok_or(Error::NotIncident { edge: f, vertex: v })?;
    let mut h = g.clone();
    h.remove_edge(e);
    h.remove_edge(f);
    let mut lineage: EdgeLineage = h.edge_ids().map(|x| (x, vec![x])).collect();
    if u != w {
        let id = EdgeId(g.next_edge_id().0.max(h.next_edge_id().0));
        h.add_edge(id, u, w)?;
        lineage.insert(id, vec![e, f]);
    }
    Ok((h, lineage))
}

/// Terminal connectivities `lambda(t, T \ {t})` for every terminal.
pub(crate) fn terminal_lambdas(g: &Multigraph, terminals: &VertexSet) -> Result<BTreeMap<VertexId, usize>> {
    terminals
        .iter()
        .map(|&t| {
            let rest: VertexSet = terminals.iter().copied().filter(|&s| s != t).collect();
            Ok((t, min_edge_cut(g, &[t].into_iter().collect(), &rest)?.len()))
        })
        .collect()
}

/// Flow-based check that `lambda(t, T \ {t}) >= need` in `g`.
fn reaches(g: &Multigraph, t: VertexId, terminals: &VertexSet, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    let verts: Vec<VertexId> = g.vertices().collect();
    let index: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut net = Network::new(verts.len() + 1);
    let sink = verts.len();
    for (_, u, v) in g.edges() {
        net.add_edge(index[&u], index[&v], 1, None);
    }
    for s in terminals.iter().filter(|&&s| s != t) {
        net.add_arc(index[s], sink, INF, None);
    }
    net.max_flow_limited(index[&t], sink, need as u64) >= need as u64
}

/// Packs `1/2 * sum lambda(t, T \ {t})` edge-disjoint T-paths.
///
/// Requires the parity condition, which for finite graphs is the same as the
/// graph being inner-Eulerian for `T`; a violating set is reported otherwise.
/// For each terminal the returned cut is the source-side-minimal minimum cut
/// around it, which lies on the paths ending there.
pub fn pack_tpaths(g: &Multigraph, terminals: &VertexSet) -> Result<PackingResult> {
    check_subset(g, terminals)?;
    if terminals.len() < 2 {
        return Err(Error::TooFewTerminals);
    }
    if let Some(v) = g.vertices().find(|v| !terminals.contains(v) && g.degree(*v) % 2 == 1) {
        // delta(T) and delta(T + v) differ in parity by deg(v); one of them is odd
        let mut side = terminals.clone();
        if g.delta(&side)?.len() % 2 == 0 {
            side.insert(v);
        }
        let cut_size = g.delta(&side)?.len();
        return Err(Error::ParityViolation { side: side.into_iter().collect(), cut_size });
    }
    let target = terminal_lambdas(g, terminals)?;

    // every working edge unfolds to a walk of the input graph from its smaller endpoint
    let mut walks: BTreeMap<EdgeId, Path> = g
        .edges()
        .map(|(e, u, v)| (e, Path { vertices: vec![u, v], edges: vec![e] }))
        .collect();
    let mut work = g.clone();
    let inner: Vec<VertexId> = g.vertices().filter(|v| !terminals.contains(v)).collect();
    for &v in &inner {
        while work.degree(v) > 0 {
            let mut inc: Vec<EdgeId> = work.incident(v).to_vec();
            inc.sort();
            let mut rejected: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
            let mut accepted = None;
            'search: for (i, &e) in inc.iter().enumerate() {
                for &f in &inc[i + 1..] {
                    let u = work.other_end(e, v).expect("incident");
                    let w = work.other_end(f, v).expect("incident");
                    let key = (u.min(w), u.max(w));
                    if rejected.contains(&key) {
                        continue;
                    }
                    let (h, lineage) = split_off(&work, v, e, f)?;
                    if terminals.iter().all(|&t| reaches(&h, t, terminals, target[&t])) {
                        accepted = Some((e, f, h, lineage));
                        break 'search;
                    }
                    rejected.insert(key);
                }
            }
            let (e, f, h, lineage) = accepted.ok_or_else(|| {
                Error::Internal(format!("no admissible split at {v} although the parity condition holds"))
            })?;
            if let Some((&new, _)) = lineage.iter().find(|(_, src)| src.len() == 2) {
                let joined = join_walks(&walks[&e], &walks[&f], v);
                let (a, _) = h.endpoints(new).expect("new edge");
                let joined = if joined.first() == a { joined } else { joined.reversed() };
                walks.insert(new, joined);
            }
            walks.remove(&e);
            walks.remove(&f);
            work = h;
        }
    }

    let mut paths = Vec::new();
    for (e, a, b) in work.edges() {
        debug_assert!(terminals.contains(&a) && terminals.contains(&b));
        let _ = (a, b);
        paths.push(walks[&e].shortcut());
    }
    let family = PathFamily { paths };
    let mut per_terminal_cuts = BTreeMap::new();
    let result_so_far = PackingResult { family, per_terminal_cuts: BTreeMap::new() };
    for &t in terminals {
        let rest: VertexSet = terminals.iter().copied().filter(|&s| s != t).collect();
        let cut = min_edge_cut(g, &[t].into_iter().collect(), &rest)?;
        if !verify_lies_on(&result_so_far.sub_family(t), &cut) {
            return Err(Error::Internal(format!("cut around {t} does not lie on its paths")));
        }
        per_terminal_cuts.insert(t, cut);
    }
    Ok(PackingResult { family: result_so_far.family, per_terminal_cuts })
}

/// Concatenates the walk of `e` into `v` with the walk of `f` out of `v`.
fn join_walks(pe: &Path, pf: &Path, v: VertexId) -> Path {
    let into = if pe.last() == v { pe.clone() } else { pe.reversed() };
    let out = if pf.first() == v { pf.clone() } else { pf.reversed() };
    debug_assert_eq!(into.last(), v);
    let mut joined = into;
    joined.vertices.extend(&out.vertices[1..]);
    joined.edges.extend(&out.edges);
    joined
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[u32]) -> VertexSet {
        vs.iter().map(|&v| VertexId(v)).collect()
    }

    fn graph(n: u32, edges: &[(u32, u32)]) -> Multigraph {
        let mut g = Multigraph::with_vertices(n);
        for &(u, v) in edges {
            g.push_edge(VertexId(u), VertexId(v));
        }
        g
    }

    fn k4() -> Multigraph {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn inner_eulerian_examples() {
        let star4 = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert!(is_inner_eulerian(&star4, &set(&[1, 2, 3, 4])));
        assert!(is_inner_eulerian(&graph(3, &[(0, 1), (1, 2)]), &set(&[0, 2])));
        let star3 = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(!is_inner_eulerian(&star3, &set(&[1, 2, 3])));
    }

    #[test]
    fn parity_examples() {
        let p = graph(3, &[(0, 1), (1, 2)]);
        assert!(check_parity_condition(&p, &set(&[0, 2]), 20).unwrap().holds);
        // a triangle with two terminals has |delta(T)| = 2
        let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(check_parity_condition(&tri, &set(&[0, 1]), 20).unwrap().holds);
        let r = check_parity_condition(&p, &set(&[0, 1]), 20).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violating, Some(set(&[0, 1])));
        assert!(check_parity_condition(&tri, &set(&[0, 1, 2]), 20).unwrap().holds);
        assert!(check_parity_condition(&k4(), &set(&[0, 1, 2, 3]), 20).unwrap().holds);
        let big = graph(25, &[(0, 1)]);
        assert_eq!(
            check_parity_condition(&big, &set(&[0, 1]), 20).unwrap_err(),
            Error::EnumerationBound { needed: 23, bound: 20 }
        );
    }

    #[test]
    fn split_examples() {
        let p = graph(3, &[(0, 1), (1, 2)]);
        let (h, lin) = split_off(&p, VertexId(1), EdgeId(0), EdgeId(1)).unwrap();
        assert_eq!(h.num_edges(), 1);
        assert_eq!(h.edges().next().map(|(_, u, v)| (u, v)), Some((VertexId(0), VertexId(2))));
        assert_eq!(lin.values().next(), Some(&vec![EdgeId(0), EdgeId(1)]));
        assert_eq!(h.degree(VertexId(1)), 0);

        let star4 = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let (h, _) = split_off(&star4, VertexId(0), EdgeId(0), EdgeId(1)).unwrap();
        let (h, _) = split_off(&h, VertexId(0), EdgeId(2), EdgeId(3)).unwrap();
        assert_eq!(h.num_edges(), 2);
        assert_eq!(h.degree(VertexId(0)), 0);

        assert_eq!(
            split_off(&p, VertexId(0), EdgeId(0), EdgeId(1)).unwrap_err(),
            Error::NotIncident { edge: EdgeId(1), vertex: VertexId(0) }
        );
    }

    #[test]
    fn pack_examples() {
        let r = pack_tpaths(&k4(), &set(&[0, 1, 2, 3])).unwrap();
        assert_eq!(r.family.len(), 6);
        let star4 = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let r = pack_tpaths(&star4, &set(&[1, 2, 3, 4])).unwrap();
        assert_eq!(r.family.len(), 2);
        assert!(r.family.is_edge_disjoint());
        let r = pack_tpaths(&graph(3, &[(0, 1), (1, 2)]), &set(&[0, 2])).unwrap();
        assert_eq!(r.family.len(), 1);
        assert_eq!(r.family.paths[0].vertices, vec![VertexId(0), VertexId(1), VertexId(2)]);
    }

    #[test]
    fn pack_rejects_odd_inner_vertex() {
        let star3 = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(matches!(pack_tpaths(&star3, &set(&[1, 2, 3])), Err(Error::ParityViolation { cut_size: 3, .. })));
    }

    #[test]
    fn cuts_lie_on_sub_families() {
        // two triangles sharing vertex 2, terminals at the far corners
        let g = graph(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        let t = set(&[0, 1, 3, 4]);
        let r = pack_tpaths(&g, &t).unwrap();
        let lambdas = terminal_lambdas(&g, &t).unwrap();
        assert_eq!(r.family.len() * 2, lambdas.values().sum::<usize>());
        for (&v, cut) in &r.per_terminal_cuts {
            assert_eq!(r.sub_family(v).len(), lambdas[&v]);
            assert!(verify_lies_on(&r.sub_family(v), cut));
        }
    }
}
