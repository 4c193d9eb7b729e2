//! Edge-disjoint Menger on finite multigraphs.
//!
//! The direct route runs unit-capacity max-flow on the doubled directed model
//! of the graph. [`blowup_cross_check`] recomputes the same optimum through
//! the clique blow-up and vertex-disjoint paths, and is kept independent of the
//! direct route so the two can be compared.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{Network, INF};
use crate::multigraph::{Cut, EdgeId, EdgeSet, Multigraph, Path, VertexId, VertexSet};

/// Pairwise edge-disjoint paths.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFamily {
    pub paths: Vec<Path>,
}

impl PathFamily {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn is_edge_disjoint(&self) -> bool {
        let mut used = EdgeSet::new();
        self.paths.iter().flat_map(|p| p.edges.iter()).all(|&e| used.insert(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MengerResult {
    pub family: PathFamily,
    pub cut: Cut,
    /// `lies_on[i]` is the unique cut edge on path `i`.
    pub lies_on: Vec<EdgeId>,
}

fn check_terminals(g: &Multigraph, a: &VertexSet, b: &VertexSet) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyTerminalSet);
    }
    for &v in a.iter().chain(b) {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if let Some(&v) = a.intersection(b).next() {
        return Err(Error::TerminalsOverlap(v));
    }
    Ok(())
}

/// Cuts each walk down to an `A`-`B` path meeting `A ∪ B` only at its ends.
fn trim_to_ab(walk: &Path, a: &VertexSet, b: &VertexSet) -> Path {
    let start = walk
        .vertices
        .iter()
        .rposition(|v| a.contains(v))
        .expect("walk starts in A");
    let end = start
        + walk.vertices[start..]
            .iter()
            .position(|v| b.contains(v))
            .expect("walk ends in B");
    Path { vertices: walk.vertices[start..=end].to_vec(), edges: walk.edges[start..end].to_vec() }
}

/// Assigns to each path its unique cut edge, if the bijection holds.
fn lies_on_map(family: &PathFamily, cut: &Cut) -> Option<Vec<EdgeId>> {
    if family.len() != cut.len() {
        return None;
    }
    let mut hits: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut out = Vec::with_capacity(family.len());
    for p in &family.paths {
        let on: Vec<EdgeId> = p.edges.iter().copied().filter(|e| cut.edges.contains(e)).collect();
        if on.len() != 1 {
            return None;
        }
        *hits.entry(on[0]).or_default() += 1;
        out.push(on[0]);
    }
    (hits.len() == cut.len() && hits.values().all(|&c| c == 1)).then_some(out)
}

/// True iff the cut consists of exactly one edge from each path of the family.
pub fn verify_lies_on(family: &PathFamily, cut: &Cut) -> bool {
    lies_on_map(family, cut).is_some()
}

/// Maximum family of edge-disjoint `A`-`B` paths with a cut `delta(X)` lying on it.
///
/// The cut is the source-side-minimal minimum cut: `X` is the set of vertices
/// reachable from `A` in the residual network.
pub fn max_edge_disjoint_paths(g: &Multigraph, a: &VertexSet, b: &VertexSet) -> Result<MengerResult> {
    check_terminals(g, a, b)?;
    let verts: Vec<VertexId> = g.vertices().collect();
    let index: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(EdgeId, VertexId, VertexId)> = g.edges().collect();
    let mut net = Network::new(verts.len() + 2);
    let (s, t) = (verts.len(), verts.len() + 1);
    for (k, &(_, u, v)) in edges.iter().enumerate() {
        net.add_edge(index[&u], index[&v], 1, Some(k));
    }
    for v in a {
        net.add_arc(s, index[v], INF, None);
    }
    for v in b {
        net.add_arc(index[v], t, INF, None);
    }
    net.max_flow(s, t);
    let reach = net.residual_reachable(s);
    let side: VertexSet = verts.iter().enumerate().filter(|(i, _)| reach[*i]).map(|(_, &v)| v).collect();
    let cut = g.delta(&side)?;

    let mut paths = Vec::new();
    for steps in net.decompose(s, t) {
        let inner: Vec<_> = steps.iter().filter(|st| st.tag.is_some()).collect();
        let first = steps[0].to;
        let mut walk = Path::trivial(verts[first]);
        for st in inner {
            let (e, _, _) = edges[st.tag.unwrap()];
            walk.edges.push(e);
            walk.vertices.push(verts[st.to]);
        }
        paths.push(trim_to_ab(&walk, a, b));
    }
    let family = PathFamily { paths };
    let lies_on = lies_on_map(&family, &cut)
        .ok_or_else(|| Error::Internal("minimum cut does not lie on the flow family".into()))?;
    Ok(MengerResult { family, cut, lies_on })
}

pub fn min_edge_cut(g: &Multigraph, a: &VertexSet, b: &VertexSet) -> Result<Cut> {
    Ok(max_edge_disjoint_paths(g, a, b)?.cut)
}

/// `lambda(t, T \ {t})`: the minimum size of a cut separating `t` from the other terminals.
pub fn lambda_terminal(g: &Multigraph, t: VertexId, terminals: &VertexSet) -> Result<usize> {
    if !terminals.contains(&t) {
        return Err(Error::NotATerminal(t));
    }
    if terminals.len() < 2 {
        return Err(Error::TooFewTerminals);
    }
    let rest: VertexSet = terminals.iter().copied().filter(|&v| v != t).collect();
    Ok(min_edge_cut(g, &[t].into_iter().collect(), &rest)?.len())
}

/// Recomputes the Menger optimum through the clique blow-up.
///
/// Vertex-disjoint paths between the blown-up terminal cliques are found by
/// vertex splitting, normalized so each path meets every clique in at most
/// two consecutive vertices, and contracted back to edge-disjoint paths of
/// `g`. The separator vertices map to their old edges, and the side `X` is
/// recovered as the union of components of `g - F` meeting `A`.
pub fn blowup_cross_check(g: &Multigraph, a: &VertexSet, b: &VertexSet) -> Result<MengerResult> {
    check_terminals(g, a, b)?;
    let blow = g.clique_blowup();
    let h = &blow.graph;
    let verts: Vec<VertexId> = h.vertices().collect();
    let index: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    // node 2i = in, 2i+1 = out
    let mut net = Network::new(2 * n + 2);
    let (s, t) = (2 * n, 2 * n + 1);
    let mut split_arc = Vec::with_capacity(n);
    for i in 0..n {
        split_arc.push(net.add_arc(2 * i, 2 * i + 1, 1, Some(i)));
    }
    for (_, x, y) in h.edges() {
        let (i, j) = (index[&x], index[&y]);
        net.add_arc(2 * i + 1, 2 * j, 1, None);
        net.add_arc(2 * j + 1, 2 * i, 1, None);
    }
    let a_tilde: BTreeSet<usize> = verts.iter().enumerate().filter(|(_, w)| a.contains(&blow.owner[w])).map(|(i, _)| i).collect();
    let b_tilde: BTreeSet<usize> = verts.iter().enumerate().filter(|(_, w)| b.contains(&blow.owner[w])).map(|(i, _)| i).collect();
    for &i in &a_tilde {
        net.add_arc(s, 2 * i, INF, None);
    }
    for &i in &b_tilde {
        net.add_arc(2 * i + 1, t, INF, None);
    }
    net.max_flow(s, t);

    let mut paths = Vec::new();
    for steps in net.decompose(s, t) {
        let seq: Vec<usize> = steps.iter().filter_map(|st| st.tag).collect();
        let start = seq.iter().rposition(|i| a_tilde.contains(i)).expect("starts in A");
        let end = start + seq[start..].iter().position(|i| b_tilde.contains(i)).expect("ends in B");
        let seq = &seq[start..=end];
        // normalize: from each clique keep only the first and last visit
        let mut norm: Vec<usize> = Vec::new();
        let mut k = 0;
        while k < seq.len() {
            let owner = blow.owner[&verts[seq[k]]];
            let last = seq.iter().rposition(|&i| blow.owner[&verts[i]] == owner).unwrap();
            norm.push(seq[k]);
            if last != k {
                norm.push(seq[last]);
            }
            k = last + 1;
        }
        let mut walk = Path::trivial(blow.owner[&verts[norm[0]]]);
        for w in norm.windows(2) {
            let (x, y) = (verts[w[0]], verts[w[1]]);
            if blow.owner[&x] != blow.owner[&y] {
                let e = blow.port_edge[&x];
                debug_assert_eq!(blow.port_edge[&y], e);
                walk.edges.push(blow.old_edge[&e]);
                walk.vertices.push(blow.owner[&y]);
            }
        }
        walk.check(g)?;
        paths.push(walk);
    }
    let family = PathFamily { paths };

    let reach = net.residual_reachable(s);
    let separator: EdgeSet = (0..n)
        .filter(|&i| reach[2 * i] && !reach[2 * i + 1])
        .map(|i| blow.old_edge[&blow.port_edge[&verts[i]]])
        .collect();
    let side = g.reachable(a, &separator);
    let cut = g.delta(&side)?;
    if cut.edges != separator {
        return Err(Error::Internal("blow-up separator is not a cut".into()));
    }
    let lies_on = lies_on_map(&family, &cut)
        .ok_or_else(|| Error::Internal("blow-up separator does not lie on its family".into()))?;
    Ok(MengerResult { family, cut, lies_on })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[u32]) -> VertexSet {
        vs.iter().map(|&v| VertexId(v)).collect()
    }

    fn complete(n: u32) -> Multigraph {
        let mut g = Multigraph::with_vertices(n);
        for i in 0..n {
            for j in i + 1..n {
                g.push_edge(VertexId(i), VertexId(j));
            }
        }
        g
    }

    /// Smallest edge set whose removal disconnects A from B, by enumeration.
    fn brute_min_cut(g: &Multigraph, a: &VertexSet, b: &VertexSet) -> usize {
        let edges: Vec<EdgeId> = g.edge_ids().collect();
        let m = edges.len();
        let mut best = m;
        for mask in 0u32..(1 << m) {
            let size = mask.count_ones() as usize;
            if size >= best {
                continue;
            }
            let removed: EdgeSet = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            if g.reachable(a, &removed).is_disjoint(b) {
                best = size;
            }
        }
        best
    }

    #[test]
    fn k4_has_three_paths() {
        let g = complete(4);
        assert_eq!(brute_min_cut(&g, &set(&[0]), &set(&[1])), 3);
        let r = max_edge_disjoint_paths(&g, &set(&[0]), &set(&[1])).unwrap();
        assert_eq!(r.family.len(), 3);
        assert_eq!(r.cut.len(), 3);
        assert!(r.family.is_edge_disjoint());
        assert!(verify_lies_on(&r.family, &r.cut));
        assert_eq!(blowup_cross_check(&g, &set(&[0]), &set(&[1])).unwrap().family.len(), 3);
    }

    #[test]
    fn bridge_path() {
        let mut g = Multigraph::with_vertices(3);
        let ab = g.push_edge(VertexId(0), VertexId(1));
        g.push_edge(VertexId(1), VertexId(2));
        let r = max_edge_disjoint_paths(&g, &set(&[0]), &set(&[2])).unwrap();
        assert_eq!(r.family.len(), 1);
        // source-side minimal cut
        assert_eq!(r.cut.edges, [ab].into_iter().collect());
    }

    #[test]
    fn disconnected_terminals() {
        let mut g = Multigraph::with_vertices(4);
        g.push_edge(VertexId(0), VertexId(1));
        g.push_edge(VertexId(2), VertexId(3));
        let r = max_edge_disjoint_paths(&g, &set(&[0]), &set(&[3])).unwrap();
        assert!(r.family.is_empty());
        assert!(r.cut.is_empty());
        assert_eq!(r.cut.side, set(&[0, 1]));
    }

    #[test]
    fn dumbbell() {
        let mut g = Multigraph::with_vertices(6);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)] {
            g.push_edge(VertexId(u), VertexId(v));
        }
        let a = set(&[0]);
        let b = set(&[5]);
        assert_eq!(brute_min_cut(&g, &a, &b), 1);
        assert_eq!(min_edge_cut(&g, &a, &b).unwrap().len(), 1);
    }

    #[test]
    fn minimality_of_cut() {
        let g = complete(5);
        let (a, b) = (set(&[0, 1]), set(&[4]));
        let cut = min_edge_cut(&g, &a, &b).unwrap();
        for &e in &cut.edges {
            let mut rest = cut.edges.clone();
            rest.remove(&e);
            assert!(!g.reachable(&a, &rest).is_disjoint(&b));
        }
    }

    #[test]
    fn lambda_examples() {
        let g = complete(4);
        let all = set(&[0, 1, 2, 3]);
        for t in 0..4 {
            assert_eq!(lambda_terminal(&g, VertexId(t), &all).unwrap(), 3);
        }
        let mut star = Multigraph::with_vertices(5);
        for i in 1..5 {
            star.push_edge(VertexId(0), VertexId(i));
        }
        let leaves = set(&[1, 2, 3, 4]);
        assert_eq!(lambda_terminal(&star, VertexId(2), &leaves).unwrap(), 1);
        let mut iso = Multigraph::with_vertices(3);
        iso.push_edge(VertexId(1), VertexId(2));
        assert_eq!(lambda_terminal(&iso, VertexId(0), &set(&[0, 1, 2])).unwrap(), 0);
        assert_eq!(lambda_terminal(&iso, VertexId(0), &set(&[1, 2])), Err(Error::NotATerminal(VertexId(0))));
    }

    #[test]
    fn lies_on_edge_cases() {
        assert!(verify_lies_on(&PathFamily::default(), &Cut { side: VertexSet::new(), edges: EdgeSet::new() }));
        let p = Path {
            vertices: vec![VertexId(0), VertexId(1), VertexId(2)],
            edges: vec![EdgeId(0), EdgeId(1)],
        };
        let fam = PathFamily { paths: vec![p] };
        let cut = Cut { side: set(&[1]), edges: [EdgeId(0), EdgeId(1)].into_iter().collect() };
        assert!(!verify_lies_on(&fam, &cut));
    }

    #[test]
    fn terminal_errors() {
        let g = complete(3);
        assert_eq!(max_edge_disjoint_paths(&g, &set(&[0]), &set(&[0, 1])).unwrap_err(), Error::TerminalsOverlap(VertexId(0)));
        assert_eq!(max_edge_disjoint_paths(&g, &set(&[]), &set(&[1])).unwrap_err(), Error::EmptyTerminalSet);
    }

    #[test]
    fn paths_meet_terminals_only_at_ends() {
        let g = complete(5);
        let (a, b) = (set(&[0, 1]), set(&[3, 4]));
        let r = max_edge_disjoint_paths(&g, &a, &b).unwrap();
        for p in &r.family.paths {
            let inner = &p.vertices[1..p.vertices.len() - 1];
            assert!(a.contains(&p.first()) && b.contains(&p.last()));
            assert!(inner.iter().all(|v| !a.contains(v) && !b.contains(v)));
        }
    }

    #[test]
    fn single_edge_cross_check() {
        let mut g = Multigraph::with_vertices(2);
        g.push_edge(VertexId(0), VertexId(1));
        assert_eq!(blowup_cross_check(&g, &set(&[0]), &set(&[1])).unwrap().family.len(), 1);
    }
}
