//! Slow, independent reference computations used to cross-check the main
//! algorithms: augmenting paths on a dense capacity matrix and exhaustive
//! enumeration on small instances.

use std::collections::{BTreeMap, HashMap};

use crate::ends::Terminal;
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, EdgeSet, Multigraph, VertexId, VertexSet};
use crate::presentation::{truncate, EndStructure, Presentation, StrandId, VertexCoord};

/// Large enough to never be cut by the instances the oracles see.
const BIG: u64 = 1 << 40;

/// Dense symmetric-capacity network solved by depth-first augmenting paths.
#[derive(Debug, Clone)]
pub struct Matrix {
    cap: Vec<Vec<u64>>,
}

impl Matrix {
    pub fn new(n: usize) -> Matrix {
        Matrix { cap: vec![vec![0; n]; n] }
    }

    pub fn add_node(&mut self) -> usize {
        for row in &mut self.cap {
            row.push(0);
        }
        self.cap.push(vec![0; self.cap.len() + 1]);
        self.cap.len() - 1
    }

    pub fn add_undirected(&mut self, u: usize, v: usize, c: u64) {
        if u != v {
            self.cap[u][v] += c;
            self.cap[v][u] += c;
        }
    }

    pub fn add_directed(&mut self, u: usize, v: usize, c: u64) {
        if u != v {
            self.cap[u][v] += c;
        }
    }

    fn augment(&mut self, u: usize, t: usize, seen: &mut [bool]) -> bool {
        if u == t {
            return true;
        }
        seen[u] = true;
        for v in 0..self.cap.len() {
            if !seen[v] && self.cap[u][v] > 0 && self.augment(v, t, seen) {
                self.cap[u][v] -= 1;
                self.cap[v][u] += 1;
                return true;
            }
        }
        false
    }

    /// Unit augmentations until none is left or `limit` is reached.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        let mut flow = 0;
        while flow < limit {
            let mut seen = vec![false; self.cap.len()];
            if !self.augment(s, t, &mut seen) {
                break;
            }
            flow += 1;
        }
        flow
    }
}

/// Min cut between terminal sets in the quotient truncation of depth `n`,
/// built from scratch on a capacity matrix.
pub fn model_min_cut(p: &Presentation, ends: &EndStructure, n: u32, sources: &[Terminal], sinks: &[Terminal]) -> Result<usize> {
    let t = truncate(p, n);
    let ids: Vec<VertexId> = t.graph.vertices().collect();
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = Matrix::new(ids.len() + ends.classes.len() + 2);
    let hub = |c: usize| ids.len() + c;
    let (s, z) = (ids.len() + ends.classes.len(), ids.len() + ends.classes.len() + 1);
    for (_, u, v) in t.graph.edges() {
        m.add_undirected(index[&u], index[&v], 1);
    }
    for (v, c) in t.vertex_coords() {
        if let VertexCoord::Arm { arm, layer, pat } = c {
            if layer == n {
                m.add_undirected(index[&v], hub(ends.class_of_vertex(arm, pat, layer)), BIG);
            }
        }
    }
    for a in &p.dominating {
        let class = ends.class_of_vertex(a.arm, a.pat, 0);
        m.add_undirected(index[&a.core], hub(class), BIG);
    }
    let node = |t: &Terminal| match *t {
        Terminal::Core(v) => index.get(&v).copied().ok_or(Error::UnknownVertex(v)),
        Terminal::Class(c) => Ok(hub(c)),
    };
    for a in sources {
        m.add_directed(s, node(a)?, BIG);
    }
    for b in sinks {
        m.add_directed(node(b)?, z, BIG);
    }
    let flow = m.max_flow(s, z, BIG);
    if flow >= BIG {
        return Err(Error::Ends("terminal sets cannot be separated".into()));
    }
    Ok(flow as usize)
}

/// Edge-disjoint paths in `G_n` between the vertices of two strands at layers
/// `d0..=n`, stopping once `limit` is reached.
pub fn strand_tail_flow(p: &Presentation, ends: &EndStructure, s1: StrandId, s2: StrandId, n: u32, d0: u32, limit: u64) -> u64 {
    let t = truncate(p, n);
    let ids: Vec<VertexId> = t.graph.vertices().collect();
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = Matrix::new(ids.len() + 2);
    let (s, z) = (ids.len(), ids.len() + 1);
    for (_, u, v) in t.graph.edges() {
        m.add_undirected(index[&u], index[&v], 1);
    }
    for (v, c) in t.vertex_coords() {
        if let VertexCoord::Arm { arm, layer, pat } = c {
            if layer < d0 {
                continue;
            }
            let sid = ends.strand_of(arm, pat, layer);
            if sid == s1 {
                m.add_directed(s, index[&v], BIG);
            } else if sid == s2 {
                m.add_directed(index[&v], z, BIG);
            }
        }
    }
    m.max_flow(s, z, limit)
}

/// Smallest edge set whose removal disconnects `a` from `b`, by enumeration.
pub fn brute_min_cut(g: &Multigraph, a: &VertexSet, b: &VertexSet) -> Result<usize> {
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let m = edges.len();
    if m > 24 {
        return Err(Error::EnumerationBound { needed: m, bound: 24 });
    }
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
    Ok(best)
}

/// Edge sets of all `T`-paths: paths between distinct terminals with no
/// terminal inside.
fn tpath_masks(g: &Multigraph, terminals: &VertexSet, index: &BTreeMap<EdgeId, usize>) -> Vec<u64> {
    fn extend(
        g: &Multigraph,
        terminals: &VertexSet,
        index: &BTreeMap<EdgeId, usize>,
        start: VertexId,
        at: VertexId,
        visited: &mut VertexSet,
        mask: u64,
        out: &mut Vec<u64>,
    ) {
        for &e in g.incident(at) {
            let w = g.other_end(e, at).expect("incident edge");
            if visited.contains(&w) {
                continue;
            }
            let m = mask | 1 << index[&e];
            if terminals.contains(&w) {
                if w > start {
                    out.push(m);
                }
                continue;
            }
            visited.insert(w);
            extend(g, terminals, index, start, w, visited, m, out);
            visited.remove(&w);
        }
    }
    let mut out = Vec::new();
    for &t in terminals {
        let mut visited = VertexSet::from([t]);
        extend(g, terminals, index, t, t, &mut visited, 0, &mut out);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Largest number of edge-disjoint `T`-paths, by exhaustive search.
pub fn max_tpath_packing(g: &Multigraph, terminals: &VertexSet) -> Result<usize> {
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    if edges.len() > 20 {
        return Err(Error::EnumerationBound { needed: edges.len(), bound: 20 });
    }
    let index: BTreeMap<EdgeId, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let paths = tpath_masks(g, terminals, &index);
    let mut by_low: Vec<Vec<u64>> = vec![Vec::new(); edges.len()];
    for &pm in &paths {
        by_low[pm.trailing_zeros() as usize].push(pm);
    }
    // best(avail): the lowest available edge is either unused or the lowest edge of a chosen path
    fn best(avail: u64, by_low: &[Vec<u64>], memo: &mut HashMap<u64, usize>) -> usize {
        if avail == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&avail) {
            return v;
        }
        let i = avail.trailing_zeros() as usize;
        let mut b = best(avail & !(1 << i), by_low, memo);
        for &pm in &by_low[i] {
            if pm & avail == pm {
                b = b.max(1 + best(avail & !pm, by_low, memo));
            }
        }
        memo.insert(avail, b);
        b
    }
    let all = if edges.is_empty() { 0 } else { u64::MAX >> (64 - edges.len()) };
    Ok(best(all, &by_low, &mut HashMap::new()))
}
