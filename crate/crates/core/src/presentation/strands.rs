//! Strands, edge-end classes and canonical rays.
//!
//! Each component `C` of an arm's pattern graph is lifted along the layers
//! with voltage `+1` on inter edges. If `g` is the gcd of the net voltages of
//! the cycles of `C`, the lift splits into `g` infinite components, one per
//! residue `(n - pot(p)) mod g`; these are the strands. `g = 0` means the lift
//! is a union of finite copies of `C` and is rejected by validation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::truncate::{truncate, EdgeCoord, VertexCoord};
use super::{ArmPattern, Presentation};
use crate::error::{Error, Result};
use crate::multigraph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PatEdge {
    Intra(usize),
    Inter(usize),
}

/// A pattern edge traversed forward (`x -> y` for the stored pair `(x, y)`) or backward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PatStep {
    pub edge: PatEdge,
    pub forward: bool,
}

impl PatStep {
    pub fn reversed(self) -> PatStep {
        PatStep { forward: !self.forward, ..self }
    }

    /// Layer change caused by the step.
    pub fn voltage(self) -> i64 {
        match (self.edge, self.forward) {
            (PatEdge::Intra(_), _) => 0,
            (PatEdge::Inter(_), true) => 1,
            (PatEdge::Inter(_), false) => -1,
        }
    }

    /// Applies the step at `(pat, layer)`; `None` if the edge does not start there
    /// or the step would leave the arm below layer 0.
    pub fn apply(self, arm: usize, pattern: &ArmPattern, pat: usize, layer: u32) -> Option<(usize, u32, EdgeCoord)> {
        match self.edge {
            PatEdge::Intra(idx) => {
                let (x, y) = pattern.intra[idx];
                let (from, to) = if self.forward { (x, y) } else { (y, x) };
                (from == pat).then_some((to, layer, EdgeCoord::Intra { arm, idx, layer }))
            }
            PatEdge::Inter(idx) => {
                let (x, y) = pattern.inter[idx];
                if self.forward {
                    (x == pat).then_some((y, layer + 1, EdgeCoord::Inter { arm, idx, layer }))
                } else if y == pat && layer > 0 {
                    Some((x, layer - 1, EdgeCoord::Inter { arm, idx, layer: layer - 1 }))
                } else {
                    None
                }
            }
        }
    }
}

/// Voltage-graph data of one arm pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmStructure {
    /// components of the layer-collapsed pattern, ordered by smallest vertex
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
    /// BFS potential: the layer offset of each vertex along a spanning tree
    pub potential: Vec<i64>,
    /// gcd of cycle voltages per component (number of strands)
    pub period: Vec<u32>,
    /// tree step into each non-root vertex
    parent: Vec<Option<(usize, PatStep)>>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All pattern steps leaving `p`, intra edges first, in index order.
pub(crate) fn steps_from(pattern: &ArmPattern, p: usize) -> Vec<(PatStep, usize)> {
    let mut out = Vec::new();
    for (idx, &(x, y)) in pattern.intra.iter().enumerate() {
        if x == p {
            out.push((PatStep { edge: PatEdge::Intra(idx), forward: true }, y));
        }
        if y == p {
            out.push((PatStep { edge: PatEdge::Intra(idx), forward: false }, x));
        }
    }
    for (idx, &(x, y)) in pattern.inter.iter().enumerate() {
        if x == p {
            out.push((PatStep { edge: PatEdge::Inter(idx), forward: true }, y));
        }
        if y == p {
            out.push((PatStep { edge: PatEdge::Inter(idx), forward: false }, x));
        }
    }
    out
}

impl ArmStructure {
    pub fn new(pattern: &ArmPattern) -> ArmStructure {
        let n = pattern.vertices.len();
        let mut component_of = vec![usize::MAX; n];
        let mut potential = vec![0i64; n];
        let mut parent = vec![None; n];
        let mut components = Vec::new();
        for root in 0..n {
            if component_of[root] != usize::MAX {
                continue;
            }
            let c = components.len();
            let mut members = vec![root];
            component_of[root] = c;
            let mut queue = VecDeque::from([root]);
            while let Some(p) = queue.pop_front() {
                for (step, q) in steps_from(pattern, p) {
                    if component_of[q] == usize::MAX {
                        component_of[q] = c;
                        potential[q] = potential[p] + step.voltage();
                        parent[q] = Some((p, step));
                        members.push(q);
                        queue.push_back(q);
                    }
                }
            }
            members.sort();
            components.push(members);
        }
        let mut g = vec![0u64; components.len()];
        for &(x, y) in &pattern.inter {
            let c = component_of[x];
            g[c] = gcd(g[c], (potential[x] + 1 - potential[y]).unsigned_abs());
        }
        for &(x, y) in &pattern.intra {
            let c = component_of[x];
            g[c] = gcd(g[c], (potential[x] - potential[y]).unsigned_abs());
        }
        ArmStructure { components, component_of, potential, period: g.into_iter().map(|x| x as u32).collect(), parent }
    }

    /// Residue class of `(pat, layer)` inside its component.
    pub fn residue(&self, pat: usize, layer: u32) -> u32 {
        let g = self.period[self.component_of[pat]] as i64;
        (layer as i64 - self.potential[pat]).rem_euclid(g) as u32
    }

    /// Tree path from the component root to `p`.
    fn root_path(&self, p: usize) -> Vec<(usize, PatStep)> {
        let mut path = Vec::new();
        let mut cur = p;
        while let Some((prev, step)) = self.parent[cur] {
            path.push((prev, step));
            cur = prev;
        }
        path.reverse();
        path
    }
}

/// Height of the finite pieces the half-infinite arm leaves near its bottom:
/// every vertex at layer `>= a + pocket_depth` is joined to the tail of its
/// strand inside layers `>= a`.
///
/// A component of the half-infinite lift that reaches `2 * |V_L| * g + 2`
/// layers above its lowest vertex repeats a vertex up to a multiple of `g`
/// and is therefore infinite, so a band of that height decides finiteness.
pub fn pocket_depth(pattern: &ArmPattern, s: &ArmStructure) -> u32 {
    let n = pattern.vertices.len();
    let g = s.period.iter().copied().max().unwrap_or(1).max(1) as usize;
    let top = (2 * n * g + 2) as u32;
    let id = |p: usize, l: u32| l as usize * n + p;
    let mut seen = vec![false; n * (top as usize + 1)];
    let mut queue = VecDeque::new();
    for p in 0..n {
        seen[id(p, top)] = true;
        queue.push_back((p, top));
    }
    while let Some((p, l)) = queue.pop_front() {
        for (step, _) in steps_from(pattern, p) {
            if let Some((q, m, _)) = step.apply(0, pattern, p, l) {
                if m <= top && !seen[id(q, m)] {
                    seen[id(q, m)] = true;
                    queue.push_back((q, m));
                }
            }
        }
    }
    let mut depth = 0;
    for l in 0..=top / 2 {
        for p in 0..n {
            if !seen[id(p, l)] {
                depth = depth.max(l + 1);
            }
        }
    }
    depth
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StrandId {
    pub arm: usize,
    pub component: usize,
    pub residue: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strand {
    pub id: StrandId,
    /// pattern vertices of the component
    pub pattern: Vec<usize>,
    /// number of strands sharing the component
    pub period: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEndClass {
    pub id: usize,
    pub strands: Vec<StrandId>,
    pub dominators: BTreeSet<VertexId>,
}

/// Eventually periodic ray: `preperiod` once, then `period` forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RaySpec {
    pub arm: usize,
    pub start_pat: usize,
    pub start_layer: u32,
    pub preperiod: Vec<PatStep>,
    pub period: Vec<PatStep>,
}

impl RaySpec {
    /// Net layer increase of one period.
    pub fn shift(&self) -> i64 {
        self.period.iter().map(|s| s.voltage()).sum()
    }

    /// First `count` edges together with the vertices they reach.
    pub fn walk(&self, p: &Presentation, count: usize) -> Result<(Vec<VertexCoord>, Vec<EdgeCoord>)> {
        let pattern = &p.arms[self.arm];
        let (mut pat, mut layer) = (self.start_pat, self.start_layer);
        let mut vertices = vec![VertexCoord::Arm { arm: self.arm, layer, pat }];
        let mut edges = Vec::new();
        let steps = self.preperiod.iter().chain(self.period.iter().cycle());
        for step in steps.take(count) {
            let (q, m, e) = step
                .apply(self.arm, pattern, pat, layer)
                .ok_or_else(|| Error::Ends(format!("ray step {step:?} does not leave ({pat}, {layer})")))?;
            pat = q;
            layer = m;
            vertices.push(VertexCoord::Arm { arm: self.arm, layer, pat });
            edges.push(e);
        }
        Ok((vertices, edges))
    }
}

/// Strand and class structure of a validated presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndStructure {
    pub arms: Vec<ArmStructure>,
    pub strands: Vec<Strand>,
    pub classes: Vec<EdgeEndClass>,
    pub class_of: BTreeMap<StrandId, usize>,
    /// maximum pocket depth over all arms
    pub dip: u32,
}

impl EndStructure {
    pub fn new(p: &Presentation) -> Result<EndStructure> {
        p.validate()?;
        let arms: Vec<ArmStructure> = p.arms.iter().map(ArmStructure::new).collect();
        let dip = p.arms.iter().zip(&arms).map(|(pat, s)| pocket_depth(pat, s)).max().unwrap_or(0);
        let mut strands = Vec::new();
        for (arm, s) in arms.iter().enumerate() {
            for (component, comp) in s.components.iter().enumerate() {
                for residue in 0..s.period[component] {
                    strands.push(Strand {
                        id: StrandId { arm, component, residue },
                        pattern: comp.clone(),
                        period: s.period[component],
                    });
                }
            }
        }
        let index: BTreeMap<StrandId, usize> = strands.iter().enumerate().map(|(i, s)| (s.id, i)).collect();
        let doms: Vec<VertexId> = p.dominating_vertices().into_iter().collect();
        let dom_index: BTreeMap<VertexId, usize> = doms.iter().enumerate().map(|(i, &v)| (v, strands.len() + i)).collect();
        let mut uf = UnionFind::<usize>::new(strands.len() + doms.len());
        for a in &p.dominating {
            for sid in dominated_strands(&arms, a.arm, a.pat) {
                uf.union(index[&sid], dom_index[&a.core]);
            }
        }
        let mut by_root: BTreeMap<usize, (Vec<StrandId>, BTreeSet<VertexId>)> = BTreeMap::new();
        for (i, s) in strands.iter().enumerate() {
            by_root.entry(uf.find(i)).or_default().0.push(s.id);
        }
        for (&v, &i) in &dom_index {
            by_root.entry(uf.find(i)).or_default().1.insert(v);
        }
        let mut groups: Vec<(Vec<StrandId>, BTreeSet<VertexId>)> = by_root.into_values().collect();
        groups.sort_by(|a, b| a.0.first().cmp(&b.0.first()));
        let classes: Vec<EdgeEndClass> = groups
            .into_iter()
            .enumerate()
            .map(|(id, (strands, dominators))| EdgeEndClass { id, strands, dominators })
            .collect();
        let class_of = classes.iter().flat_map(|c| c.strands.iter().map(move |&s| (s, c.id))).collect();
        Ok(EndStructure { arms, strands, classes, class_of, dip })
    }

    pub fn strand_of(&self, arm: usize, pat: usize, layer: u32) -> StrandId {
        let s = &self.arms[arm];
        StrandId { arm, component: s.component_of[pat], residue: s.residue(pat, layer) }
    }

    pub fn strand(&self, id: StrandId) -> Option<&Strand> {
        self.strands.iter().find(|s| s.id == id)
    }

    pub fn class(&self, id: usize) -> Result<&EdgeEndClass> {
        self.classes.get(id).ok_or_else(|| Error::Ends(format!("no edge-end class {id}")))
    }

    /// Class of the strand holding an arm vertex.
    pub fn class_of_vertex(&self, arm: usize, pat: usize, layer: u32) -> usize {
        self.class_of[&self.strand_of(arm, pat, layer)]
    }

    /// Pattern vertices of `strand` present at `layer`.
    pub fn strand_layer(&self, strand: StrandId, layer: u32) -> Vec<usize> {
        let s = &self.arms[strand.arm];
        s.components[strand.component].iter().copied().filter(|&p| s.residue(p, layer) == strand.residue).collect()
    }
}

/// A column into pattern vertex `pat` meets every residue of its component.
fn dominated_strands(arms: &[ArmStructure], arm: usize, pat: usize) -> Vec<StrandId> {
    let s = &arms[arm];
    let component = s.component_of[pat];
    (0..s.period[component]).map(|residue| StrandId { arm, component, residue }).collect()
}

pub fn strands(p: &Presentation, arm: usize) -> Result<Vec<Strand>> {
    if arm >= p.arms.len() {
        return Err(Error::Presentation(vec![format!("no arm #{arm}")]));
    }
    Ok(EndStructure::new(p)?.strands.into_iter().filter(|s| s.id.arm == arm).collect())
}

pub fn edge_end_classes(p: &Presentation) -> Result<Vec<EdgeEndClass>> {
    Ok(EndStructure::new(p)?.classes)
}

pub fn edge_dominators(p: &Presentation, class: usize) -> Result<BTreeSet<VertexId>> {
    Ok(EndStructure::new(p)?.class(class)?.dominators.clone())
}

/// A deterministic periodic ray in `strand`: the fundamental cycle of the first
/// pattern edge closing a cycle of non-zero voltage, rotated to its lowest point.
pub fn canonical_ray(p: &Presentation, ends: &EndStructure, strand: StrandId) -> Result<RaySpec> {
    let pattern = p.arms.get(strand.arm).ok_or_else(|| Error::Ends(format!("no arm #{}", strand.arm)))?;
    let s = &ends.arms[strand.arm];
    let comp = s.components.get(strand.component).ok_or_else(|| Error::Ends(format!("no strand {strand:?}")))?;
    let g = s.period[strand.component];
    if strand.residue >= g {
        return Err(Error::Ends(format!("no strand {strand:?}")));
    }
    let mut cycle = None;
    'search: for &x in comp {
        for (step, y) in steps_from(pattern, x) {
            let d = s.potential[x] + step.voltage() - s.potential[y];
            if d > 0 {
                cycle = Some(fundamental_cycle(s, x, step, y));
                break 'search;
            }
        }
    }
    let (start, steps) = cycle.ok_or_else(|| Error::Internal(format!("strand {strand:?} has no rising cycle")))?;
    // lowest point of the cycle, ties by pattern vertex
    let mut best = (0i64, start, 0usize);
    let (mut pat, mut level) = (start, 0i64);
    for (i, st) in steps.iter().enumerate() {
        let (q, _) = step_target(pattern, pat, *st);
        pat = q;
        level += st.voltage();
        if (level, pat) < (best.0, best.1) {
            best = (level, pat, i + 1);
        }
    }
    let (_, start_pat, rot) = best;
    let rot = rot % steps.len();
    let period: Vec<PatStep> = steps[rot..].iter().chain(&steps[..rot]).copied().collect();
    let g = g as i64;
    let start_layer = (strand.residue as i64 + s.potential[start_pat]).rem_euclid(g) as u32;
    Ok(RaySpec { arm: strand.arm, start_pat, start_layer, preperiod: Vec::new(), period })
}

fn step_target(pattern: &ArmPattern, pat: usize, step: PatStep) -> (usize, i64) {
    let (x, y) = match step.edge {
        PatEdge::Intra(i) => pattern.intra[i],
        PatEdge::Inter(i) => pattern.inter[i],
    };
    let (from, to) = if step.forward { (x, y) } else { (y, x) };
    debug_assert_eq!(from, pat);
    (to, step.voltage())
}

/// Closed walk `lca -> x -> y -> lca` through the non-tree step `x -> y`.
fn fundamental_cycle(s: &ArmStructure, x: usize, step: PatStep, y: usize) -> (usize, Vec<PatStep>) {
    let px = s.root_path(x);
    let py = s.root_path(y);
    let common = px.iter().zip(&py).take_while(|(a, b)| a == b).count();
    // vertex at depth `common` on the root path of x
    let lca = px.get(common).map_or(x, |&(v, _)| v);
    let mut steps: Vec<PatStep> = px[common..].iter().map(|&(_, st)| st).collect();
    steps.push(step);
    steps.extend(py[common..].iter().rev().map(|&(_, st)| st.reversed()));
    (lca, steps)
}

/// For every class, whether its tails share a component of `G - F` with the tails of `class`.
pub fn basic_open(p: &Presentation, ends: &EndStructure, f: &BTreeSet<EdgeCoord>, class: usize) -> Result<Vec<bool>> {
    ends.class(class)?;
    let max_layer = f.iter().filter_map(EdgeCoord::top_layer).max().map_or(0, |l| l + 1);
    let n = max_layer + ends.dip + 1;
    let t = truncate(p, n);
    let nv = t.graph.vertex_set().iter().next_back().map_or(0, |v| v.0 as usize + 1);
    let strand_node: BTreeMap<StrandId, usize> = ends.strands.iter().enumerate().map(|(i, s)| (s.id, nv + i)).collect();
    let mut uf = UnionFind::<usize>::new(nv + ends.strands.len());
    for (e, u, v) in t.graph.edges() {
        if !f.contains(&t.edge_coord(e).expect("coordinate")) {
            uf.union(u.0 as usize, v.0 as usize);
        }
    }
    for s in &ends.strands {
        for pat in ends.strand_layer(s.id, n) {
            uf.union(strand_node[&s.id], t.arm_vertex(s.id.arm, n, pat).expect("layer vertex").0 as usize);
        }
    }
    for a in &p.dominating {
        for sid in dominated_strands(&ends.arms, a.arm, a.pat) {
            uf.union(a.core.0 as usize, strand_node[&sid]);
        }
    }
    let root = uf.find(strand_node[&ends.classes[class].strands[0]]);
    Ok(ends.classes.iter().map(|c| uf.find(strand_node[&c.strands[0]]) == root).collect())
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn arm_only(n: usize, intra: &[(usize, usize)], inter: &[(usize, usize)]) -> Presentation {
        build(0, &[], &[("A", n, intra, inter)], &[], &[])
    }

    #[test]
    fn strand_examples() {
        assert_eq!(strands(&arm_only(2, &[(0, 1)], &[(0, 0), (1, 1)]), 0).unwrap().len(), 1);
        assert_eq!(strands(&arm_only(2, &[], &[(0, 0), (1, 1)]), 0).unwrap().len(), 2);
        assert_eq!(strands(&arm_only(1, &[], &[(0, 0)]), 0).unwrap().len(), 1);
        // alternating u -> v -> u gives two disjoint rays u0 v1 u2 ... and v0 u1 v2 ...
        assert_eq!(strands(&arm_only(2, &[], &[(0, 1), (1, 0)]), 0).unwrap().len(), 2);
    }

    #[test]
    fn class_examples() {
        let p = figure1();
        let classes = edge_end_classes(&p).unwrap();
        assert_eq!(classes.len(), 1);
        let v_inf = p.core.vertex_by_label("v_inf").unwrap();
        assert_eq!(classes[0].dominators, [v_inf].into_iter().collect());
        assert_eq!(classes[0].strands.len(), 2);

        assert_eq!(edge_end_classes(&arm_only(1, &[], &[(0, 0)])).unwrap().len(), 1);
        let two = build(1, &[], &[("L", 1, &[], &[(0, 0)]), ("R", 1, &[], &[(0, 0)])], &[(0, 0, 0), (0, 1, 0)], &[]);
        let classes = edge_end_classes(&two).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.dominators.is_empty()));
    }

    #[test]
    fn dominator_chain() {
        let rise = &[(0, 0)][..];
        let p = build(2, &[], &[("S1", 1, &[], rise), ("S2", 1, &[], rise), ("S3", 1, &[], rise)], &[], &[(0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 0)]);
        let classes = edge_end_classes(&p).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].strands.len(), 3);
        assert_eq!(classes[0].dominators, [VertexId(0), VertexId(1)].into_iter().collect());
    }

    #[test]
    fn canonical_ray_examples() {
        let p = arm_only(1, &[], &[(0, 0)]);
        let e = EndStructure::new(&p).unwrap();
        let r = canonical_ray(&p, &e, e.strands[0].id).unwrap();
        assert_eq!(r.period, vec![PatStep { edge: PatEdge::Inter(0), forward: true }]);
        assert_eq!((r.start_pat, r.start_layer, r.shift()), (0, 0, 1));

        let p = arm_only(2, &[], &[(0, 1), (1, 0)]);
        let e = EndStructure::new(&p).unwrap();
        let r = canonical_ray(&p, &e, e.strands[0].id).unwrap();
        let (vs, _) = r.walk(&p, 4).unwrap();
        let pats: Vec<usize> = vs.iter().map(|v| if let VertexCoord::Arm { pat, .. } = v { *pat } else { 9 }).collect();
        assert_eq!(pats, vec![0, 1, 0, 1, 0]);
        assert_eq!(r.period.len(), 2);
        let r1 = canonical_ray(&p, &e, e.strands[1].id).unwrap();
        assert_eq!(e.strand_of(0, r1.start_pat, r1.start_layer), e.strands[1].id);

        let p = arm_only(2, &[(0, 1)], &[(0, 0), (1, 1)]);
        let e = EndStructure::new(&p).unwrap();
        let r = canonical_ray(&p, &e, e.strands[0].id).unwrap();
        assert_eq!(r.period.len(), 1);
    }

    #[test]
    fn canonical_rays_stay_in_their_strand() {
        // a component with a dipping cycle: p0 -> p1 up, p1 - p2 flat, p2 -> p0 up twice
        let p = arm_only(3, &[(1, 2)], &[(0, 1), (2, 0), (1, 0)]);
        let e = EndStructure::new(&p).unwrap();
        for s in &e.strands {
            let r = canonical_ray(&p, &e, s.id).unwrap();
            let (vs, es) = r.walk(&p, 30).unwrap();
            let distinct: BTreeSet<_> = es.iter().collect();
            assert_eq!(distinct.len(), es.len());
            for v in vs {
                if let VertexCoord::Arm { arm, layer, pat } = v {
                    assert_eq!(e.strand_of(arm, pat, layer), s.id);
                }
            }
        }
    }

    #[test]
    fn pockets() {
        assert_eq!(EndStructure::new(&arm_only(1, &[], &[(0, 0)])).unwrap().dip, 0);
        // u rises by itself and feeds v one layer up; v at layer 0 is isolated
        let p = arm_only(2, &[], &[(0, 0), (0, 1)]);
        assert_eq!(EndStructure::new(&p).unwrap().dip, 1);
        // v at layers 0 and 1 only reaches u two layers below the entry of u -> x -> v
        let p = arm_only(3, &[], &[(0, 0), (0, 1), (1, 2)]);
        assert_eq!(EndStructure::new(&p).unwrap().dip, 2);
    }

    #[test]
    fn basic_open_examples() {
        let p = figure1();
        let e = EndStructure::new(&p).unwrap();
        let v_inf = p.core.vertex_by_label("v_inf").unwrap();
        let t = truncate(&p, 3);
        let mut f: BTreeSet<EdgeCoord> = t
            .edge_coords()
            .filter(|(e, _)| t.graph.endpoints(*e).is_some_and(|(a, b)| a == v_inf || b == v_inf))
            .map(|(_, c)| c)
            .filter(|c| c.top_layer().is_none_or(|l| l <= 2))
            .collect();
        f.insert(EdgeCoord::Core { id: crate::multigraph::EdgeId(0) });
        assert_eq!(basic_open(&p, &e, &f, 0).unwrap(), vec![true]);

        let two = build(1, &[], &[("L", 1, &[], &[(0, 0)]), ("R", 1, &[], &[(0, 0)])], &[(0, 0, 0), (0, 1, 0)], &[]);
        let e = EndStructure::new(&two).unwrap();
        assert_eq!(basic_open(&two, &e, &BTreeSet::new(), 0).unwrap(), vec![true, true]);
        let cut: BTreeSet<EdgeCoord> = [EdgeCoord::Attach { idx: 0 }, EdgeCoord::Attach { idx: 1 }].into_iter().collect();
        assert_eq!(basic_open(&two, &e, &cut, 0).unwrap(), vec![true, false]);
    }
}
