//! Periodic lanes: edge-disjoint rays along a strand that repeat with the
//! pattern. They come from a circulation of maximum total winding on the
//! pattern component, one unit per pattern edge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{EndStructure, PatEdge, PatStep, Presentation, RaySpec, StrandId};

/// One lane of a strand, started at its lowest point in layers `0..shift`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Channel {
    pub strand: StrandId,
    pub ray: RaySpec,
}

impl Channel {
    /// The lane restarted at its first period start on or above `layer`.
    pub fn port(&self, layer: u32) -> RaySpec {
        let shift = self.ray.shift() as u32;
        let k = layer.saturating_sub(self.ray.start_layer).div_ceil(shift);
        RaySpec { start_layer: self.ray.start_layer + k * shift, ..self.ray.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelSet {
    pub strand: StrandId,
    pub lanes: Vec<Channel>,
}

impl ChannelSet {
    /// Number of edge-disjoint rays the strand carries.
    pub fn capacity(&self) -> usize {
        self.lanes.len()
    }
}

struct Arc {
    from: usize,
    to: usize,
    edge: PatEdge,
    forward: bool,
    cost: i64,
}

/// Flow on one undirected pattern edge: -1, 0 or +1 in stored direction.
fn residual_arcs(pattern_edges: &[(PatEdge, usize, usize, i64)], flow: &[i8]) -> Vec<Arc> {
    let mut arcs = Vec::new();
    for (i, &(edge, x, y, volt)) in pattern_edges.iter().enumerate() {
        if flow[i] < 1 {
            arcs.push(Arc { from: x, to: y, edge, forward: true, cost: -volt });
        }
        if flow[i] > -1 {
            arcs.push(Arc { from: y, to: x, edge, forward: false, cost: volt });
        }
    }
    arcs
}

/// A negative cycle of the residual graph as arc indices, by Bellman-Ford.
fn negative_cycle(n: usize, arcs: &[Arc]) -> Option<Vec<usize>> {
    let mut dist = vec![0i64; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last = None;
    for _ in 0..n {
        last = None;
        for (i, a) in arcs.iter().enumerate() {
            if dist[a.from] + a.cost < dist[a.to] {
                dist[a.to] = dist[a.from] + a.cost;
                pred[a.to] = Some(i);
                last = Some(a.to);
            }
        }
        last?;
    }
    let mut v = last?;
    for _ in 0..n {
        v = arcs[pred[v].expect("relaxed")].from;
    }
    let start = v;
    let mut cycle = Vec::new();
    loop {
        let a = pred[v].expect("on cycle");
        cycle.push(a);
        v = arcs[a].from;
        if v == start {
            break;
        }
    }
    cycle.reverse();
    Some(cycle)
}

/// Lanes of `strand`, grouped by the pattern cycle they lift.
pub fn strand_channels(p: &Presentation, ends: &EndStructure, strand: StrandId) -> Result<ChannelSet> {
    let pattern = p.arms.get(strand.arm).ok_or_else(|| Error::Ends(format!("no arm #{}", strand.arm)))?;
    let s = &ends.arms[strand.arm];
    let comp = s.components.get(strand.component).ok_or_else(|| Error::Ends(format!("no strand {strand:?}")))?;
    let g = s.period[strand.component] as i64;
    if strand.residue as i64 >= g {
        return Err(Error::Ends(format!("no strand {strand:?}")));
    }
    let local = |v: usize| comp.iter().position(|&c| c == v);
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for (idx, &(x, y)) in pattern.inter.iter().enumerate() {
        if local(x).is_none() {
            continue;
        }
        if x == y {
            loops.push((x, vec![PatStep { edge: PatEdge::Inter(idx), forward: true }]));
        } else {
            edges.push((PatEdge::Inter(idx), x, y, 1));
        }
    }
    for (idx, &(x, y)) in pattern.intra.iter().enumerate() {
        if x != y && local(x).is_some() {
            edges.push((PatEdge::Intra(idx), x, y, 0));
        }
    }
    let nodes = pattern.vertices.len();
    let mut flow = vec![0i8; edges.len()];
    while let Some(cycle) = negative_cycle(nodes, &residual_arcs(&edges, &flow)) {
        let arcs = residual_arcs(&edges, &flow);
        for a in cycle {
            let i = edges.iter().position(|e| e.0 == arcs[a].edge).expect("arc of an edge");
            flow[i] += if arcs[a].forward { 1 } else { -1 };
        }
    }
    // split the unit circulation into simple cycles
    let mut out: Vec<Vec<(usize, PatStep, usize)>> = vec![Vec::new(); nodes];
    for (i, &(edge, x, y, _)) in edges.iter().enumerate() {
        match flow[i] {
            1 => out[x].push((x, PatStep { edge, forward: true }, y)),
            -1 => out[y].push((y, PatStep { edge, forward: false }, x)),
            _ => {}
        }
    }
    let mut cycles = loops;
    while let Some(start) = (0..nodes).find(|&v| !out[v].is_empty()) {
        let mut walk: Vec<(usize, PatStep, usize)> = Vec::new();
        let mut at = start;
        loop {
            if let Some(pos) = walk.iter().position(|&(from, _, _)| from == at) {
                let cyc: Vec<(usize, PatStep, usize)> = walk.drain(pos..).collect();
                cycles.push((cyc[0].0, cyc.iter().map(|c| c.1).collect()));
                if walk.is_empty() {
                    break;
                }
                at = walk.last().expect("non-empty").2;
                continue;
            }
            let Some(step) = out[at].pop() else { break };
            walk.push(step);
            at = step.2;
        }
    }
    let mut lanes = Vec::new();
    for (start, steps) in cycles {
        let volt: i64 = steps.iter().map(|st| st.voltage()).sum();
        if volt <= 0 {
            continue;
        }
        // rotate to the lowest point of the cycle
        let (mut level, mut low, mut rot, mut pat, mut low_pat) = (0i64, 0i64, 0usize, start, start);
        for (i, st) in steps.iter().enumerate() {
            let (q, _, _) = st.apply(strand.arm, pattern, pat, 1 << 20).expect("cycle step");
            pat = q;
            level += st.voltage();
            if level < low {
                (low, rot, low_pat) = (level, i + 1, pat);
            }
        }
        let rot = rot % steps.len();
        let period: Vec<PatStep> = steps[rot..].iter().chain(&steps[..rot]).copied().collect();
        let base = (strand.residue as i64 + s.potential[low_pat]).rem_euclid(g);
        for j in 0..volt / g {
            let ray = RaySpec {
                arm: strand.arm,
                start_pat: low_pat,
                start_layer: (base + j * g) as u32,
                preperiod: Vec::new(),
                period: period.clone(),
            };
            lanes.push(Channel { strand, ray });
        }
    }
    lanes.sort_by(|a, b| (a.ray.start_layer, a.ray.start_pat, &a.ray.period).cmp(&(b.ray.start_layer, b.ray.start_pat, &b.ray.period)));
    Ok(ChannelSet { strand, lanes })
}
