use std::collections::{BTreeMap, BTreeSet};

use super::channels::{strand_channels, Channel};
use super::path::{ray_prefix, splice_tail, ExtendedPath};
use crate::error::{Error, Result};
use crate::flow::{Network, INF};
use crate::multigraph::VertexId;
use crate::presentation::{truncate, EdgeCoord, EndStructure, Presentation, VertexCoord};

/// Where to start rays and which ends they may go to.
pub struct RouteRequest<'a> {
    /// one entry per path; repeated vertices start several paths
    pub sources: Vec<VertexCoord>,
    pub targets: BTreeSet<usize>,
    /// edges the finite parts may use; lane tails above the ports are always usable
    pub allowed: &'a dyn Fn(&EdgeCoord) -> bool,
    /// lowest layer at which a path may join its lane
    pub min_port: u32,
    /// let paths stop at a vertex dominating a target
    pub allow_dominators: bool,
}

const ATTEMPTS: u32 = 4;

/// Edge-disjoint paths, one per source, each ending in a ray of a target class
/// or at a dominator of one. Paths ending at a dominator are preferred.
pub fn route_to_ends(p: &Presentation, ends: &EndStructure, req: &RouteRequest) -> Result<Vec<ExtendedPath>> {
    let demand = req.sources.len();
    if demand == 0 {
        return Ok(Vec::new());
    }
    let mut lanes: Vec<Channel> = Vec::new();
    let mut doms: BTreeSet<VertexId> = BTreeSet::new();
    for &c in &req.targets {
        let class = ends.class(c)?;
        for &s in &class.strands {
            lanes.extend(strand_channels(p, ends, s)?.lanes);
        }
        if req.allow_dominators {
            doms.extend(class.dominators.iter().copied());
        }
    }
    let max_shift = lanes.iter().map(|l| l.ray.shift() as u32).max().unwrap_or(1);
    let top_source = req.sources.iter().filter_map(|v| v.layer()).max().unwrap_or(0);
    let base = req.min_port.max(top_source + ends.dip + 1);
    let mut best = 0;
    for attempt in 0..ATTEMPTS {
        let port_layer = base + attempt * (2 * max_shift + ends.dip + 1);
        match attempt_route(p, req, &lanes, &doms, port_layer, max_shift)? {
            Ok(paths) => return Ok(paths),
            Err(flow) => best = best.max(flow),
        }
    }
    Err(Error::Infeasible { demand, cut: best })
}

#[allow(clippy::type_complexity)]
fn attempt_route(
    p: &Presentation,
    req: &RouteRequest,
    lanes: &[Channel],
    doms: &BTreeSet<VertexId>,
    port_layer: u32,
    max_shift: u32,
) -> Result<std::result::Result<Vec<ExtendedPath>, usize>> {
    let ports: Vec<_> = lanes.iter().map(|l| l.port(port_layer)).collect();
    let height = port_layer + 3 * max_shift + 2;
    let mut lane_edges = BTreeSet::new();
    for r in &ports {
        lane_edges.extend(ray_prefix(p, r, height)?.1);
    }
    let t = truncate(p, height);
    let ids: Vec<VertexId> = t.graph.vertices().collect();
    let node: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut net = Network::new(ids.len() + 2);
    let (s, z) = (ids.len(), ids.len() + 1);
    let mut tags = Vec::new();
    for (e, u, v) in t.graph.edges() {
        let c = t.edge_coord(e).expect("coordinate");
        if !lane_edges.contains(&c) && (req.allowed)(&c) {
            net.add_edge(node[&u], node[&v], 1, Some(tags.len()));
            tags.push(c);
        }
    }
    let edge_tags = tags.len();
    let dom_list: Vec<VertexId> = doms.iter().copied().collect();
    for (i, d) in dom_list.iter().enumerate() {
        net.add_arc(node[d], z, INF, Some(edge_tags + lanes.len() + i));
    }
    for (i, r) in ports.iter().enumerate() {
        let v = t.arm_vertex(r.arm, r.start_layer, r.start_pat).expect("port below the height");
        net.add_arc(node[&v], z, 1, Some(edge_tags + i));
    }
    let mut count: BTreeMap<VertexCoord, u64> = BTreeMap::new();
    for &v in &req.sources {
        *count.entry(v).or_default() += 1;
    }
    for (&v, &k) in &count {
        let id = t.vertex(v).ok_or_else(|| Error::Ends(format!("source {v:?} is not in the graph")))?;
        net.add_arc(s, node[&id], k, None);
    }
    let demand = req.sources.len() as u64;
    let flow = net.max_flow_limited(s, z, demand);
    if flow < demand {
        return Ok(Err(flow as usize));
    }
    let mut slots: BTreeMap<VertexCoord, Vec<usize>> = BTreeMap::new();
    for (i, &v) in req.sources.iter().enumerate().rev() {
        slots.entry(v).or_default().push(i);
    }
    let mut out: Vec<Option<ExtendedPath>> = vec![None; req.sources.len()];
    let coord = |n: usize| t.coord(ids[n]).expect("coordinate");
    for walk in net.decompose(s, z) {
        let first = coord(walk[0].to);
        let mut vertices = vec![first];
        let mut edges = Vec::new();
        for st in &walk[1..walk.len() - 1] {
            edges.push(tags[st.tag.expect("graph edge")]);
            vertices.push(coord(st.to));
        }
        let end = walk.last().expect("walk reaches the sink").tag.expect("sink arc") - edge_tags;
        let path = if end < lanes.len() {
            let tail = splice_tail(p, &mut vertices, &mut edges, ports[end].clone())?;
            ExtendedPath { head: None, vertices, edges, tail: Some(tail) }
        } else {
            ExtendedPath::finite(vertices, edges)
        };
        let slot = slots.get_mut(&first).and_then(Vec::pop).expect("one walk per source");
        out[slot] = Some(path);
    }
    Ok(Ok(out.into_iter().map(|x| x.expect("every source routed")).collect()))
}

/// Edge-disjoint rays into `class` from the given entries, using only the
/// strands and columns of the graph, never stopping at a dominator.
pub fn strand_ray_family(
    p: &Presentation,
    ends: &EndStructure,
    class: usize,
    entries: &[(VertexCoord, usize)],
) -> Result<Vec<ExtendedPath>> {
    let sources = entries.iter().flat_map(|&(v, k)| std::iter::repeat_n(v, k)).collect();
    let req = RouteRequest {
        sources,
        targets: BTreeSet::from([class]),
        allowed: &|_| true,
        min_port: 0,
        allow_dominators: false,
    };
    route_to_ends(p, ends, &req)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ends::{edge_disjoint, PathEnd};
    use crate::presentation::canonical_ray;
    use crate::presentation::fixtures::build;

    fn at(layer: u32, pat: usize) -> VertexCoord {
        VertexCoord::Arm { arm: 0, layer, pat }
    }

    #[test]
    fn single_strand_gives_the_lane() {
        let p = build(0, &[], &[("A", 1, &[], &[(0, 0)])], &[], &[]);
        let ends = EndStructure::new(&p).unwrap();
        let rays = strand_ray_family(&p, &ends, 0, &[(at(0, 0), 1)]).unwrap();
        assert_eq!(rays.len(), 1);
        let r = &rays[0];
        assert_eq!(r.first(), at(0, 0));
        assert_eq!(r.end(&ends), PathEnd::Class(0));
        assert_eq!(r.tail.as_ref().unwrap().period, canonical_ray(&p, &ends, ends.strands[0].id).unwrap().period);
        assert!(r.is_simple(&p).unwrap());
    }

    #[test]
    fn ladder_carries_two() {
        let p = build(0, &[], &[("A", 2, &[(0, 1)], &[(0, 0), (1, 1)])], &[], &[]);
        let ends = EndStructure::new(&p).unwrap();
        let rays = strand_ray_family(&p, &ends, 0, &[(at(0, 0), 2)]).unwrap();
        assert_eq!(rays.len(), 2);
        for r in &rays {
            r.check(&p).unwrap();
            assert!(r.is_simple(&p).unwrap());
        }
        assert!(edge_disjoint(&p, &rays).unwrap());
    }

    #[test]
    fn ladder_refuses_three() {
        let p = build(0, &[], &[("A", 2, &[(0, 1)], &[(0, 0), (1, 1)])], &[], &[]);
        let ends = EndStructure::new(&p).unwrap();
        let err = strand_ray_family(&p, &ends, 0, &[(at(0, 0), 2), (at(0, 1), 1)]).unwrap_err();
        assert_eq!(err, Error::Infeasible { demand: 3, cut: 2 });
    }

    #[test]
    fn dominator_absorbs_extra_paths() {
        // ray u -> u dominated by core vertex 0; start two paths at u_0
        let p = build(1, &[], &[("A", 1, &[], &[(0, 0)])], &[(0, 0, 0)], &[(0, 0, 0)]);
        let ends = EndStructure::new(&p).unwrap();
        let req = RouteRequest {
            sources: vec![at(0, 0), at(0, 0)],
            targets: BTreeSet::from([0]),
            allowed: &|_| true,
            min_port: 0,
            allow_dominators: true,
        };
        let paths = route_to_ends(&p, &ends, &req).unwrap();
        assert!(edge_disjoint(&p, &paths).unwrap());
        let at_dom = paths.iter().filter(|x| x.tail.is_none()).count();
        assert!(at_dom >= 1);
    }
}
