use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{EdgeCoord, EndStructure, PatStep, Presentation, RaySpec, VertexCoord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Finite,
    Ray,
    DoubleRay,
}

/// A finite, one-way or two-way infinite path with an explicit middle part.
///
/// Read from start to end the path is: the reversal of `head` (if any), the
/// explicit `vertices`/`edges`, then `tail` (if any). Both rays start at the
/// corresponding end vertex of the explicit part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedPath {
    pub head: Option<RaySpec>,
    pub vertices: Vec<VertexCoord>,
    pub edges: Vec<EdgeCoord>,
    pub tail: Option<RaySpec>,
}

/// One end of an extended path: a vertex or the class of a ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathEnd {
    Vertex(VertexCoord),
    Class(usize),
}

fn ray_start(r: &RaySpec) -> VertexCoord {
    VertexCoord::Arm { arm: r.arm, layer: r.start_layer, pat: r.start_pat }
}

/// Layer bookkeeping for one ray: how far it can fall below a period start.
fn amplitude(period: &[PatStep]) -> i64 {
    let mut level = 0i64;
    let mut low = 0i64;
    for s in period {
        level += s.voltage();
        low = low.min(level);
    }
    -low
}

fn rise(steps: &[PatStep]) -> i64 {
    let mut level = 0i64;
    let mut high = 0i64;
    for s in steps {
        level += s.voltage();
        high = high.max(level);
    }
    high
}

/// Edges of `r` (with the vertices they reach) until the ray stays above `max_layer`.
pub fn ray_prefix(p: &Presentation, r: &RaySpec, max_layer: u32) -> Result<(Vec<VertexCoord>, Vec<EdgeCoord>)> {
    let shift = r.shift();
    if shift <= 0 || r.period.is_empty() {
        return Err(Error::Ends(format!("ray period does not rise: {r:?}")));
    }
    let amp = amplitude(&r.period);
    let pre_len = r.preperiod.len();
    let mut count = pre_len;
    let mut level = r.start_layer as i64 + r.preperiod.iter().map(|s| s.voltage()).sum::<i64>();
    while level - amp <= max_layer as i64 + 1 {
        count += r.period.len();
        level += shift;
    }
    r.walk(p, count)
}

impl ExtendedPath {
    pub fn finite(vertices: Vec<VertexCoord>, edges: Vec<EdgeCoord>) -> ExtendedPath {
        ExtendedPath { head: None, vertices, edges, tail: None }
    }

    /// Removes closed sub-walks of the finite part; rays stay attached.
    pub(crate) fn without_loops(&self) -> ExtendedPath {
        let mut vertices = vec![self.vertices[0]];
        let mut edges = Vec::new();
        let mut pos = std::collections::BTreeMap::from([(self.vertices[0], 0usize)]);
        for (i, &e) in self.edges.iter().enumerate() {
            let next = self.vertices[i + 1];
            if let Some(&j) = pos.get(&next) {
                for v in vertices.drain(j + 1..) {
                    pos.remove(&v);
                }
                edges.truncate(j);
            } else {
                pos.insert(next, vertices.len());
                vertices.push(next);
                edges.push(e);
            }
        }
        ExtendedPath { head: self.head.clone(), vertices, edges, tail: self.tail.clone() }
    }

    pub fn kind(&self) -> PathKind {
        match (self.head.is_some(), self.tail.is_some()) {
            (false, false) => PathKind::Finite,
            (true, true) => PathKind::DoubleRay,
            _ => PathKind::Ray,
        }
    }

    pub fn reversed(&self) -> ExtendedPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        ExtendedPath { head: self.tail.clone(), vertices, edges, tail: self.head.clone() }
    }

    pub fn first(&self) -> VertexCoord {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexCoord {
        *self.vertices.last().expect("non-empty path")
    }

    pub fn start(&self, ends: &EndStructure) -> PathEnd {
        match &self.head {
            Some(r) => PathEnd::Class(ends.class_of_vertex(r.arm, r.start_pat, r.start_layer)),
            None => PathEnd::Vertex(self.first()),
        }
    }

    pub fn end(&self, ends: &EndStructure) -> PathEnd {
        match &self.tail {
            Some(r) => PathEnd::Class(ends.class_of_vertex(r.arm, r.start_pat, r.start_layer)),
            None => PathEnd::Vertex(self.last()),
        }
    }

    /// Structural consistency: explicit part is a walk and rays start at its ends.
    pub fn check(&self, p: &Presentation) -> Result<()> {
        if self.vertices.is_empty() || self.vertices.len() != self.edges.len() + 1 {
            return Err(Error::Ends("explicit part has inconsistent lengths".into()));
        }
        for (i, e) in self.edges.iter().enumerate() {
            let (a, b) = e.ends(p);
            let (x, y) = (self.vertices[i], self.vertices[i + 1]);
            if !((a == x && b == y) || (a == y && b == x)) {
                return Err(Error::Ends(format!("edge {e:?} does not join {x:?} and {y:?}")));
            }
        }
        if let Some(r) = &self.head {
            if ray_start(r) != self.first() {
                return Err(Error::Ends("head ray does not start at the first vertex".into()));
            }
        }
        if let Some(r) = &self.tail {
            if ray_start(r) != self.last() {
                return Err(Error::Ends("tail ray does not start at the last vertex".into()));
            }
        }
        Ok(())
    }

    /// Highest layer met by the explicit part or by the rays before they settle.
    fn settle_layer(&self) -> i64 {
        let body = self.vertices.iter().filter_map(|v| v.layer()).max().map_or(0, |l| l as i64);
        let rays = [&self.head, &self.tail].into_iter().flatten().map(|r| {
            let pre: i64 = r.preperiod.iter().map(|s| s.voltage()).sum();
            r.start_layer as i64 + rise(&r.preperiod).max(pre + rise(&r.period))
        });
        rays.fold(body, i64::max)
    }

    /// All edges whose top layer is at most `max_layer`, plus the whole explicit part.
    pub fn edges_up_to(&self, p: &Presentation, max_layer: u32) -> Result<Vec<EdgeCoord>> {
        let mut out = self.edges.clone();
        for r in [&self.head, &self.tail].into_iter().flatten() {
            let (_, es) = ray_prefix(p, r, max_layer)?;
            out.extend(es.into_iter().filter(|e| e.top_layer().is_none_or(|l| l <= max_layer)));
        }
        Ok(out)
    }

    /// Vertices up to `max_layer`, in path order, including both ray prefixes.
    pub fn vertices_up_to(&self, p: &Presentation, max_layer: u32) -> Result<Vec<VertexCoord>> {
        let mut out = Vec::new();
        if let Some(r) = &self.head {
            let (mut vs, _) = ray_prefix(p, r, max_layer)?;
            vs.reverse();
            vs.pop();
            out.extend(vs);
        }
        out.extend(self.vertices.iter().copied());
        if let Some(r) = &self.tail {
            let (vs, _) = ray_prefix(p, r, max_layer)?;
            out.extend(vs.into_iter().skip(1));
        }
        Ok(out)
    }

    /// Whether no vertex repeats. Rays are periodic, so one joint period past
    /// the settle layer decides.
    pub fn is_simple(&self, p: &Presentation) -> Result<bool> {
        let window = self.check_window();
        let vs = self.vertices_up_to(p, window)?;
        let distinct: BTreeSet<&VertexCoord> = vs.iter().collect();
        Ok(distinct.len() == vs.len())
    }

    fn shifts(&self) -> Vec<i64> {
        [&self.head, &self.tail].into_iter().flatten().map(|r| r.shift()).collect()
    }

    fn check_window(&self) -> u32 {
        window(std::slice::from_ref(self))
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    if a == 0 || b == 0 {
        a.max(b)
    } else {
        a / gcd(a, b) * b
    }
}

/// A layer bound past which the edge pattern of the whole family repeats.
fn window(paths: &[ExtendedPath]) -> u32 {
    let base = paths.iter().map(ExtendedPath::settle_layer).max().unwrap_or(0);
    let mut l = 1i64;
    let mut extra = 0i64;
    for path in paths {
        for s in path.shifts() {
            l = lcm(l, s);
        }
        for r in [&path.head, &path.tail].into_iter().flatten() {
            extra = extra.max(amplitude(&r.period) + rise(&r.period));
        }
    }
    (base + 2 * l + 2 * extra + 2).max(0) as u32
}

/// First pair of paths sharing an edge, with the shared edge.
pub fn first_shared_edge(p: &Presentation, paths: &[ExtendedPath]) -> Result<Option<(usize, usize, EdgeCoord)>> {
    let w = window(paths);
    let mut owner: BTreeMap<EdgeCoord, usize> = BTreeMap::new();
    for (i, path) in paths.iter().enumerate() {
        let edges = path.edges_up_to(p, w)?;
        let mut own = BTreeSet::new();
        for e in edges {
            if !own.insert(e) {
                return Ok(Some((i, i, e)));
            }
            if let Some(&j) = owner.get(&e) {
                return Ok(Some((j, i, e)));
            }
            owner.insert(e, i);
        }
    }
    Ok(None)
}

pub fn edge_disjoint(p: &Presentation, paths: &[ExtendedPath]) -> Result<bool> {
    Ok(first_shared_edge(p, paths)?.is_none())
}

/// Drops the part of `body` after its first vertex lying on `tail`, re-rooting
/// the ray there; afterwards the explicit part and the ray meet only at the join.
pub(crate) fn splice_tail(
    p: &Presentation,
    vertices: &mut Vec<VertexCoord>,
    edges: &mut Vec<EdgeCoord>,
    tail: RaySpec,
) -> Result<RaySpec> {
    let max_body = vertices.iter().filter_map(|v| v.layer()).max().unwrap_or(0);
    let (rv, _) = ray_prefix(p, &tail, max_body)?;
    let on_ray: BTreeMap<VertexCoord, usize> = rv.iter().enumerate().rev().map(|(i, &v)| (v, i)).collect();
    let cut = vertices.iter().position(|v| on_ray.contains_key(v)).expect("the ray starts on the body");
    let pos = on_ray[&vertices[cut]];
    vertices.truncate(cut + 1);
    edges.truncate(cut);
    advance(p, &tail, pos)
}

/// The same ray started `k` steps later.
pub(crate) fn advance(p: &Presentation, r: &RaySpec, k: usize) -> Result<RaySpec> {
    let (vs, _) = r.walk(p, k)?;
    let VertexCoord::Arm { pat, layer, .. } = *vs.last().expect("walk starts somewhere") else {
        return Err(Error::Internal("ray left its arm".into()));
    };
    let pre = r.preperiod.len();
    let (preperiod, period) = if k < pre {
        (r.preperiod[k..].to_vec(), r.period.clone())
    } else {
        let mut period = r.period.clone();
        period.rotate_left((k - pre) % r.period.len());
        (Vec::new(), period)
    };
    Ok(RaySpec { arm: r.arm, start_pat: pat, start_layer: layer, preperiod, period })
}
