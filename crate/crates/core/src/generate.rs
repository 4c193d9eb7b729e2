//! Seeded random instances for the property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::multigraph::{Multigraph, VertexId, VertexSet};
use crate::presentation::{Anchor, ArmPattern, ArmStructure, Presentation};

/// Size limits for random presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresentationBounds {
    pub max_core: u32,
    pub max_arms: usize,
    pub max_pattern: usize,
}

impl Default for PresentationBounds {
    fn default() -> Self {
        PresentationBounds { max_core: 4, max_arms: 3, max_pattern: 3 }
    }
}

/// Random loopless multigraph on `n` vertices with `m` edges.
pub fn random_multigraph<R: Rng>(rng: &mut R, n: u32, m: usize) -> Multigraph {
    let mut g = Multigraph::with_vertices(n);
    if n < 2 {
        return g;
    }
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        g.push_edge(VertexId(u), VertexId(v));
    }
    g
}

/// Random multigraph whose non-terminal vertices all have even degree.
///
/// Odd inner vertices are paired up by extra edges, or joined to a terminal
/// when they cannot be paired. Returns `None` if the edge budget is exceeded.
pub fn random_inner_eulerian<R: Rng>(rng: &mut R, max_v: u32, max_e: usize) -> Option<(Multigraph, VertexSet)> {
    let n = rng.gen_range(2..=max_v.max(2));
    let m = rng.gen_range(1..=(max_e * 2 / 3).max(1));
    let mut g = random_multigraph(rng, n, m);
    let k = rng.gen_range(2..=n.min(5));
    let mut all: Vec<VertexId> = g.vertices().collect();
    all.shuffle(rng);
    let terminals: VertexSet = all[..k as usize].iter().copied().collect();
    let mut odd: Vec<VertexId> =
        g.vertices().filter(|v| !terminals.contains(v) && g.degree(*v) % 2 == 1).collect();
    odd.shuffle(rng);
    while odd.len() >= 2 {
        let (u, v) = (odd.pop().expect("two left"), odd.pop().expect("two left"));
        g.push_edge(u, v);
    }
    if let Some(u) = odd.pop() {
        let t = *terminals.iter().next().expect("terminals exist");
        g.push_edge(u, t);
    }
    (g.num_edges() <= max_e).then_some((g, terminals))
}

/// Random connected simple graph on `n` vertices.
pub fn random_connected_simple<R: Rng>(rng: &mut R, n: u32, p: f64) -> Multigraph {
    let mut g = Multigraph::with_vertices(n);
    for v in 1..n {
        g.push_edge(VertexId(rng.gen_range(0..v)), VertexId(v));
    }
    for u in 0..n {
        for v in u + 1..n {
            let present = g.neighbors(VertexId(u)).any(|w| w == VertexId(v));
            if !present && rng.gen_bool(p) {
                g.push_edge(VertexId(u), VertexId(v));
            }
        }
    }
    g
}

fn random_pattern<R: Rng>(rng: &mut R, name: String, max_pattern: usize) -> ArmPattern {
    let n = rng.gen_range(1..=max_pattern.max(1));
    let mut intra = Vec::new();
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=n) {
            let x = rng.gen_range(0..n);
            let mut y = rng.gen_range(0..n - 1);
            if y >= x {
                y += 1;
            }
            intra.push((x, y));
        }
    }
    let inter = (0..rng.gen_range(1..=n + 1)).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    let mut arm = ArmPattern { name, vertices: (0..n).map(|i| format!("p{i}")).collect(), intra, inter };
    // a component without net progress only lifts to finite pieces; give it a vertical edge
    loop {
        let s = ArmStructure::new(&arm);
        let Some(c) = (0..s.components.len()).find(|&c| s.period[c] == 0) else { break };
        let v = s.components[c][0];
        arm.inter.push((v, v));
    }
    arm
}

/// Random valid presentation within `bounds`.
pub fn random_presentation<R: Rng>(rng: &mut R, bounds: PresentationBounds) -> Presentation {
    let nc = rng.gen_range(1..=bounds.max_core.max(1));
    let mut core = Multigraph::new();
    for i in 0..nc {
        core.add_labeled_vertex(VertexId(i), format!("c{i}"));
    }
    if nc >= 2 {
        for _ in 0..rng.gen_range(0..=nc + 1) {
            let u = rng.gen_range(0..nc);
            let mut v = rng.gen_range(0..nc - 1);
            if v >= u {
                v += 1;
            }
            core.push_edge(VertexId(u), VertexId(v));
        }
    }
    let arms: Vec<ArmPattern> =
        (0..rng.gen_range(1..=bounds.max_arms.max(1))).map(|i| random_pattern(rng, format!("A{i}"), bounds.max_pattern)).collect();
    let mut attach = Vec::new();
    for (arm, pattern) in arms.iter().enumerate() {
        for _ in 0..rng.gen_range(1..=3) {
            attach.push(Anchor { core: VertexId(rng.gen_range(0..nc)), arm, pat: rng.gen_range(0..pattern.vertices.len()) });
        }
    }
    let mut dominating: Vec<Anchor> = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let arm = rng.gen_range(0..arms.len());
        let a = Anchor { core: VertexId(rng.gen_range(0..nc)), arm, pat: rng.gen_range(0..arms[arm].vertices.len()) };
        if !dominating.contains(&a) {
            dominating.push(a);
        }
    }
    Presentation { core, arms, attach, dominating }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tpath::is_inner_eulerian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn presentations_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let p = random_presentation(&mut rng, PresentationBounds::default());
            p.validate().unwrap();
            assert!(p.core.num_vertices() <= 4 && p.arms.len() <= 3 && p.max_pattern() <= 3);
        }
    }

    #[test]
    fn inner_eulerian_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut made = 0;
        for _ in 0..100 {
            if let Some((g, t)) = random_inner_eulerian(&mut rng, 12, 30) {
                assert!(is_inner_eulerian(&g, &t));
                assert!(g.num_edges() <= 30 && g.num_vertices() <= 12);
                made += 1;
            }
        }
        assert!(made > 50);
    }
}
