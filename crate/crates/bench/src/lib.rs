//! Seeded inputs shared by the benchmarks.

use edge_ends::generate::{random_connected_simple, random_inner_eulerian, random_presentation, PresentationBounds};
use edge_ends::presentation::Presentation;
use edge_ends::{Multigraph, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn connected_graph(n: u32, p: f64, seed: u64) -> Multigraph {
    random_connected_simple(&mut ChaCha8Rng::seed_from_u64(seed), n, p)
}

/// The first inner-Eulerian instance the seed produces.
pub fn inner_eulerian(max_v: u32, max_e: usize, seed: u64) -> (Multigraph, VertexSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(inst) = random_inner_eulerian(&mut rng, max_v, max_e) {
            return inst;
        }
    }
}

pub fn presentations(count: usize, seed: u64) -> Vec<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_presentation(&mut rng, PresentationBounds::default())).collect()
}
