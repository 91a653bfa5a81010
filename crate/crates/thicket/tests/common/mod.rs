//! Shared generators for the integration suites: the exhaustive corpus
//! of small set systems, plus seeded random systems and graphs. All
//! randomness is ChaCha8 with fixed seeds, so failures replay exactly.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thicket::bitset::BitSet;
use thicket::graph::Graph;
use thicket::setsystem::SetSystem;

/// Every set system with domain size ≤ 4 and at most 8 member sets:
/// one per subset of the powerset of the domain (39,481 in total).
pub fn exhaustive_small_systems() -> Vec<SetSystem> {
    let mut out = Vec::new();
    for d in 0..=4usize {
        let candidates = 1u32 << d;
        for mask in 0u32..1u32 << candidates {
            if mask.count_ones() > 8 {
                continue;
            }
            let sets = (0..candidates)
                .filter(|s| mask >> s & 1 == 1)
                .map(|s| BitSet::from_fn(d, |x| s >> x & 1 == 1))
                .collect();
            out.push(SetSystem::build(d, sets).unwrap());
        }
    }
    assert_eq!(out.len(), 39_481, "corpus size drifted");
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform random system: domain in 1..=max_domain, up to `max_family`
/// independent uniform subsets (duplicates collapse on build).
pub fn random_system(r: &mut ChaCha8Rng, max_domain: usize, max_family: usize) -> SetSystem {
    let d = r.gen_range(1..=max_domain);
    let m = r.gen_range(0..=max_family);
    let sets = (0..m).map(|_| BitSet::from_fn(d, |_| r.gen_bool(0.5))).collect();
    SetSystem::build(d, sets).unwrap()
}

pub fn random_systems(seed: u64, count: usize, max_domain: usize, max_family: usize) -> Vec<SetSystem> {
    let mut r = rng(seed);
    (0..count).map(|_| random_system(&mut r, max_domain, max_family)).collect()
}

/// A random system joined with the full powerset of three domain points,
/// which forces thicket dimension ≥ 3.
pub fn random_system_with_cube(r: &mut ChaCha8Rng) -> SetSystem {
    let d = r.gen_range(4..=8);
    let base = {
        let m = r.gen_range(0..=6);
        let sets = (0..m).map(|_| BitSet::from_fn(d, |_| r.gen_bool(0.5))).collect();
        SetSystem::build(d, sets).unwrap()
    };
    let p0 = r.gen_range(0..d);
    let p1 = (p0 + 1 + r.gen_range(0..d - 1)) % d;
    let mut p2 = (p0 + 1) % d;
    while p2 == p0 || p2 == p1 {
        p2 = (p2 + 1) % d;
    }
    let pts = [p0, p1, p2];
    let cube_sets = (0..8u32)
        .map(|mask| BitSet::from_fn(d, |x| pts.iter().enumerate().any(|(i, &p)| p == x && mask >> i & 1 == 1)))
        .collect();
    let cube = SetSystem::build(d, cube_sets).unwrap();
    base.union(&cube).unwrap()
}

/// An Erdős–Rényi style graph: 1..=max_n vertices, each pair joined with
/// a probability drawn per graph.
pub fn random_graph(r: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = r.gen_range(1..=max_n);
    let p: f64 = r.gen_range(0.05..0.95);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}
