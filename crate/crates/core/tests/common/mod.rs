//! Independent oracles shared by the integration suites. Nothing here calls
//! into the sampler or the backbone code it checks.

#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use itertools::Itertools;
use knowledge_net::synth::{generate_sbm, SbmSpec};
use knowledge_net::ArticleGraph;
use rand::Rng;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn names(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("A{i}")).collect()
}

/// Seed of the 3 × 50 planted-partition fixture.
pub const SBM_FIXTURE_SEED: u64 = 150_2019;

/// Three areas of 50 vertices, `p_in = 0.1`, `p_out = 0.02`.
pub fn sbm_fixture() -> ArticleGraph {
    generate_sbm(&SbmSpec::planted(vec![50, 50, 50], 0.1, 0.02, SBM_FIXTURE_SEED)).unwrap()
}

/// Random graph with at most `max_n` vertices over at most `max_areas`
/// areas, every area holding at least `k + 1` vertices.
pub fn random_small_graph<R: Rng>(rng: &mut R, max_n: usize, max_areas: usize, k: usize) -> ArticleGraph {
    let m_cap = (max_n / (k + 1)).min(max_areas).max(1);
    let m = rng.gen_range(1..=m_cap);
    let mut sizes = vec![k + 1; m];
    let mut spare = max_n - m * (k + 1);
    for s in sizes.iter_mut() {
        let extra = rng.gen_range(0..=spare);
        *s += extra;
        spare -= extra;
    }
    let n: u32 = sizes.iter().sum::<usize>() as u32;
    let density: f64 = rng.gen_range(0.1..0.9);
    let edges: Vec<(u32, u32)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    ArticleGraph::from_edges(names(m), &sizes, None, edges).unwrap()
}

/// Average collapse over every joint choice of `k`-subsets per area.
/// Returns (node weights, edge weights in row-major `a < b` order).
pub fn brute_force_expectation(g: &ArticleGraph, k: usize) -> (Vec<f64>, Vec<f64>) {
    let m = g.n_areas();
    let mut pair_slot = vec![vec![usize::MAX; m]; m];
    let mut slot = 0;
    for a in 0..m {
        for b in a + 1..m {
            pair_slot[a][b] = slot;
            pair_slot[b][a] = slot;
            slot += 1;
        }
    }
    let area_of = |v: u32| (0..m).find(|&a| g.area_range(a).contains(&(v as usize))).unwrap();

    let per_area: Vec<Vec<Vec<u32>>> = (0..m)
        .map(|a| g.area_range(a).map(|v| v as u32).combinations(k).collect())
        .collect();

    let mut node_sum = vec![0u64; m];
    let mut edge_sum = vec![0u64; slot];
    let mut samples = 0u64;
    for joint in per_area.iter().map(|c| c.iter()).multi_cartesian_product() {
        let chosen: HashSet<u32> = joint.into_iter().flatten().copied().collect();
        for &(u, v) in g.edges() {
            if chosen.contains(&u) && chosen.contains(&v) {
                let (a, b) = (area_of(u), area_of(v));
                if a == b {
                    node_sum[a] += 1;
                } else {
                    edge_sum[pair_slot[a][b]] += 1;
                }
            }
        }
        samples += 1;
    }
    let s = samples as f64;
    (
        node_sum.iter().map(|&x| x as f64 / s).collect(),
        edge_sum.iter().map(|&x| x as f64 / s).collect(),
    )
}

/// Decode a Prüfer sequence over `n` labelled vertices into tree edges.
pub fn prufer_tree(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Maximum total weight over all `n^(n−2)` spanning trees of a complete
/// graph with symmetric weight matrix `w`.
pub fn brute_force_max_spanning_weight(w: &[Vec<f64>]) -> f64 {
    let n = w.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return w[0][1];
    }
    std::iter::repeat(0..n)
        .take(n - 2)
        .multi_cartesian_product()
        .map(|seq| prufer_tree(&seq, n).iter().map(|&(a, b)| w[a][b]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
}
