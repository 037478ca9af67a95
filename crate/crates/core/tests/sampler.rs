mod common;

use std::collections::HashSet;

use knowledge_net::graph::{edge_census, pairs};
use knowledge_net::sampler::{
    exact_expectation, monte_carlo_estimate, monte_carlo_run, round_seed, sample_round, sample_round_full,
    sample_vertices, with_threads,
};
use knowledge_net::{ArticleGraph, SampleConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

#[test]
fn closed_form_matches_enumeration_on_hand_graphs() {
    // single external edge, n_A = n_B = 4, k = 2: C(4,2)² = 36 joint samples
    let g = ArticleGraph::from_edges(names(2), &[4, 4], None, [(0, 4)]).unwrap();
    let (node, edge) = brute_force_expectation(&g, 2);
    assert_eq!(edge, vec![0.25]);
    assert_eq!(node, vec![0.0, 0.0]);
    assert_eq!(exact_expectation(&g, 2, false).unwrap().edge_weight(0, 1), 0.25);

    // single internal edge, n_A = 4, k = 2
    let g = ArticleGraph::from_edges(names(2), &[4, 4], None, [(0, 1)]).unwrap();
    let (node, _) = brute_force_expectation(&g, 2);
    assert!((node[0] - 1.0 / 6.0).abs() < 1e-15);
}

#[test]
fn oracle_equivalence_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for case in 0..60 {
        let k = 1 + case % 3;
        let g = random_small_graph(&mut rng, 12, 3, k);
        let (node, edge) = brute_force_expectation(&g, k);
        let exact = exact_expectation(&g, k, false).unwrap();
        for (a, w) in node.iter().enumerate() {
            assert!((exact.node_weight(a) - w).abs() <= 1e-12, "case {case} node {a}");
        }
        for (i, w) in edge.iter().enumerate() {
            assert!((exact.edge_weights()[i] - w).abs() <= 1e-12, "case {case} pair {i}");
        }
    }
}

#[test]
fn induced_subgraph_recount() {
    // 2 areas of size 4, k = 2
    let g = ArticleGraph::from_edges(
        names(2),
        &[4, 4],
        None,
        [
            (0, 1),
            (0, 2),
            (1, 3),
            (2, 3),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
            (4, 5),
            (6, 7),
            (1, 6),
        ],
    )
    .unwrap();
    for seed in [0u64, 1, 42, 9_999] {
        let chosen = sample_vertices(&g, 2, seed).unwrap();
        let counts = sample_round(&g, 2, seed).unwrap();
        assert_eq!(chosen.len(), 2);
        for (a, vs) in chosen.iter().enumerate() {
            assert_eq!(vs.len(), 2);
            assert!(vs.iter().all(|&v| g.area_range(a).contains(&(v as usize))));
        }
        let set: HashSet<u32> = chosen.iter().flatten().copied().collect();
        let (mut in0, mut in1, mut ext) = (0, 0, 0);
        for &(u, v) in g.edges() {
            if set.contains(&u) && set.contains(&v) {
                match (u < 4, v < 4) {
                    (true, true) => in0 += 1,
                    (false, false) => in1 += 1,
                    _ => ext += 1,
                }
            }
        }
        assert_eq!(counts.internal, vec![in0, in1], "seed {seed}");
        assert_eq!(counts.external, vec![ext], "seed {seed}");
    }
}

#[test]
fn sampling_is_uniform_within_area() {
    // each vertex of a 5-vertex area is drawn with probability k/n = 2/5
    let g = ArticleGraph::from_edges(names(1), &[5], None, []).unwrap();
    let rounds = 20_000u64;
    let mut hits = [0u64; 5];
    for r in 0..rounds {
        for &v in &sample_vertices(&g, 2, round_seed(3, r)).unwrap()[0] {
            hits[v as usize] += 1;
        }
    }
    let expected = rounds as f64 * 0.4;
    let sd = (rounds as f64 * 0.4 * 0.6).sqrt();
    for h in hits {
        assert!((h as f64 - expected).abs() < 4.0 * sd, "{hits:?}");
    }
}

#[test]
fn full_round_equals_census_on_fixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut graphs = vec![sbm_fixture()];
    for _ in 0..20 {
        graphs.push(random_small_graph(&mut rng, 30, 4, 1));
    }
    for g in &graphs {
        assert_eq!(sample_round_full(g, 77), edge_census(g));
    }
}

#[test]
fn estimate_is_independent_of_thread_count() {
    let g = sbm_fixture();
    let cfg = SampleConfig {
        k: 10,
        rounds: 3_000,
        seed: 31,
        normalize: true,
    };
    let reference = with_threads(1, || monte_carlo_estimate(&g, &cfg)).unwrap().unwrap();
    for threads in [2, 3, 8] {
        let other = with_threads(threads, || monte_carlo_estimate(&g, &cfg))
            .unwrap()
            .unwrap();
        assert_eq!(
            reference.to_json().unwrap(),
            other.to_json().unwrap(),
            "threads={threads}"
        );
    }
}

#[test]
fn error_shrinks_like_inverse_sqrt_rounds() {
    let g = sbm_fixture();
    let exact = exact_expectation(&g, 10, false).unwrap();
    let mut worst_scaled = Vec::new();
    let mut mean_abs = Vec::new();
    for rounds in [100usize, 10_000] {
        let run = monte_carlo_run(
            &g,
            &SampleConfig {
                k: 10,
                rounds,
                seed: 8,
                normalize: false,
            },
        )
        .unwrap();
        let errs: Vec<f64> = run
            .mean
            .node_weights()
            .iter()
            .chain(run.mean.edge_weights())
            .zip(exact.node_weights().iter().chain(exact.edge_weights()))
            .map(|(a, b)| (a - b).abs())
            .collect();
        // per-round spread is R-independent, so |err|·√R stays bounded
        worst_scaled.push(errs.iter().cloned().fold(0.0, f64::max) * (rounds as f64).sqrt());
        mean_abs.push(errs.iter().sum::<f64>() / errs.len() as f64);
    }
    assert!(mean_abs[1] < mean_abs[0] / 3.0, "{mean_abs:?}");
    assert!(worst_scaled[1] < 4.0 * worst_scaled[0].max(1.0), "{worst_scaled:?}");
}

#[test]
fn normalized_expectation_is_k_invariant() {
    let g = sbm_fixture();
    let base = exact_expectation(&g, 2, true).unwrap();
    for k in [3, 4, 10, 49] {
        let other = exact_expectation(&g, k, true).unwrap();
        for (x, y) in base.node_weights().iter().zip(other.node_weights()) {
            assert!((x - y).abs() < 1e-12);
        }
        for (x, y) in base.edge_weights().iter().zip(other.edge_weights()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn monte_carlo_agrees_across_k() {
    let g = sbm_fixture();
    let exact = exact_expectation(&g, 2, true).unwrap();
    for k in [2, 3, 4] {
        let est = monte_carlo_estimate(
            &g,
            &SampleConfig {
                k,
                rounds: 40_000,
                seed: 100 + k as u64,
                normalize: true,
            },
        )
        .unwrap();
        for (x, y) in est.edge_weights().iter().zip(exact.edge_weights()) {
            assert!((x - y).abs() < 0.02, "k={k}: {x} vs {y}");
        }
        for (x, y) in est.node_weights().iter().zip(exact.node_weights()) {
            assert!((x - y).abs() < 0.03, "k={k}: {x} vs {y}");
        }
    }
}

#[test]
fn expected_internal_total_is_conserved() {
    let g = sbm_fixture();
    let census = edge_census(&g);
    for k in [2usize, 5, 10] {
        let exact = exact_expectation(&g, k, false).unwrap();
        let want: f64 = (0..g.n_areas())
            .map(|a| {
                let n = g.area_size(a) as f64;
                census.internal[a] as f64 * (k * (k - 1)) as f64 / (n * (n - 1.0))
            })
            .sum();
        assert!((exact.total_node_weight() - want).abs() < 1e-9);
    }
}

#[test]
fn k_one_has_no_internal_weight() {
    let g = sbm_fixture();
    let e = exact_expectation(&g, 1, false).unwrap();
    assert!(e.node_weights().iter().all(|&w| w == 0.0));
    let c = sample_round(&g, 1, 3).unwrap();
    assert!(c.internal.iter().all(|&w| w == 0));
}

#[test]
fn normalized_output_sums_to_one() {
    let g = sbm_fixture();
    let est = monte_carlo_estimate(
        &g,
        &SampleConfig {
            k: 10,
            rounds: 500,
            seed: 1,
            normalize: true,
        },
    )
    .unwrap();
    assert!((est.total_node_weight() - 1.0).abs() < 1e-9);
    assert!((est.total_edge_weight() - 1.0).abs() < 1e-9);
    assert!(est.is_normalized());
    assert_eq!(pairs(3).count(), est.edge_weights().len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_equivalence_property(seed in any::<u64>(), k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_small_graph(&mut rng, 12, 3, k);
        let (node, edge) = brute_force_expectation(&g, k);
        let exact = exact_expectation(&g, k, false).unwrap();
        for (x, y) in exact.node_weights().iter().chain(exact.edge_weights()).zip(node.iter().chain(&edge)) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn same_seed_same_estimate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_small_graph(&mut rng, 20, 3, 2);
        let cfg = SampleConfig { k: 2, rounds: 50, seed, normalize: false };
        prop_assert_eq!(monte_carlo_estimate(&g, &cfg).unwrap(), monte_carlo_estimate(&g, &cfg).unwrap());
    }
}
