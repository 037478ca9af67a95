mod common;

use std::collections::{BTreeSet, HashMap};
use std::fs;

use knowledge_net::graph::{build_graph, edge_census, from_binary, parse_links, to_binary, to_graphml};
use knowledge_net::ingest::{assign_areas, expand_categories, parse_articles, ArticleFormat, CategoryTree};
use knowledge_net::{AreaAssignment, ArticleGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn toy_assignment() -> AreaAssignment {
    let cfg: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(fixtures().join("toy/config.json")).unwrap()).unwrap();
    let roots: Vec<String> = cfg["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap().to_owned())
        .collect();
    let corpus = parse_articles(&fixtures().join("toy/articles.tsv"), ArticleFormat::Tsv).unwrap();
    let tree = CategoryTree::parse(&fixtures().join("toy/categories.tsv")).unwrap();
    assign_areas(&corpus, &expand_categories(&tree, &roots, 1).unwrap(), 21).unwrap()
}

#[test]
fn toy_edge_count_matches_recount() {
    let assignment = toy_assignment();
    let links = parse_links(&fixtures().join("toy/links.tsv")).unwrap();
    let (g, report) = build_graph(&assignment, &links).unwrap();

    // unordered distinct pairs of distinct assigned titles, read straight off the file
    let area: HashMap<&str, usize> = assignment.articles.iter().map(|a| (a.title.as_str(), a.area)).collect();
    let raw = fs::read_to_string(fixtures().join("toy/links.tsv")).unwrap();
    let mut pairs = BTreeSet::new();
    let mut internal = vec![0u64; assignment.areas.len()];
    for line in raw.lines().filter(|l| !l.starts_with('#')) {
        let (s, t) = line.split_once('\t').unwrap();
        if s != t && area.contains_key(s) && area.contains_key(t) {
            let key = if s < t { (s, t) } else { (t, s) };
            if pairs.insert(key) && area[s] == area[t] {
                internal[area[s]] += 1;
            }
        }
    }
    assert_eq!(g.edge_count(), pairs.len());
    assert_eq!(report.edges, pairs.len());
    assert_eq!(edge_census(&g).internal, internal);
    assert_eq!(g.n(), assignment.articles.len());
    assert_eq!(
        report.links_read,
        report.self_links + report.dropped_external + report.duplicates + report.edges
    );
}

#[test]
fn census_matches_brute_force_on_random_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let sizes = [17usize, 20, 13];
    let area = |v: u32| {
        if v < 17 {
            0
        } else if v < 37 {
            1
        } else {
            2
        }
    };
    let edges: Vec<(u32, u32)> = (0..50u32)
        .flat_map(|u| (u + 1..50).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.2))
        .collect();
    let g = ArticleGraph::from_edges(names(3), &sizes, None, edges.iter().copied()).unwrap();
    let mut internal = [0u64; 3];
    let mut external = [[0u64; 3]; 3];
    for &(u, v) in &edges {
        let (a, b) = (area(u), area(v));
        if a == b {
            internal[a] += 1;
        } else {
            external[a.min(b)][a.max(b)] += 1;
        }
    }
    let c = edge_census(&g);
    assert_eq!(c.internal, internal.to_vec());
    assert_eq!(c.external(0, 1), external[0][1]);
    assert_eq!(c.external(0, 2), external[0][2]);
    assert_eq!(c.external(1, 2), external[1][2]);
    assert_eq!(c.total() as usize, edges.len());
}

#[test]
fn graphml_lists_every_vertex_and_edge() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = random_small_graph(&mut rng, 25, 3, 2);
    let xml = to_graphml(&g);
    assert_eq!(xml.matches("<node ").count(), g.n());
    assert_eq!(xml.matches("<edge ").count(), g.edge_count());
}

#[test]
fn corrupt_binary_is_rejected() {
    let g = sbm_fixture();
    let buf = to_binary(&g);
    assert!(from_binary(&buf[..buf.len() - 3]).is_err());
    let mut bad = buf.clone();
    bad[0] = b'X';
    assert!(from_binary(&bad).is_err());
    assert!(from_binary(&[]).is_err());
}

proptest! {
    #[test]
    fn edge_order_and_duplication_do_not_matter(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sizes = vec![rng.gen_range(1..8), rng.gen_range(1..8)];
        let n = (sizes[0] + sizes[1]) as u32;
        let edges: Vec<(u32, u32)> = (0..rng.gen_range(0..40))
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let mut noisy: Vec<(u32, u32)> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        noisy.extend(edges.iter().take(5).copied());
        noisy.shuffle(&mut rng);
        let a = ArticleGraph::from_edges(names(2), &sizes, None, edges).unwrap();
        let b = ArticleGraph::from_edges(names(2), &sizes, None, noisy).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.edges().iter().all(|&(u, v)| u < v));
    }

    #[test]
    fn census_accounts_for_every_edge(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_small_graph(&mut rng, 40, 5, 0);
        let c = edge_census(&g);
        prop_assert_eq!(c.total() as usize, g.edge_count());
        let degree_sum: usize = (0..g.n() as u32).map(|v| g.neighbors(v).len()).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn binary_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_small_graph(&mut rng, 30, 4, 0);
        prop_assert_eq!(from_binary(&to_binary(&g)).unwrap(), g);
    }
}
