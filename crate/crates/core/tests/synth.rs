mod common;

use knowledge_net::graph::{build_graph, edge_census, parse_links};
use knowledge_net::ingest::{assign_areas, expand_categories, parse_articles, ArticleFormat, CategoryTree};
use knowledge_net::synth::{generate_sbm, write_corpus, SbmSpec};
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn spec() -> SbmSpec {
    SbmSpec {
        sizes: vec![30, 20, 25],
        p: vec![vec![0.2, 0.05, 0.01], vec![0.05, 0.3, 0.02], vec![0.01, 0.02, 0.15]],
        seed: 0,
        names: None,
    }
}

fn block_pairs(s: &SbmSpec, a: usize, b: usize) -> f64 {
    let (na, nb) = (s.sizes[a] as f64, s.sizes[b] as f64);
    if a == b {
        na * (na - 1.0) / 2.0
    } else {
        na * nb
    }
}

fn observed(s: &SbmSpec, seeds: std::ops::Range<u64>) -> Vec<Vec<f64>> {
    let m = s.sizes.len();
    let mut obs = vec![vec![0.0; m]; m];
    for seed in seeds {
        let c = edge_census(&generate_sbm(&s.with_seed(seed)).unwrap());
        for a in 0..m {
            obs[a][a] += c.internal[a] as f64;
            for b in a + 1..m {
                obs[a][b] += c.external(a, b) as f64;
            }
        }
    }
    obs
}

#[test]
fn mean_block_counts_sit_within_three_sigma() {
    let s = spec();
    let seeds = 200u64;
    let obs = observed(&s, 0..seeds);
    for a in 0..3 {
        for b in a..3 {
            let p = s.p[a][b];
            let n = block_pairs(&s, a, b);
            let mean = obs[a][b] / seeds as f64;
            let sigma_of_mean = (n * p * (1.0 - p) / seeds as f64).sqrt();
            assert!(
                (mean - s.expected_edges(a, b)).abs() < 3.0 * sigma_of_mean,
                "block ({a},{b}): {mean} vs {}",
                s.expected_edges(a, b)
            );
        }
    }
}

#[test]
fn block_counts_pass_chi_square() {
    let s = spec();
    let seeds = 200u64;
    let obs = observed(&s, 1_000..1_000 + seeds);
    let mut stat = 0.0;
    let mut cells = 0;
    for a in 0..3 {
        for b in a..3 {
            let p = s.p[a][b];
            let trials = block_pairs(&s, a, b) * seeds as f64;
            let expected = trials * p;
            stat += (obs[a][b] - expected).powi(2) / (trials * p * (1.0 - p));
            cells += 1;
        }
    }
    let critical = ChiSquared::new(cells as f64).unwrap().inverse_cdf(1.0 - 0.001);
    assert!(stat < critical, "chi2 = {stat}, critical = {critical}");
}

#[test]
fn written_corpus_rebuilds_the_same_graph() {
    let g = generate_sbm(&SbmSpec::planted(vec![12, 9, 15], 0.4, 0.05, 77)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let files = write_corpus(&g, dir.path()).unwrap();

    let corpus = parse_articles(&files.articles, ArticleFormat::Tsv).unwrap();
    let tree = CategoryTree::parse(&files.categories).unwrap();
    let map = expand_categories(&tree, g.area_names(), 0).unwrap();
    let assignment = assign_areas(&corpus, &map, 1).unwrap();
    let (rebuilt, report) = build_graph(&assignment, &parse_links(&files.links).unwrap()).unwrap();

    assert_eq!(report.dropped_external, 0);
    assert_eq!(report.duplicates, 0);
    assert_eq!(rebuilt.edges(), g.edges());
    assert_eq!(rebuilt.area_sizes(), g.area_sizes());
    assert_eq!(edge_census(&rebuilt), edge_census(&g));
}
