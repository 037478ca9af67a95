//! Size normalization by sampling.
//!
//! One round draws `k` vertices uniformly without replacement from every
//! area, independently across areas, and collapses the induced subgraph onto
//! area-level counts: edges inside an area become that area's node weight,
//! edges between two areas become the weight of the connecting edge. Rounds
//! are averaged; normalization then divides node weights by their total and
//! edge weights by theirs.
//!
//! Round `r` draws from ChaCha8 seeded with [`round_seed`]`(master, r)`, and
//! per-round counts are integers summed exactly, so the estimate is
//! bit-identical for any worker count or scheduling.
//!
//! [`exact_expectation`] gives the `R → ∞` limit in closed form: an external
//! edge between `A` and `B` survives a round with probability
//! `k²/(n_A n_B)`, an internal edge of `A` with `k(k−1)/(n_A(n_A−1))`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_census, graphml_escape, pair_count, pair_index, pairs, AreaCounts, ArticleGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    /// Vertices drawn per area per round.
    pub k: usize,
    pub rounds: usize,
    pub seed: u64,
    #[serde(default = "default_true")]
    pub normalize: bool,
}

fn default_true() -> bool {
    true
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            k: 200,
            rounds: 10_000,
            seed: 0,
            normalize: true,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self, g: &ArticleGraph) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidSampleConfig("rounds must be at least 1".into()));
        }
        check_k(g, self.k)
    }
}

fn check_k(g: &ArticleGraph, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidSampleConfig("k must be at least 1".into()));
    }
    if g.n_areas() == 0 {
        return Err(Error::InvalidSampleConfig("graph has no areas".into()));
    }
    for a in 0..g.n_areas() {
        if k >= g.area_size(a) {
            return Err(Error::SampleTooLarge {
                area: g.area_names()[a].clone(),
                size: g.area_size(a),
                k,
            });
        }
    }
    Ok(())
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for round `round` of a run with master seed `master`.
pub fn round_seed(master: u64, round: u64) -> u64 {
    splitmix64(master ^ splitmix64(round))
}

#[derive(Clone)]
struct Scratch {
    selected: Vec<bool>,
    chosen: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            selected: vec![false; n],
            chosen: Vec::new(),
        }
    }
}

/// Append the round's chosen vertices to `out`, area by area.
fn select(g: &ArticleGraph, per_area: &[usize], seed: u64, out: &mut Vec<u32>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (a, &k) in per_area.iter().enumerate() {
        let range = g.area_range(a);
        let base = range.start as u32;
        out.extend(
            index::sample(&mut rng, range.len(), k)
                .into_iter()
                .map(|i| base + i as u32),
        );
    }
}

fn draw(g: &ArticleGraph, per_area: &[usize], seed: u64, scratch: &mut Scratch) -> AreaCounts {
    scratch.chosen.clear();
    select(g, per_area, seed, &mut scratch.chosen);
    for &v in &scratch.chosen {
        scratch.selected[v as usize] = true;
    }

    let mut counts = AreaCounts::zeros(g.n_areas());
    for &u in &scratch.chosen {
        let au = g.area_of(u);
        for &v in g.neighbors(u) {
            if v > u && scratch.selected[v as usize] {
                counts.record(au, g.area_of(v));
            }
        }
    }
    for &u in &scratch.chosen {
        scratch.selected[u as usize] = false;
    }
    counts
}

/// Raw counts of one sampling round with `k` vertices per area.
pub fn sample_round(g: &ArticleGraph, k: usize, round_seed: u64) -> Result<AreaCounts> {
    check_k(g, k)?;
    let per_area = vec![k; g.n_areas()];
    Ok(draw(g, &per_area, round_seed, &mut Scratch::new(g.n())))
}

/// The vertices a [`sample_round`] with the same arguments draws, grouped
/// by area.
pub fn sample_vertices(g: &ArticleGraph, k: usize, round_seed: u64) -> Result<Vec<Vec<u32>>> {
    check_k(g, k)?;
    let mut all = Vec::with_capacity(k * g.n_areas());
    select(g, &vec![k; g.n_areas()], round_seed, &mut all);
    Ok(all.chunks(k).map(<[u32]>::to_vec).collect())
}

/// Degenerate round that takes every vertex of every area (`k = n_A`).
///
/// Bypasses the `k < n_A` precondition; its counts must equal
/// [`edge_census`]. Exists for testing the collapse.
pub fn sample_round_full(g: &ArticleGraph, round_seed: u64) -> AreaCounts {
    draw(g, &g.area_sizes(), round_seed, &mut Scratch::new(g.n()))
}

/// Area-level weighted graph.
#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeNetwork {
    areas: Vec<String>,
    node_weight: Vec<f64>,
    edge_weight: Vec<f64>,
    normalized: bool,
    pub meta: NetworkMeta,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkMeta {
    pub k: Option<usize>,
    pub rounds: Option<usize>,
    pub seed: Option<u64>,
}

impl KnowledgeNetwork {
    /// Build from node weights and edge weights in [`pair_index`] order.
    pub fn new(areas: Vec<String>, node_weight: Vec<f64>, edge_weight: Vec<f64>) -> Result<Self> {
        let m = areas.len();
        if node_weight.len() != m || edge_weight.len() != pair_count(m) {
            return Err(Error::Invariant("weight vectors do not match area count".into()));
        }
        if node_weight
            .iter()
            .chain(&edge_weight)
            .any(|w| !(w.is_finite() && *w >= 0.0))
        {
            return Err(Error::Invariant("weights must be finite and non-negative".into()));
        }
        Ok(KnowledgeNetwork {
            areas,
            node_weight,
            edge_weight,
            normalized: false,
            meta: NetworkMeta::default(),
        })
    }

    /// Build from explicit `(a, b, w)` triples; unlisted pairs get weight 0.
    pub fn from_pairs(areas: Vec<String>, node_weight: Vec<f64>, edges: &[(&str, &str, f64)]) -> Result<Self> {
        let m = areas.len();
        let mut edge_weight = vec![0.0; pair_count(m)];
        let idx = |name: &str| {
            areas
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| Error::UnknownArea(name.to_owned()))
        };
        for &(a, b, w) in edges {
            let (ia, ib) = (idx(a)?, idx(b)?);
            if ia == ib {
                return Err(Error::Invariant(format!("self edge on {a:?}")));
            }
            edge_weight[pair_index(ia, ib, m)] = w;
        }
        Self::new(areas, node_weight, edge_weight)
    }

    pub fn from_counts(areas: Vec<String>, counts: &AreaCounts) -> Result<Self> {
        Self::new(
            areas,
            counts.internal.iter().map(|&c| c as f64).collect(),
            counts.external.iter().map(|&c| c as f64).collect(),
        )
    }

    pub fn areas(&self) -> &[String] {
        &self.areas
    }

    pub fn n_areas(&self) -> usize {
        self.areas.len()
    }

    pub fn area_index(&self, name: &str) -> Option<usize> {
        self.areas.iter().position(|a| a == name)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn node_weight(&self, a: usize) -> f64 {
        self.node_weight[a]
    }

    pub fn node_weights(&self) -> &[f64] {
        &self.node_weight
    }

    /// Weight of the edge `{a, b}`; zero for `a == b`.
    pub fn edge_weight(&self, a: usize, b: usize) -> f64 {
        if a == b {
            0.0
        } else {
            self.edge_weight[pair_index(a, b, self.n_areas())]
        }
    }

    /// Edge weights in [`pair_index`] order.
    pub fn edge_weights(&self) -> &[f64] {
        &self.edge_weight
    }

    /// `(a, b, w)` for every pair `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        pairs(self.n_areas())
            .zip(&self.edge_weight)
            .map(|((a, b), &w)| (a, b, w))
    }

    pub fn total_node_weight(&self) -> f64 {
        self.node_weight.iter().sum()
    }

    pub fn total_edge_weight(&self) -> f64 {
        self.edge_weight.iter().sum()
    }

    /// Total external weight incident to `a`.
    pub fn external_weight(&self, a: usize) -> f64 {
        (0..self.n_areas())
            .filter(|&b| b != a)
            .map(|b| self.edge_weight(a, b))
            .sum()
    }

    /// Divide node weights by their total and edge weights by theirs.
    pub fn normalize(&self) -> Result<Self> {
        let tn = self.total_node_weight();
        let te = self.total_edge_weight();
        if tn <= 0.0 && te <= 0.0 {
            return Err(Error::ZeroTotalWeight("node and edge"));
        }
        if tn <= 0.0 {
            return Err(Error::ZeroTotalWeight("node"));
        }
        if te <= 0.0 && self.n_areas() > 1 {
            return Err(Error::ZeroTotalWeight("edge"));
        }
        let scale = |ws: &[f64], t: f64| ws.iter().map(|w| if t > 0.0 { w / t } else { 0.0 }).collect();
        Ok(KnowledgeNetwork {
            areas: self.areas.clone(),
            node_weight: scale(&self.node_weight, tn),
            edge_weight: scale(&self.edge_weight, te),
            normalized: true,
            meta: self.meta,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let file = NetworkFile {
            schema_version: NETWORK_SCHEMA_VERSION,
            areas: self.areas.clone(),
            node_weights: self
                .areas
                .iter()
                .cloned()
                .zip(self.node_weight.iter().copied())
                .collect(),
            edge_weights: self
                .edges()
                .map(|(a, b, w)| EdgeRecord {
                    a: self.areas[a].clone(),
                    b: self.areas[b].clone(),
                    w,
                })
                .collect(),
            meta: MetaRecord {
                k: self.meta.k,
                rounds: self.meta.rounds,
                seed: self.meta.seed,
                normalized: self.normalized,
            },
        };
        let mut s = serde_json::to_string_pretty(&file)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: NetworkFile = serde_json::from_str(text)?;
        if file.schema_version != NETWORK_SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "knowledge network schema version {} (expected {NETWORK_SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        let node_weight = file
            .areas
            .iter()
            .map(|a| {
                file.node_weights
                    .get(a)
                    .copied()
                    .ok_or_else(|| Error::UnknownArea(a.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let edges: Vec<(&str, &str, f64)> = file
            .edge_weights
            .iter()
            .map(|e| (e.a.as_str(), e.b.as_str(), e.w))
            .collect();
        let mut net = Self::from_pairs(file.areas.clone(), node_weight, &edges)?;
        net.normalized = file.meta.normalized;
        net.meta = NetworkMeta {
            k: file.meta.k,
            rounds: file.meta.rounds,
            seed: file.meta.seed,
        };
        Ok(net)
    }

    /// `source,target,weight` edge list.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,target,weight\n");
        for (a, b, w) in self.edges() {
            let _ = writeln!(out, "{},{},{}", csv_field(&self.areas[a]), csv_field(&self.areas[b]), w);
        }
        out
    }

    pub fn to_graphml(&self) -> String {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
        out.push_str("  <key id=\"internal\" for=\"node\" attr.name=\"weight\" attr.type=\"double\"/>\n");
        out.push_str("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n");
        let _ = writeln!(
            out,
            "  <graph id=\"knowledge\" edgedefault=\"undirected\" normalized=\"{}\">",
            self.normalized
        );
        for (a, name) in self.areas.iter().enumerate() {
            let _ = writeln!(
                out,
                "    <node id=\"{}\"><data key=\"internal\">{}</data></node>",
                graphml_escape(name),
                self.node_weight[a]
            );
        }
        for (a, b, w) in self.edges() {
            let _ = writeln!(
                out,
                "    <edge source=\"{}\" target=\"{}\"><data key=\"weight\">{w}</data></edge>",
                graphml_escape(&self.areas[a]),
                graphml_escape(&self.areas[b])
            );
        }
        out.push_str("  </graph>\n</graphml>\n");
        out
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub const NETWORK_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    schema_version: u32,
    areas: Vec<String>,
    node_weights: BTreeMap<String, f64>,
    edge_weights: Vec<EdgeRecord>,
    meta: MetaRecord,
}

#[derive(Serialize, Deserialize)]
struct EdgeRecord {
    a: String,
    b: String,
    w: f64,
}

#[derive(Serialize, Deserialize)]
struct MetaRecord {
    k: Option<usize>,
    rounds: Option<usize>,
    seed: Option<u64>,
    normalized: bool,
}

/// Full output of a Monte Carlo run.
#[derive(Debug, Clone)]
pub struct MonteCarloRun {
    /// Unnormalized per-round averages.
    pub mean: KnowledgeNetwork,
    /// Standard error of each averaged node weight.
    pub node_std_error: Vec<f64>,
    /// Standard error of each averaged edge weight, in pair order.
    pub edge_std_error: Vec<f64>,
    /// `mean`, normalized if the config asked for it.
    pub network: KnowledgeNetwork,
}

#[derive(Clone)]
struct Accumulator {
    sum: Vec<u64>,
    sum_sq: Vec<u128>,
}

impl Accumulator {
    fn zeros(len: usize) -> Self {
        Accumulator {
            sum: vec![0; len],
            sum_sq: vec![0; len],
        }
    }

    fn add_counts(mut self, c: &AreaCounts) -> Self {
        for (i, &x) in c.internal.iter().chain(&c.external).enumerate() {
            self.sum[i] += x;
            self.sum_sq[i] += (x as u128) * (x as u128);
        }
        self
    }

    fn merge(mut self, other: Self) -> Self {
        for i in 0..self.sum.len() {
            self.sum[i] += other.sum[i];
            self.sum_sq[i] += other.sum_sq[i];
        }
        self
    }
}

/// Run all rounds on the current rayon pool and return means, standard
/// errors and the (optionally normalized) network.
pub fn monte_carlo_run(g: &ArticleGraph, cfg: &SampleConfig) -> Result<MonteCarloRun> {
    cfg.validate(g)?;
    let m = g.n_areas();
    let len = m + pair_count(m);
    let per_area = vec![cfg.k; m];

    let acc = (0..cfg.rounds as u64)
        .into_par_iter()
        .fold_with((Accumulator::zeros(len), None::<Scratch>), |(acc, scratch), r| {
            let mut scratch = scratch.unwrap_or_else(|| Scratch::new(g.n()));
            let counts = draw(g, &per_area, round_seed(cfg.seed, r), &mut scratch);
            (acc.add_counts(&counts), Some(scratch))
        })
        .map(|(acc, _)| acc)
        .reduce(|| Accumulator::zeros(len), Accumulator::merge);

    let r = cfg.rounds as f64;
    let rounds = cfg.rounds as u128;
    let mean: Vec<f64> = acc.sum.iter().map(|&s| s as f64 / r).collect();
    let std_error: Vec<f64> = acc
        .sum
        .iter()
        .zip(&acc.sum_sq)
        .map(|(&s, &sq)| {
            if cfg.rounds < 2 {
                return f64::NAN;
            }
            // R·Σx² − (Σx)² is exact in integers.
            let num = rounds * sq - (s as u128) * (s as u128);
            let var = num as f64 / (r * (r - 1.0));
            (var / r).sqrt()
        })
        .collect();

    let mut mean_net = KnowledgeNetwork::new(g.area_names().to_vec(), mean[..m].to_vec(), mean[m..].to_vec())?;
    mean_net.meta = NetworkMeta {
        k: Some(cfg.k),
        rounds: Some(cfg.rounds),
        seed: Some(cfg.seed),
    };
    let network = if cfg.normalize {
        mean_net.normalize()?
    } else {
        mean_net.clone()
    };
    Ok(MonteCarloRun {
        node_std_error: std_error[..m].to_vec(),
        edge_std_error: std_error[m..].to_vec(),
        mean: mean_net,
        network,
    })
}

/// Average `cfg.rounds` sampling rounds, normalizing if `cfg.normalize`.
pub fn monte_carlo_estimate(g: &ArticleGraph, cfg: &SampleConfig) -> Result<KnowledgeNetwork> {
    monte_carlo_run(g, cfg).map(|run| run.network)
}

/// Run `f` on a dedicated pool with `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Exact expected value of [`monte_carlo_estimate`] as rounds → ∞.
pub fn exact_expectation(g: &ArticleGraph, k: usize, normalize: bool) -> Result<KnowledgeNetwork> {
    check_k(g, k)?;
    let census = edge_census(g);
    let m = g.n_areas();
    let kf = k as f64;
    let node: Vec<f64> = (0..m)
        .map(|a| {
            let n = g.area_size(a) as f64;
            census.internal[a] as f64 * (kf * (kf - 1.0)) / (n * (n - 1.0))
        })
        .collect();
    let edge: Vec<f64> = pairs(m)
        .map(|(a, b)| {
            let (na, nb) = (g.area_size(a) as f64, g.area_size(b) as f64);
            census.external(a, b) as f64 * (kf / na) * (kf / nb)
        })
        .collect();
    let mut net = KnowledgeNetwork::new(g.area_names().to_vec(), node, edge)?;
    net.meta.k = Some(k);
    if normalize {
        net.normalize()
    } else {
        Ok(net)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(m: usize) -> Vec<String> {
        (0..m).map(|i| format!("A{i}")).collect()
    }

    #[test]
    fn k_at_area_size_is_rejected_with_area_name() {
        let g = ArticleGraph::from_edges(names(2), &[4, 3], None, [(0, 4)]).unwrap();
        let err = sample_round(&g, 3, 1).unwrap_err();
        assert!(matches!(err, Error::SampleTooLarge { ref area, size: 3, k: 3 } if area == "A1"));
        assert!(sample_round(&g, 0, 1).is_err());
    }

    #[test]
    fn zero_external_edges_give_zero_pairs() {
        let g = ArticleGraph::from_edges(names(2), &[5, 5], None, [(0, 1), (1, 2), (5, 6)]).unwrap();
        for s in 0..20 {
            let c = sample_round(&g, 3, s).unwrap();
            assert_eq!(c.external, vec![0]);
        }
    }

    #[test]
    fn round_is_deterministic_in_seed() {
        let edges: Vec<(u32, u32)> = (0..30)
            .flat_map(|u| (u + 1..30).filter(move |v| (u * v) % 7 == 1).map(move |v| (u, v)))
            .collect();
        let g = ArticleGraph::from_edges(names(3), &[10, 10, 10], None, edges).unwrap();
        assert_eq!(sample_round(&g, 4, 99).unwrap(), sample_round(&g, 4, 99).unwrap());
    }

    #[test]
    fn full_round_matches_census() {
        let g = ArticleGraph::from_edges(names(2), &[3, 2], None, [(0, 1), (0, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(sample_round_full(&g, 5), edge_census(&g));
    }

    #[test]
    fn single_round_equals_sample_round() {
        let g = ArticleGraph::from_edges(names(2), &[4, 4], None, [(0, 1), (0, 4), (1, 5), (2, 7), (6, 7)]).unwrap();
        let cfg = SampleConfig {
            k: 2,
            rounds: 1,
            seed: 17,
            normalize: false,
        };
        let est = monte_carlo_estimate(&g, &cfg).unwrap();
        let counts = sample_round(&g, 2, round_seed(17, 0)).unwrap();
        let expected = KnowledgeNetwork::from_counts(names(2), &counts).unwrap();
        assert_eq!(est.node_weights(), expected.node_weights());
        assert_eq!(est.edge_weights(), expected.edge_weights());
    }

    #[test]
    fn closed_form_small_cases() {
        // one external edge, n_A = n_B = 4, k = 2
        let g = ArticleGraph::from_edges(names(2), &[4, 4], None, [(0, 4)]).unwrap();
        let e = exact_expectation(&g, 2, false).unwrap();
        assert!((e.edge_weight(0, 1) - 0.25).abs() < 1e-15);

        // one internal edge, n_A = 4, k = 2
        let g = ArticleGraph::from_edges(names(2), &[4, 4], None, [(0, 1)]).unwrap();
        let e = exact_expectation(&g, 2, false).unwrap();
        assert!((e.node_weight(0) - 1.0 / 6.0).abs() < 1e-15);

        let e = exact_expectation(&g, 1, false).unwrap();
        assert_eq!(e.node_weights(), &[0.0, 0.0]);
    }

    #[test]
    fn normalization_sums_to_one_separately() {
        let net = KnowledgeNetwork::new(names(3), vec![1.0, 2.0, 5.0], vec![3.0, 0.0, 1.0]).unwrap();
        let n = net.normalize().unwrap();
        assert!((n.total_node_weight() - 1.0).abs() < 1e-12);
        assert!((n.total_edge_weight() - 1.0).abs() < 1e-12);
        assert!(n.is_normalized());
    }

    #[test]
    fn all_zero_network_cannot_normalize() {
        let net = KnowledgeNetwork::new(names(2), vec![0.0, 0.0], vec![0.0]).unwrap();
        assert!(matches!(net.normalize(), Err(Error::ZeroTotalWeight(_))));
    }

    #[test]
    fn json_round_trip() {
        let mut net = KnowledgeNetwork::new(names(3), vec![0.5, 0.25, 0.25], vec![0.1, 0.6, 0.3]).unwrap();
        net.meta = NetworkMeta {
            k: Some(3),
            rounds: Some(10),
            seed: Some(u64::MAX),
        };
        let back = KnowledgeNetwork::from_json(&net.to_json().unwrap()).unwrap();
        assert_eq!(back, net);
    }

    #[test]
    fn zero_rounds_rejected() {
        let g = ArticleGraph::from_edges(names(1), &[4], None, [(0, 1)]).unwrap();
        let cfg = SampleConfig {
            k: 2,
            rounds: 0,
            seed: 0,
            normalize: false,
        };
        assert!(monte_carlo_estimate(&g, &cfg).is_err());
    }

    #[test]
    fn round_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..1000).map(|r| round_seed(7, r)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_ne!(round_seed(7, 0), round_seed(8, 0));
    }
}
