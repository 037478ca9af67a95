//! Planted-partition (stochastic block model) article graphs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ArticleGraph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SbmSpec {
    /// Vertices per block.
    pub sizes: Vec<usize>,
    /// Symmetric block edge probabilities.
    pub p: Vec<Vec<f64>>,
    pub seed: u64,
    /// Block names; defaults to `A0, A1, ...`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl SbmSpec {
    /// Blocks of the given sizes with `p_in` on the diagonal and `p_out`
    /// elsewhere.
    pub fn planted(sizes: Vec<usize>, p_in: f64, p_out: f64, seed: u64) -> Self {
        let m = sizes.len();
        let p = (0..m)
            .map(|a| (0..m).map(|b| if a == b { p_in } else { p_out }).collect())
            .collect();
        SbmSpec {
            sizes,
            p,
            seed,
            names: None,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        SbmSpec { seed, ..self.clone() }
    }

    pub fn area_names(&self) -> Vec<String> {
        self.names
            .clone()
            .unwrap_or_else(|| (0..self.sizes.len()).map(|i| format!("A{i}")).collect())
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.sizes.len();
        if m == 0 {
            return Err(Error::InvalidSbm("no blocks".into()));
        }
        if let Some(i) = self.sizes.iter().position(|&s| s < 2) {
            return Err(Error::InvalidSbm(format!("block {i} has fewer than 2 vertices")));
        }
        if self.p.len() != m || self.p.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidSbm(format!("probability matrix must be {m}x{m}")));
        }
        for a in 0..m {
            for b in 0..m {
                let x = self.p[a][b];
                if !(0.0..=1.0).contains(&x) {
                    return Err(Error::InvalidSbm(format!("p[{a}][{b}] = {x} outside [0, 1]")));
                }
                if x != self.p[b][a] {
                    return Err(Error::InvalidSbm(format!("p[{a}][{b}] != p[{b}][{a}]")));
                }
            }
        }
        if let Some(names) = &self.names {
            if names.len() != m {
                return Err(Error::InvalidSbm("names and sizes differ in length".into()));
            }
            if names
                .iter()
                .any(|n| n.is_empty() || n.contains(['\t', ';', '\n', '\r']))
            {
                return Err(Error::InvalidSbm(
                    "block names must be non-empty without tabs, `;` or newlines".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SbmSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Expected edge count inside block `a` (`a == b`) or between `a` and `b`.
    pub fn expected_edges(&self, a: usize, b: usize) -> f64 {
        let (na, nb) = (self.sizes[a] as f64, self.sizes[b] as f64);
        if a == b {
            self.p[a][a] * na * (na - 1.0) / 2.0
        } else {
            self.p[a][b] * na * nb
        }
    }
}

/// Draw every vertex pair independently with its block probability.
pub fn generate_sbm(spec: &SbmSpec) -> Result<ArticleGraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let block: Vec<usize> = spec
        .sizes
        .iter()
        .enumerate()
        .flat_map(|(a, &s)| std::iter::repeat_n(a, s))
        .collect();
    let n = block.len() as u32;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(spec.p[block[u as usize]][block[v as usize]]) {
                edges.push((u, v));
            }
        }
    }
    ArticleGraph::from_edges(spec.area_names(), &spec.sizes, None, edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFiles {
    pub articles: PathBuf,
    pub categories: PathBuf,
    pub links: PathBuf,
}

/// Render a graph as the TSV article, category and link files read by
/// ingestion. Each area becomes a root category of its own articles.
pub fn corpus_tsv(g: &ArticleGraph) -> (String, String, String) {
    let mut articles = String::new();
    for v in 0..g.n() as u32 {
        let _ = writeln!(articles, "{}\t{}", g.title(v), g.area_names()[g.area_of(v)]);
    }
    let mut categories = String::new();
    for name in g.area_names() {
        let _ = writeln!(categories, "{name}");
    }
    let mut links = String::new();
    for &(u, v) in g.edges() {
        let _ = writeln!(links, "{}\t{}", g.title(u), g.title(v));
    }
    (articles, categories, links)
}

pub fn write_corpus(g: &ArticleGraph, dir: &Path) -> Result<CorpusFiles> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let files = CorpusFiles {
        articles: dir.join("articles.tsv"),
        categories: dir.join("categories.tsv"),
        links: dir.join("links.tsv"),
    };
    let (articles, categories, links) = corpus_tsv(g);
    for (path, body) in [
        (&files.articles, articles),
        (&files.categories, categories),
        (&files.links, links),
    ] {
        fs::write(path, body).map_err(|e| Error::io(path, e))?;
    }
    Ok(files)
}
