//! Pipeline orchestration behind the `knet` command.
//!
//! Configuration is a single JSON file (see [`PipelineConfig`]); relative
//! paths resolve against the file's directory. A manifest written by an
//! earlier run is also accepted as a config, which replays that run.
//!
//! Stage artifacts, all under the output directory:
//!
//! | command   | reads                          | writes |
//! |-----------|--------------------------------|--------|
//! | `ingest`  | articles, categories           | `census.json`, `assignment.json` |
//! | `build`   | `assignment.json`, links       | `graph.bin`, `graph.graphml`, `build_report.json` |
//! | `sample`  | `graph.bin`                    | `knowledge_network.json`, `knowledge_network_raw.json`, `.csv`, `.graphml`, `sampling_stats.json` |
//! | `metrics` | `knowledge_network*.json`      | `metrics.csv`, `metrics.json`, `external_shares.json`, `backbone.json`, `backbone.dot` |
//! | `compare` | `knowledge_network.json`, review table | `hypergraph.json`, `agreement.json`, `agreement.txt` |
//! | `synth`   | block-model spec               | `synth/articles.tsv`, `synth/categories.tsv`, `synth/links.tsv` |
//!
//! `all` chains `ingest` through `compare` (skipping `compare` when no review
//! table is configured). Every run also writes `manifest_<command>.json`.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use log::info;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{backbone_dot, backbone_mst, external_shares, internal_external_proportions};
use crate::error::{Error, Result};
use crate::graph::{self, build_graph, ArticleGraph};
use crate::hypergraph::{build_hypergraph, compare_with_network, parse_review_table};
use crate::ingest::{assign_areas, expand_categories, parse_articles, AreaAssignment, ArticleFormat, CategoryTree};
use crate::sampler::{monte_carlo_run, with_threads, KnowledgeNetwork, SampleConfig};
use crate::synth::{generate_sbm, write_corpus, SbmSpec};

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    #[serde(default)]
    pub articles: Option<PathBuf>,
    #[serde(default)]
    pub articles_format: Option<String>,
    #[serde(default)]
    pub categories: Option<PathBuf>,
    #[serde(default)]
    pub links: Option<PathBuf>,
    /// Area roots in priority order.
    #[serde(default)]
    pub roots: Vec<String>,
    #[serde(default = "default_depth")]
    pub depth: usize,
    /// Defaults to `k + 1`.
    #[serde(default)]
    pub min_area_size: Option<usize>,
    #[serde(default)]
    pub sample: SampleConfig,
    /// Areas whose external shares and review agreement are reported.
    #[serde(default)]
    pub focus: Vec<String>,
    #[serde(default)]
    pub review_table: Option<PathBuf>,
    #[serde(default)]
    pub review_partition: Option<PathBuf>,
    #[serde(default)]
    pub synth: Option<PathBuf>,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

fn default_depth() -> usize {
    1
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            articles: None,
            articles_format: None,
            categories: None,
            links: None,
            roots: Vec::new(),
            depth: default_depth(),
            min_area_size: None,
            sample: SampleConfig::default(),
            focus: Vec::new(),
            review_table: None,
            review_partition: None,
            synth: None,
            threads: None,
            out: default_out(),
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub k: Option<usize>,
    pub rounds: Option<usize>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

impl PipelineConfig {
    /// Parse a config (or manifest) and resolve its relative paths against
    /// `base`.
    pub fn from_json(text: &str, base: &Path) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))?;
        let value = match value.get("manifest_version") {
            Some(_) => value
                .get("config")
                .cloned()
                .ok_or_else(|| Error::Config("manifest has no config".into()))?,
            None => value,
        };
        let mut cfg: PipelineConfig =
            serde_json::from_value(value).map_err(|e| Error::Config(format!("config: {e}")))?;
        cfg.resolve(base);
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_json(&text, base)
    }

    fn resolve(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for p in [
            &mut self.articles,
            &mut self.categories,
            &mut self.links,
            &mut self.review_table,
            &mut self.review_partition,
            &mut self.synth,
        ]
        .into_iter()
        .flatten()
        {
            fix(p);
        }
        fix(&mut self.out);
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(seed) = o.seed {
            self.sample.seed = seed;
        }
        if let Some(k) = o.k {
            self.sample.k = k;
        }
        if let Some(r) = o.rounds {
            self.sample.rounds = r;
        }
        if let Some(t) = o.threads {
            self.threads = Some(t);
        }
        if let Some(out) = &o.out {
            self.out = out.clone();
        }
    }

    pub fn min_area_size(&self) -> usize {
        self.min_area_size.unwrap_or(self.sample.k + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if self.sample.rounds == 0 {
            return Err(Error::Config("rounds must be at least 1".into()));
        }
        if self.min_area_size() <= self.sample.k {
            return Err(Error::Config(format!(
                "min_area_size {} must exceed k {}",
                self.min_area_size(),
                self.sample.k
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        Ok(())
    }

    fn require<'a>(&self, field: &'static str, path: &'a Option<PathBuf>) -> Result<&'a Path> {
        let path = path
            .as_deref()
            .ok_or_else(|| Error::Config(format!("config field `{field}` is required for this command")))?;
        if !path.exists() {
            return Err(Error::Config(format!("{field}: {} does not exist", path.display())));
        }
        Ok(path)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Ingest,
    Build,
    Sample,
    Metrics,
    Compare,
    Synth,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Ingest => "ingest",
            Command::Build => "build",
            Command::Sample => "sample",
            Command::Metrics => "metrics",
            Command::Compare => "compare",
            Command::Synth => "synth",
            Command::All => "all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ingest" => Command::Ingest,
            "build" => Command::Build,
            "sample" => Command::Sample,
            "metrics" => Command::Metrics,
            "compare" => Command::Compare,
            "synth" => Command::Synth,
            "all" => Command::All,
            other => return Err(Error::Config(format!("unknown command {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub manifest_version: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub threads: Option<usize>,
    pub config: PipelineConfig,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

struct Run<'a> {
    cfg: &'a PipelineConfig,
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
}

impl<'a> Run<'a> {
    fn out(&self, name: &str) -> PathBuf {
        self.cfg.out.join(name)
    }

    /// Record an input unless this run produced it.
    fn input(&mut self, path: &Path) {
        if !self.inputs.iter().chain(&self.outputs).any(|p| p == path) {
            self.inputs.push(path.to_path_buf());
        }
    }

    fn write(&mut self, name: &str, bytes: impl AsRef<[u8]>) -> Result<()> {
        let path = self.out(name);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        if !self.outputs.iter().any(|p| p == &path) {
            self.outputs.push(path);
        }
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.write(name, s)
    }

    fn read_artifact(&mut self, name: &str) -> Result<Vec<u8>> {
        let path = self.out(name);
        let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        self.input(&path);
        Ok(bytes)
    }

    fn read_artifact_str(&mut self, name: &str) -> Result<String> {
        String::from_utf8(self.read_artifact(name)?).map_err(|_| Error::BadBinary(format!("{name} is not UTF-8")))
    }

    fn ingest(&mut self) -> Result<AreaAssignment> {
        let cfg = self.cfg;
        let articles_path = cfg.require("articles", &cfg.articles)?;
        let categories_path = cfg.require("categories", &cfg.categories)?;
        self.input(articles_path);
        self.input(categories_path);
        let format = match &cfg.articles_format {
            Some(f) => f.parse()?,
            None => ArticleFormat::from_path(articles_path),
        };
        info!("ingest: reading {}", articles_path.display());
        let corpus = parse_articles(articles_path, format)?;
        let tree = CategoryTree::parse(categories_path)?;
        let catmap = expand_categories(&tree, &cfg.roots, cfg.depth)?;
        let assignment = assign_areas(&corpus, &catmap, cfg.min_area_size())?;
        info!(
            "ingest: {} articles, {} areas retained, {} excluded",
            assignment.articles.len(),
            assignment.areas.len(),
            assignment.excluded.len()
        );
        self.write_json("census.json", &assignment.census())?;
        self.write_json("assignment.json", &assignment)?;
        Ok(assignment)
    }

    fn build(&mut self, assignment: Option<AreaAssignment>) -> Result<ArticleGraph> {
        let assignment = match assignment {
            Some(a) => a,
            None => serde_json::from_str(&self.read_artifact_str("assignment.json")?)?,
        };
        let cfg = self.cfg;
        let links_path = cfg.require("links", &cfg.links)?;
        self.input(links_path);
        let links = graph::parse_links(links_path)?;
        let (g, report) = build_graph(&assignment, &links)?;
        info!("build: {} vertices, {} edges", g.n(), g.edge_count());
        self.write("graph.bin", graph::to_binary(&g))?;
        self.write("graph.graphml", graph::to_graphml(&g))?;
        self.write_json("build_report.json", &report)?;
        Ok(g)
    }

    fn sample(&mut self, g: Option<ArticleGraph>) -> Result<KnowledgeNetwork> {
        let g = match g {
            Some(g) => g,
            None => graph::from_binary(&self.read_artifact("graph.bin")?)?,
        };
        let cfg = self.cfg;
        info!(
            "sample: k={} rounds={} seed={} threads={}",
            cfg.sample.k,
            cfg.sample.rounds,
            cfg.sample.seed,
            cfg.threads.map(|t| t.to_string()).unwrap_or_else(|| "auto".into())
        );
        let run = match cfg.threads {
            Some(t) => with_threads(t, || monte_carlo_run(&g, &cfg.sample))??,
            None => monte_carlo_run(&g, &cfg.sample)?,
        };
        self.write("knowledge_network.json", run.network.to_json()?)?;
        self.write("knowledge_network_raw.json", run.mean.to_json()?)?;
        self.write("knowledge_network.csv", run.network.to_csv())?;
        self.write("knowledge_network.graphml", run.network.to_graphml())?;
        let stats = SamplingStats {
            areas: g.area_names().to_vec(),
            area_sizes: g.area_sizes(),
            node_std_error: run.node_std_error.clone(),
            edge_std_error: run.edge_std_error.clone(),
        };
        self.write_json("sampling_stats.json", &stats)?;
        Ok(run.network)
    }

    fn metrics(&mut self) -> Result<()> {
        let raw = KnowledgeNetwork::from_json(&self.read_artifact_str("knowledge_network_raw.json")?)?;
        let net = KnowledgeNetwork::from_json(&self.read_artifact_str("knowledge_network.json")?)?;
        let report = internal_external_proportions(&raw)?;
        self.write("metrics.csv", report.to_csv())?;
        self.write_json("metrics.json", &report)?;
        let focus: Vec<String> = self
            .cfg
            .focus
            .iter()
            .filter(|f| net.area_index(f).is_some())
            .cloned()
            .collect();
        self.write_json("external_shares.json", &external_shares(&net, &focus)?)?;
        let backbone = backbone_mst(&net)?;
        self.write_json("backbone.json", &backbone)?;
        self.write("backbone.dot", backbone_dot(&net, &backbone))?;
        info!(
            "metrics: backbone with {} edges, total {:.6}",
            backbone.edges.len(),
            backbone.total_weight
        );
        Ok(())
    }

    fn compare(&mut self) -> Result<()> {
        let cfg = self.cfg;
        let table_path = cfg.require("review_table", &cfg.review_table)?;
        let partition_path = cfg.require("review_partition", &cfg.review_partition)?;
        self.input(table_path);
        self.input(partition_path);
        let table = parse_review_table(table_path, partition_path)?;
        let hg = build_hypergraph(&table)?;
        let net = KnowledgeNetwork::from_json(&self.read_artifact_str("knowledge_network.json")?)?;
        let focus: Vec<String> = cfg
            .focus
            .iter()
            .filter(|f| hg.hyperedge(f).is_some() && net.area_index(f).is_some())
            .cloned()
            .collect();
        if focus.is_empty() {
            return Err(Error::Config(
                "no focus area is present in both the network and the review table".into(),
            ));
        }
        let report = compare_with_network(&hg, &net, &focus)?;
        info!("compare: mean jaccard {:.3}", report.mean_jaccard);
        self.write_json("hypergraph.json", &hg)?;
        self.write_json("agreement.json", &report)?;
        self.write("agreement.txt", report.summary())?;
        Ok(())
    }

    fn synth(&mut self) -> Result<()> {
        let cfg = self.cfg;
        let spec_path = cfg.require("synth", &cfg.synth)?;
        self.input(spec_path);
        let text = fs::read_to_string(spec_path).map_err(|e| Error::io(spec_path, e))?;
        let spec = SbmSpec::from_json(&text)?;
        let g = generate_sbm(&spec)?;
        info!("synth: {} vertices, {} edges", g.n(), g.edge_count());
        let files = write_corpus(&g, &self.out("synth"))?;
        self.outputs.extend([files.articles, files.categories, files.links]);
        Ok(())
    }

    fn manifest(&self, command: Command) -> Result<Manifest> {
        let digest = |paths: &[PathBuf]| -> Result<Vec<FileDigest>> {
            paths
                .iter()
                .map(|p| {
                    Ok(FileDigest {
                        path: p.clone(),
                        sha256: sha256_file(p)?,
                    })
                })
                .collect()
        };
        Ok(Manifest {
            manifest_version: MANIFEST_VERSION,
            tool: env!("CARGO_PKG_NAME").to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            command: command.name().to_owned(),
            seed: self.cfg.sample.seed,
            threads: self.cfg.threads,
            config: self.cfg.clone(),
            inputs: digest(&self.inputs)?,
            outputs: digest(&self.outputs)?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SamplingStats {
    pub areas: Vec<String>,
    pub area_sizes: Vec<usize>,
    pub node_std_error: Vec<f64>,
    pub edge_std_error: Vec<f64>,
}

/// Execute `command`, write its artifacts and manifest, and return the
/// manifest.
pub fn run(command: Command, cfg: &PipelineConfig) -> Result<Manifest> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
    let mut run = Run {
        cfg,
        inputs: Vec::new(),
        outputs: Vec::new(),
    };
    match command {
        Command::Ingest => {
            run.ingest()?;
        }
        Command::Build => {
            run.build(None)?;
        }
        Command::Sample => {
            run.sample(None)?;
        }
        Command::Metrics => run.metrics()?,
        Command::Compare => run.compare()?,
        Command::Synth => run.synth()?,
        Command::All => {
            let assignment = run.ingest()?;
            let g = run.build(Some(assignment))?;
            run.sample(Some(g))?;
            run.metrics()?;
            if cfg.review_table.is_some() {
                run.compare()?;
            }
        }
    }
    let manifest = run.manifest(command)?;
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    let path = cfg.out.join(format!("manifest_{command}.json"));
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}
