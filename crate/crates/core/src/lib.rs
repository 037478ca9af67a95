//! Area-level knowledge networks built from category-labelled, hyperlinked
//! article corpora.
//!
//! The pipeline runs in stages:
//!
//! 1. [`ingest`] parses articles and the category tree and assigns every
//!    article to exactly one area.
//! 2. [`graph`] builds the undirected article graph from hyperlinks.
//! 3. [`sampler`] draws a fixed number of articles per area, collapses each
//!    area to one vertex and averages over many rounds, yielding a
//!    [`KnowledgeNetwork`]. An exact-expectation oracle accompanies it.
//! 4. [`analysis`] extracts the strongest-edge backbone, external shares and
//!    internal/external proportions.
//! 5. [`hypergraph`] reads a literature-review table and scores agreement
//!    with the network.
//!
//! [`synth`] generates planted-partition graphs for validating the estimator
//! and [`pipeline`] wires all stages behind the `knet` command.

pub mod analysis;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod ingest;
pub mod pipeline;
pub mod sampler;
pub mod synth;

pub use analysis::{Backbone, MetricsReport};
pub use error::{Error, ErrorKind, Result};
pub use graph::ArticleGraph;
pub use hypergraph::{AgreementReport, Hypergraph, ReviewTable};
pub use ingest::{AreaAssignment, Article, CategoryTree, Corpus};
pub use sampler::{KnowledgeNetwork, SampleConfig};
pub use synth::SbmSpec;
