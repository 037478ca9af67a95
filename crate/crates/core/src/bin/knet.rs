use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use knowledge_net::pipeline::{self, Command, Overrides, PipelineConfig};
use knowledge_net::Error;

#[derive(Parser)]
#[command(
    name = "knet",
    version,
    about = "Area-level knowledge networks from hyperlinked article corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Pipeline config (JSON) or a manifest from an earlier run.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Articles sampled per area per round.
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    rounds: Option<usize>,
    /// Sampler worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Parse articles and categories, assign areas.
    Ingest,
    /// Build the article graph from links.
    Build,
    /// Estimate the knowledge network by repeated sampling.
    Sample,
    /// Backbone, external shares and internal/external proportions.
    Metrics,
    /// Score agreement with a literature-review table.
    Compare,
    /// Generate a block-model corpus.
    Synth,
    /// Run ingest through compare.
    All,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Ingest => Command::Ingest,
            Cmd::Build => Command::Build,
            Cmd::Sample => Command::Sample,
            Cmd::Metrics => Command::Metrics,
            Cmd::Compare => Command::Compare,
            Cmd::Synth => Command::Synth,
            Cmd::All => Command::All,
        }
    }
}

fn execute(cli: &Cli) -> Result<(), Error> {
    let mut cfg = match &cli.opts.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    cfg.apply(&Overrides {
        seed: cli.opts.seed,
        k: cli.opts.k,
        rounds: cli.opts.rounds,
        threads: cli.opts.threads,
        out: cli.opts.out.clone(),
    });
    pipeline::run(cli.command.into(), &cfg)?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = e.kind();
            let line = serde_json::json!({
                "error": { "kind": kind.as_str(), "code": kind.exit_code(), "message": e.to_string() }
            });
            eprintln!("{line}");
            ExitCode::from(kind.exit_code() as u8)
        }
    }
}
