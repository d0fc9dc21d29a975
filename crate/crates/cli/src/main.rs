//! patchmine: mine security patches from an issue/commit corpus, categorize
//! and cluster them, and scan other codebases for unpatched clones.

mod artifacts;
mod commands;
mod config;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::LoadedConfig;

#[derive(Parser)]
#[command(name = "patchmine", version, about = "Security-patch mining pipeline")]
struct Cli {
    /// Pipeline configuration file.
    #[arg(long, global = true, default_value = "patchmine.json")]
    config: PathBuf,
    /// Output directory (overrides the configured one).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Log level: error, warn, info, debug, trace.
    #[arg(long, global = true, default_value = "warn")]
    log_level: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load, validate, deduplicate, and cross-link the corpus.
    Ingest,
    /// Run the S0–S4b vulnerability filter and write the ledger.
    Filter {
        /// Also build unreviewed keyword clusters from the embeddings.
        #[arg(long)]
        emit_keyword_clusters: bool,
    },
    /// Aggregate per-module and per-layer vulnerability counts.
    Modules,
    /// Clean titles and extract vulnerability-type keywords.
    Types {
        /// Process every issue instead of the filter candidates.
        #[arg(long)]
        all: bool,
    },
    /// Generate code change signatures from patch hunks.
    Signatures {
        /// Process every commit instead of the candidates' commits.
        #[arg(long)]
        all: bool,
    },
    /// Cluster type keywords (--text) or code signatures (--code).
    Cluster {
        #[arg(long, conflicts_with = "code")]
        text: bool,
        #[arg(long)]
        code: bool,
    },
    /// Scan a source tree for unpatched clones of known patterns.
    Scan {
        /// Root of the tree to scan.
        #[arg(long)]
        target: PathBuf,
        /// Patterns file (overrides config paths.patterns).
        #[arg(long)]
        patterns: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<i32> {
    env_logger::Builder::new()
        .parse_filters(&cli.log_level)
        .try_init()
        .ok();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    let cfg = LoadedConfig::load(&cli.config, cli.out)?;
    match cli.command {
        Command::Ingest => commands::cmd_ingest(&cfg)?,
        Command::Filter {
            emit_keyword_clusters,
        } => commands::cmd_filter(&cfg, emit_keyword_clusters)?,
        Command::Modules => commands::cmd_modules(&cfg)?,
        Command::Types { all } => commands::cmd_types(&cfg, all)?,
        Command::Signatures { all } => commands::cmd_signatures(&cfg, all)?,
        Command::Cluster { text, code } => {
            if text == code {
                anyhow::bail!("pass exactly one of --text or --code");
            }
            if text {
                commands::cmd_cluster_text(&cfg)?;
            } else {
                commands::cmd_cluster_code(&cfg)?;
            }
        }
        Command::Scan { target, patterns } => {
            let vulnerable = commands::cmd_scan(&cfg, &target, patterns)?;
            if vulnerable > 0 {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}
