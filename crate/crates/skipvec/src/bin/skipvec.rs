//! Thin command-line front end over the library pipeline.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use skipvec::cli;
use skipvec::config::RunConfig;

#[derive(Parser)]
#[command(
    name = "skipvec",
    about = "Skip-pattern feature vectors for RDF node classification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract per-pattern feature sets for all labeled resources
    Extract(CommonArgs),
    /// Rank features by information gain ratio and keep the top n
    Select(CommonArgs),
    /// Write the sparse dataset, dictionary, and label map
    Vectorize(CommonArgs),
    /// Cross-validate (or split-evaluate) the full pipeline
    Evaluate(CommonArgs),
    /// Check extraction against the exhaustive oracles and bounds
    OracleCheck(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Config file of `key = value` lines; flags override it
    #[arg(long)]
    config: Option<PathBuf>,

    /// N-Triples graph file
    #[arg(long)]
    graph: Option<PathBuf>,

    /// Tab-separated `<resource>\t<label>` file
    #[arg(long)]
    labels: Option<PathBuf>,

    /// Comma-separated label-bearing predicates to delete from targets
    #[arg(long)]
    leak_predicates: Option<String>,

    /// Comma-separated pattern tags (default: all nine)
    #[arg(long)]
    patterns: Option<String>,

    /// Features kept per pattern
    #[arg(long)]
    top_n: Option<usize>,

    /// Depth discount factor in (0, 1]
    #[arg(long)]
    lambda: Option<f64>,

    /// Minimum training occurrence per feature
    #[arg(long)]
    min_count: Option<usize>,

    /// Classifier: knn, tree, rf, or ada
    #[arg(long)]
    learner: Option<String>,

    /// Neighbors for knn
    #[arg(long)]
    k: Option<usize>,

    /// Trees for rf
    #[arg(long)]
    trees: Option<usize>,

    /// Weak-tree depth for ada (1..=10)
    #[arg(long)]
    weak_depth: Option<u32>,

    /// Cross-validation folds
    #[arg(long)]
    folds: Option<usize>,

    /// Train fraction for a single split instead of CV
    #[arg(long)]
    split: Option<f64>,

    /// RNG seed
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl CommonArgs {
    fn into_config(self) -> anyhow::Result<RunConfig> {
        let mut config = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config file {}", path.display()))?;
            config
                .apply_file(&text)
                .with_context(|| format!("parsing config file {}", path.display()))?;
        }
        if let Some(v) = self.graph {
            config.graph_path = Some(v);
        }
        if let Some(v) = self.labels {
            config.labels_path = Some(v);
        }
        if let Some(v) = self.leak_predicates {
            config.set("leak_predicates", &v)?;
        }
        if let Some(v) = self.patterns {
            config.set("patterns", &v)?;
        }
        if let Some(v) = self.top_n {
            config.top_n = v;
        }
        if let Some(v) = self.lambda {
            config.lambda = v;
        }
        if let Some(v) = self.min_count {
            config.min_count = v;
        }
        if let Some(v) = self.learner {
            config.set("learner", &v)?;
        }
        if let Some(v) = self.k {
            config.k = v;
        }
        if let Some(v) = self.trees {
            config.trees = v;
        }
        if let Some(v) = self.weak_depth {
            config.weak_depth = v;
        }
        if let Some(v) = self.folds {
            config.folds = v;
        }
        if let Some(v) = self.split {
            config.split = Some(v);
        }
        if let Some(v) = self.seed {
            config.seed = v;
        }
        if let Some(v) = self.out_dir {
            config.out_dir = v;
        }
        Ok(config)
    }
}

fn run() -> anyhow::Result<bool> {
    skipvec::threads::configure_from_env();
    let cli = Cli::parse();
    match cli.command {
        Command::Extract(args) => {
            let config = args.into_config()?;
            let summary = cli::cmd_extract(&config)?;
            for (sp, count) in &summary.counts {
                println!("{}\t{count}", sp.tag());
            }
            println!("feature list written to {}", summary.report_path.display());
        }
        Command::Select(args) => {
            let config = args.into_config()?;
            let summary = cli::cmd_select(&config)?;
            for (sp, count) in &summary.selected {
                println!("{}\t{count}", sp.tag());
            }
            println!(
                "{} coordinates; ranking written to {}",
                summary.total_dim,
                summary.report_path.display()
            );
            if let Some(warning) = &summary.warning {
                eprintln!("warning: {warning}");
            }
        }
        Command::Vectorize(args) => {
            let config = args.into_config()?;
            let summary = cli::cmd_vectorize(&config)?;
            println!("{} rows x {} coordinates", summary.rows, summary.total_dim);
            println!("dataset written to {}", summary.dataset_path.display());
            println!("dictionary written to {}", summary.dictionary_path.display());
            println!("label map written to {}", summary.label_map_path.display());
        }
        Command::Evaluate(args) => {
            let config = args.into_config()?;
            let summary = cli::cmd_evaluate(&config)?;
            for (i, acc) in summary.per_fold.iter().enumerate() {
                println!("fold{i}\t{acc:.6}");
            }
            println!("mean\t{:.6}", summary.mean);
            println!("stddev\t{:.6}", summary.stddev);
            println!("report written to {}", summary.report_path.display());
        }
        Command::OracleCheck(args) => {
            let config = args.into_config()?;
            let report = cli::cmd_oracle_check(&config)?;
            for check in &report.checks {
                println!(
                    "{}\t{}\t{}",
                    if check.passed { "pass" } else { "FAIL" },
                    check.name,
                    check.detail
                );
            }
            return Ok(report.all_passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
