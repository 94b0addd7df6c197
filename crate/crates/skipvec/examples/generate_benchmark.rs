//! Write the planted-feature benchmark to disk as N-Triples plus a label
//! TSV, ready for the `skipvec` binary.
//!
//! ```bash
//! cargo run -p skipvec --example generate_benchmark -- /tmp/bench
//! skipvec evaluate --graph /tmp/bench/bench.nt --labels /tmp/bench/bench.tsv \
//!     --learner knn --k 5 --folds 10 --out-dir /tmp/bench/out
//! ```

use std::fs;
use std::path::PathBuf;

use skipvec::synthetic::{generate, BenchmarkConfig};

fn main() -> anyhow::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("bench-out"));
    fs::create_dir_all(&dir)?;

    let config = BenchmarkConfig::default();
    let (graph, labels) = generate(&config);

    let graph_path = dir.join("bench.nt");
    fs::write(&graph_path, graph.to_ntriples())?;

    let mut tsv = String::new();
    for (resource, label) in labels.iter() {
        tsv.push_str(&format!("{resource}\t{label}\n"));
    }
    let labels_path = dir.join("bench.tsv");
    fs::write(&labels_path, tsv)?;

    println!(
        "wrote {} triples to {} and {} labels to {}",
        graph.len(),
        graph_path.display(),
        labels.len(),
        labels_path.display()
    );
    println!(
        "positive resources carry the planted chain linksTo -> category -> special; \
         20% noise triples on top"
    );
    Ok(())
}
