//! Sweep the depth discount λ over one selection index.
//!
//! The index is built once; λ is applied at vectorization time, so a grid
//! sweep re-uses the same coordinates. Only depth-2 values change.
//!
//! ```bash
//! cargo run --release -p skipvec --example lambda_sweep
//! ```

use skipvec::pipeline::{cross_validate, Learner, PipelineConfig};
use skipvec::synthetic::{generate, BenchmarkConfig};

fn main() -> anyhow::Result<()> {
    let (graph, labels) = generate(&BenchmarkConfig {
        resources_per_class: 50,
        noise_fraction: 0.6,
        ..BenchmarkConfig::default()
    });

    println!("lambda\tmean accuracy (knn, 10-fold)");
    for step in 1..=10 {
        let lambda = step as f64 / 10.0;
        let config = PipelineConfig {
            lambda,
            learner: Learner::Knn { k: 5 },
            ..PipelineConfig::default()
        };
        let report = cross_validate(&graph, &labels, 10, &config, 42)?;
        println!("{lambda:.1}\t{:.4}", report.mean);
    }
    Ok(())
}
