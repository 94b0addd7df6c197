//! Build depth-discounted sparse vectors and write the interchange
//! files: dataset, coordinate dictionary, and label map.
//!
//! Depth-1 coordinates always carry λ⁰ = 1; depth-2 coordinates carry λ.
//!
//! ```bash
//! cargo run -p skipvec --example vectorize_and_export
//! ```

use skipvec::pipeline::{build_cache, rows_from_cache, select_for_rows};
use skipvec::rdf::{load_labels_str, parse_ntriples_str};
use skipvec::vector::{export_rows, write_dictionary, write_label_map, SparseRow};
use skipvec::SkipPattern;

const GRAPH: &str = r#"
<apple> <color> <red> .
<apple> <type> <fruits> .
<fruits> <subClassOf> <foods> .
<monkey> <like> <apple> .
<monkey> <type> <animals> .
<animals> <subClassOf> <creatures> .
"#;

const LABELS: &str = "<apple>\tfruit\n<monkey>\tanimal\n";

fn main() -> anyhow::Result<()> {
    let graph = parse_ntriples_str(GRAPH)?;
    let labels = load_labels_str(LABELS)?;
    let lambda = 0.3;

    let cache = build_cache(&graph, &labels, &SkipPattern::ALL)?;
    let all: Vec<usize> = (0..cache.resources.len()).collect();
    // min_count 1: keep everything, this graph is tiny.
    let selection = select_for_rows(&graph, &cache, &all, 100, 1)?;

    let rows: Vec<SparseRow> = rows_from_cache(&cache, &selection, lambda, &all)
        .into_iter()
        .zip(&cache.classes)
        .map(|(row, &class)| (class, row.into_iter().collect()))
        .collect();

    let mut dataset = Vec::new();
    export_rows(&rows, &mut dataset)?;
    println!("dataset (label coord:value ..., lambda = {lambda}):");
    print!("{}", String::from_utf8(dataset)?);

    let mut dictionary = Vec::new();
    write_dictionary(&graph, &selection.index, &mut dictionary)?;
    println!("\ndictionary (coord, pattern, feature):");
    print!("{}", String::from_utf8(dictionary)?);

    let mut label_map = Vec::new();
    write_label_map(&labels, &mut label_map)?;
    println!("\nlabel map:");
    print!("{}", String::from_utf8(label_map)?);
    Ok(())
}
