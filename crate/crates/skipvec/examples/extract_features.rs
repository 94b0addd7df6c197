//! Extract all nine Skip-pattern feature sets for one resource.
//!
//! Depth-1 patterns (p, o, po) read the resource's outgoing edges;
//! depth-2 patterns chain one hop further, keeping or skipping the
//! predicates and the terminal object.
//!
//! ```bash
//! cargo run -p skipvec --example extract_features
//! ```

use skipvec::rdf::{parse_ntriples_str, Term};
use skipvec::{extract, SkipPattern};

const GRAPH: &str = r#"
<apple> <color> <red> .
<apple> <color> <green> .
<apple> <shape> <sphere> .
<apple> <taste> <sweet> .
<apple> <type> <fruits> .
<fruits> <subClassOf> <foods> .
"#;

fn main() -> anyhow::Result<()> {
    let graph = parse_ntriples_str(GRAPH)?;
    let apple = Term::iri("apple");

    for sp in SkipPattern::ALL {
        let set = extract(&graph, &apple, sp);
        let mut names: Vec<String> = set.features.iter().map(|f| f.canonical(&graph)).collect();
        names.sort();
        println!("F_{}(apple), depth {}:", sp.tag(), sp.depth());
        for name in names {
            println!("  {name}");
        }
    }
    Ok(())
}
