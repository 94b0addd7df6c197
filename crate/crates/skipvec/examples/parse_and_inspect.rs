//! Parse an N-Triples graph, query outgoing edges, and serialize it back
//! in canonical form.
//!
//! ```bash
//! cargo run -p skipvec --example parse_and_inspect
//! ```

use skipvec::rdf::{parse_ntriples_str, Term};

const GRAPH: &str = r#"
<http://example.org/apple> <http://example.org/color> <http://example.org/red> .
<http://example.org/apple> <http://example.org/color> <http://example.org/green> .
<http://example.org/apple> <http://example.org/taste> "sweet"@en .
<http://example.org/fruits> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://example.org/foods> .
# duplicate lines collapse:
<http://example.org/apple> <http://example.org/color> <http://example.org/red> .
"#;

fn main() -> anyhow::Result<()> {
    let graph = parse_ntriples_str(GRAPH)?;
    println!(
        "{} triples, {} distinct predicates, {} distinct objects",
        graph.len(),
        graph.predicate_count(),
        graph.object_count()
    );

    let apple = Term::iri("http://example.org/apple");
    println!("\noutgoing edges of {apple}:");
    for (p, o) in graph.outgoing(&apple) {
        println!("  {p} -> {o}");
    }

    println!("\ncanonical serialization:");
    print!("{}", graph.to_ntriples());
    Ok(())
}
