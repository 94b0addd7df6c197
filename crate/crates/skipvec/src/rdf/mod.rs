//! RDF triple store: terms, triples, an immutable indexed graph, and
//! labeled target resources.

mod graph;
mod labels;
mod ntriples;
mod term;

pub use graph::{Graph, GraphError};
pub use labels::{load_labels, load_labels_str, LabelError, LabeledResources};
pub use ntriples::{parse_ntriples, parse_ntriples_str, ParseError};
pub use term::{Term, TermId, TermKind, Triple};
