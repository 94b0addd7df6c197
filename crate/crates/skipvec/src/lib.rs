//! Skip-pattern feature vectors for RDF node classification.
//!
//! The pipeline: parse an N-Triples graph and a label file, extract the
//! nine Skip-pattern feature sets per target resource, score features by
//! information gain ratio on training resources, select the top n per
//! pattern, and emit depth-discounted sparse vectors that plug into the
//! bundled classifiers (KNN, decision tree, random forest, AdaBoost) or
//! export to a plain-text sparse format for external learners.
//!
//! Start with the runnable programs under `examples/`, or the `skipvec`
//! binary for the file-to-file workflow.

pub mod cli;
pub mod config;
pub mod extract;
pub mod infogain;
pub mod learn;
pub mod oracle;
pub mod pattern;
pub mod pipeline;
pub mod rdf;
pub mod synthetic;
pub mod threads;
pub mod vector;

pub use extract::{extract, extract_all, extract_union, Feature, FeatureSet, UnionFeatures};
pub use pattern::{pattern_census, PatternDescriptor, SkipPattern};
pub use rdf::{Graph, LabeledResources, Term, TermId, TermKind, Triple};
pub use vector::{build_index, vectorize, SkipVector, VectorIndex};
