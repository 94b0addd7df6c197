//! Skip-vector construction and the sparse text dataset format.
//!
//! A concatenated index fixes one coordinate per selected feature, with
//! patterns laid out in canonical order. Vectorization writes λ^(d-1) at
//! the coordinate of every selected feature the resource possesses, so one
//! index serves a whole λ sweep. The exported dataset is line-oriented:
//! `<label-id> <coord>:<value> ...` with 1-based ascending coordinates,
//! plus a dictionary TSV and a label-map TSV sidecar.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};

use crate::extract::{extract, Feature};
use crate::pattern::SkipPattern;
use crate::rdf::{Graph, LabeledResources, Term};

#[derive(Debug, thiserror::Error)]
pub enum VectorError {
    #[error("duplicate feature in pattern {pattern}: {feature}")]
    DuplicateFeature { pattern: String, feature: String },
    #[error("patterns out of canonical order: {0} appeared after a later pattern")]
    PatternOrder(String),
    #[error("lambda must be in (0, 1], got {0}")]
    LambdaRange(f64),
    #[error("resource is not labeled: {0}")]
    UnlabeledResource(String),
    #[error("line {line}: {reason}: {text}")]
    Malformed {
        line: usize,
        reason: String,
        text: String,
    },
    #[error("line {line}: coordinate {coord} out of range")]
    CoordRange { line: usize, coord: u64 },
    #[error("line {line}: coordinates not in ascending order")]
    Unsorted { line: usize },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

/// One pattern's ordered, deduplicated feature sequence within the
/// concatenated coordinate space.
#[derive(Debug, Clone)]
pub struct FeatureIndex {
    pub pattern: SkipPattern,
    pub ordered_features: Vec<Feature>,
    pub offset: u32,
}

/// Concatenated per-pattern indexes: the coordinate dictionary for one run.
#[derive(Debug, Clone)]
pub struct VectorIndex {
    segments: Vec<FeatureIndex>,
    total_dim: u32,
    lookup: HashMap<Feature, u32>,
}

impl VectorIndex {
    pub fn total_dim(&self) -> u32 {
        self.total_dim
    }

    pub fn segments(&self) -> &[FeatureIndex] {
        &self.segments
    }

    pub fn coordinate(&self, f: &Feature) -> Option<u32> {
        self.lookup.get(f).copied()
    }

    /// `(pattern, feature)` in coordinate order.
    pub fn entries(&self) -> impl Iterator<Item = (SkipPattern, &Feature)> {
        self.segments
            .iter()
            .flat_map(|seg| seg.ordered_features.iter().map(move |f| (seg.pattern, f)))
    }
}

/// Concatenates per-pattern feature sequences into one coordinate space.
/// Patterns must arrive in canonical order; duplicates within a pattern
/// are an error.
pub fn build_index(
    g: &Graph,
    selected: Vec<(SkipPattern, Vec<Feature>)>,
) -> Result<VectorIndex, VectorError> {
    let canonical_rank = |sp: SkipPattern| SkipPattern::ALL.iter().position(|&p| p == sp).unwrap();
    let mut last_rank = None;
    let mut segments = Vec::new();
    let mut lookup = HashMap::new();
    let mut offset = 0u32;
    for (pattern, features) in selected {
        let rank = canonical_rank(pattern);
        if let Some(last) = last_rank {
            if rank <= last {
                return Err(VectorError::PatternOrder(pattern.tag().to_string()));
            }
        }
        last_rank = Some(rank);
        for (i, f) in features.iter().enumerate() {
            if lookup.insert(f.clone(), offset + i as u32).is_some() {
                return Err(VectorError::DuplicateFeature {
                    pattern: pattern.tag().to_string(),
                    feature: f.canonical(g),
                });
            }
        }
        let size = features.len() as u32;
        segments.push(FeatureIndex {
            pattern,
            ordered_features: features,
            offset,
        });
        offset += size;
    }
    Ok(VectorIndex {
        segments,
        total_dim: offset,
        lookup,
    })
}

/// Sparse λ-discounted indicator vector of one resource. Absent
/// coordinates are 0; stored values equal λ^(d-1) for the owning
/// pattern's depth d.
#[derive(Debug, Clone, PartialEq)]
pub struct SkipVector {
    pub resource: Term,
    pub values: BTreeMap<u32, f64>,
}

/// Builds the Skip vector of `s` over the index with discount λ ∈ (0, 1].
pub fn vectorize(
    g: &Graph,
    s: &Term,
    index: &VectorIndex,
    lambda: f64,
) -> Result<SkipVector, VectorError> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(VectorError::LambdaRange(lambda));
    }
    let mut values = BTreeMap::new();
    for seg in &index.segments {
        if seg.ordered_features.is_empty() {
            continue;
        }
        let discount = lambda.powi(seg.pattern.depth() as i32 - 1);
        let present = extract(g, s, seg.pattern);
        for f in &present.features {
            if let Some(coord) = index.lookup.get(f) {
                values.insert(*coord, discount);
            }
        }
    }
    Ok(SkipVector {
        resource: s.clone(),
        values,
    })
}

/// Formats a value with up to nine significant decimal digits, no
/// trailing zeros. Idempotent under parse-then-format.
pub fn format_value(v: f64) -> String {
    let mut s = format!("{v:.9}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// One dataset row: class index plus sparse coordinates (0-based here;
/// the text format is 1-based).
pub type SparseRow = (usize, BTreeMap<u32, f64>);

/// Writes rows in the sparse text format, one line per row.
pub fn export_rows<W: Write>(rows: &[SparseRow], mut sink: W) -> Result<(), VectorError> {
    for (label, values) in rows {
        let mut line = label.to_string();
        for (&coord, &value) in values {
            line.push(' ');
            line.push_str(&(coord as u64 + 1).to_string());
            line.push(':');
            line.push_str(&format_value(value));
        }
        line.push('\n');
        sink.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Exports labeled vectors. Every vector's resource must be labeled; class
/// ids are indices into the sorted class list.
pub fn export_sparse<W: Write>(
    vectors: &[SkipVector],
    labels: &LabeledResources,
    sink: W,
) -> Result<(), VectorError> {
    let rows = labeled_rows(vectors, labels)?;
    export_rows(&rows, sink)
}

pub fn labeled_rows(
    vectors: &[SkipVector],
    labels: &LabeledResources,
) -> Result<Vec<SparseRow>, VectorError> {
    vectors
        .iter()
        .map(|v| {
            let class = labels
                .class_index(&v.resource)
                .ok_or_else(|| VectorError::UnlabeledResource(v.resource.to_string()))?;
            Ok((class, v.values.clone()))
        })
        .collect()
}

/// Sidecar dictionary: `coord \t pattern \t feature-string`, 1-based.
pub fn write_dictionary<W: Write>(
    g: &Graph,
    index: &VectorIndex,
    mut sink: W,
) -> Result<(), VectorError> {
    for (i, (pattern, feature)) in index.entries().enumerate() {
        writeln!(sink, "{}\t{}\t{}", i + 1, pattern.tag(), feature.canonical(g))?;
    }
    Ok(())
}

/// Sidecar label map: `label-id \t label`.
pub fn write_label_map<W: Write>(
    labels: &LabeledResources,
    mut sink: W,
) -> Result<(), VectorError> {
    for (i, class) in labels.classes().iter().enumerate() {
        writeln!(sink, "{i}\t{class}")?;
    }
    Ok(())
}

/// Reads the sparse text format back. In strict mode (the default for
/// files this library wrote), coordinates must be strictly ascending;
/// otherwise they are re-sorted. Coordinates are 1-based on disk.
pub fn import_sparse<R: BufRead>(source: R, strict: bool) -> Result<Vec<SparseRow>, VectorError> {
    let mut rows = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let text = line.trim_end_matches(['\r']);
        if text.is_empty() {
            continue;
        }
        let mut parts = text.split(' ');
        let label_text = parts.next().unwrap();
        let label: usize = label_text.parse().map_err(|_| VectorError::Malformed {
            line: lineno,
            reason: format!("invalid label id `{label_text}`"),
            text: text.to_string(),
        })?;
        let mut values = BTreeMap::new();
        let mut last_coord: Option<u64> = None;
        for part in parts {
            if part.is_empty() {
                return Err(VectorError::Malformed {
                    line: lineno,
                    reason: "empty field".to_string(),
                    text: text.to_string(),
                });
            }
            let Some((coord_text, value_text)) = part.split_once(':') else {
                return Err(VectorError::Malformed {
                    line: lineno,
                    reason: format!("expected `coord:value`, got `{part}`"),
                    text: text.to_string(),
                });
            };
            let coord: u64 = coord_text.parse().map_err(|_| VectorError::Malformed {
                line: lineno,
                reason: format!("invalid coordinate `{coord_text}`"),
                text: text.to_string(),
            })?;
            if coord == 0 || coord > u32::MAX as u64 {
                return Err(VectorError::CoordRange { line: lineno, coord });
            }
            if strict {
                if let Some(last) = last_coord {
                    if coord <= last {
                        return Err(VectorError::Unsorted { line: lineno });
                    }
                }
            }
            last_coord = Some(coord);
            let value: f64 = value_text.parse().map_err(|_| VectorError::Malformed {
                line: lineno,
                reason: format!("invalid value `{value_text}`"),
                text: text.to_string(),
            })?;
            if values.insert((coord - 1) as u32, value).is_some() {
                return Err(VectorError::Malformed {
                    line: lineno,
                    reason: format!("duplicate coordinate {coord}"),
                    text: text.to_string(),
                });
            }
        }
        rows.push((label, values));
    }
    Ok(rows)
}

pub fn import_sparse_str(text: &str, strict: bool) -> Result<Vec<SparseRow>, VectorError> {
    import_sparse(text.as_bytes(), strict)
}
