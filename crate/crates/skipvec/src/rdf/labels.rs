use std::collections::BTreeMap;
use std::io::BufRead;

use super::term::{Term, TermKind};

/// Labeled target resources: one class label per resource, plus the
/// ordered distinct class list.
#[derive(Debug, Clone, Default)]
pub struct LabeledResources {
    entries: BTreeMap<Term, String>,
    classes: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum LabelError {
    #[error("line {line}: malformed label line (expected `<resource>\\t<label>`): {text}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: resource {resource} relabeled from {old} to {new}")]
    Conflict {
        line: usize,
        resource: String,
        old: String,
        new: String,
    },
    #[error("conflicting labels for {resource}: {old} vs {new}")]
    PairConflict {
        resource: String,
        old: String,
        new: String,
    },
    #[error("labels must name IRI or blank-node resources, got literal: {0}")]
    LiteralResource(String),
    #[error("I/O error while reading labels: {0}")]
    Io(#[from] std::io::Error),
}

impl LabeledResources {
    pub fn from_pairs<I: IntoIterator<Item = (Term, String)>>(
        pairs: I,
    ) -> Result<LabeledResources, LabelError> {
        let mut entries: BTreeMap<Term, String> = BTreeMap::new();
        for (resource, label) in pairs {
            if resource.kind == TermKind::Literal {
                return Err(LabelError::LiteralResource(resource.lexical));
            }
            if let Some(old) = entries.get(&resource) {
                if *old != label {
                    return Err(LabelError::PairConflict {
                        resource: resource.to_string(),
                        old: old.clone(),
                        new: label,
                    });
                }
            } else {
                entries.insert(resource, label);
            }
        }
        Ok(Self::from_map(entries))
    }

    fn from_map(entries: BTreeMap<Term, String>) -> LabeledResources {
        let mut classes: Vec<String> = entries.values().cloned().collect();
        classes.sort();
        classes.dedup();
        LabeledResources { entries, classes }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, resource: &Term) -> bool {
        self.entries.contains_key(resource)
    }

    pub fn label(&self, resource: &Term) -> Option<&str> {
        self.entries.get(resource).map(String::as_str)
    }

    /// Class index of a resource within the sorted class list.
    pub fn class_index(&self, resource: &Term) -> Option<usize> {
        let label = self.entries.get(resource)?;
        self.classes.iter().position(|c| c == label)
    }

    /// Ordered distinct class labels (lexicographic).
    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    /// Resources in canonical (term-sorted) order.
    pub fn resources(&self) -> impl Iterator<Item = &Term> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &str)> {
        self.entries.iter().map(|(t, l)| (t, l.as_str()))
    }

    /// Replaces labels with a permutation of themselves, keeping resources
    /// fixed. Used for permutation-null controls.
    pub fn with_labels(&self, labels: Vec<String>) -> LabeledResources {
        assert_eq!(labels.len(), self.entries.len());
        let entries = self
            .entries
            .keys()
            .cloned()
            .zip(labels)
            .collect::<BTreeMap<_, _>>();
        Self::from_map(entries)
    }
}

/// Loads tab-separated `<resource-IRI>\t<label>` lines. Duplicate lines
/// are idempotent; the same resource with conflicting labels is an error.
pub fn load_labels<R: BufRead>(reader: R) -> Result<LabeledResources, LabelError> {
    let mut entries: BTreeMap<Term, String> = BTreeMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
            continue;
        }
        let Some((res_text, label)) = trimmed.split_once('\t') else {
            return Err(LabelError::Malformed {
                line: lineno,
                text: trimmed.to_string(),
            });
        };
        let label = label.trim();
        let resource = parse_resource(res_text.trim()).ok_or_else(|| LabelError::Malformed {
            line: lineno,
            text: trimmed.to_string(),
        })?;
        if label.is_empty() {
            return Err(LabelError::Malformed {
                line: lineno,
                text: trimmed.to_string(),
            });
        }
        if let Some(old) = entries.get(&resource) {
            if *old != label {
                return Err(LabelError::Conflict {
                    line: lineno,
                    resource: resource.to_string(),
                    old: old.clone(),
                    new: label.to_string(),
                });
            }
        } else {
            entries.insert(resource, label.to_string());
        }
    }
    Ok(LabeledResources::from_map(entries))
}

pub fn load_labels_str(text: &str) -> Result<LabeledResources, LabelError> {
    load_labels(text.as_bytes())
}

fn parse_resource(text: &str) -> Option<Term> {
    if let Some(rest) = text.strip_prefix('<') {
        let iri = rest.strip_suffix('>')?;
        if iri.is_empty() {
            return None;
        }
        Some(Term::iri(iri))
    } else if let Some(label) = text.strip_prefix("_:") {
        if label.is_empty() {
            return None;
        }
        Some(Term::blank(label))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_entries_sorted_classes() {
        let l = load_labels_str("<apple>\tfruit\n<monkey>\tanimal\n").unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.classes(), &["animal".to_string(), "fruit".to_string()]);
        assert_eq!(l.class_index(&Term::iri("apple")), Some(1));
        assert_eq!(l.class_index(&Term::iri("monkey")), Some(0));
    }

    #[test]
    fn duplicate_identical_line_is_idempotent() {
        let l = load_labels_str("<apple>\tfruit\n<apple>\tfruit\n").unwrap();
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn conflicting_label_is_an_error() {
        let err = load_labels_str("<apple>\tfruit\n<apple>\tanimal\n").unwrap_err();
        assert!(matches!(err, LabelError::Conflict { line: 2, .. }));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load_labels_str("<apple> fruit\n").unwrap_err();
        assert!(matches!(err, LabelError::Malformed { line: 1, .. }));
    }

    #[test]
    fn blank_node_resources_are_accepted() {
        let l = load_labels_str("_:b0\tx\n").unwrap();
        assert!(l.contains(&Term::blank("b0")));
    }
}
