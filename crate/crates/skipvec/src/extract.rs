//! Per-resource feature extraction for the nine Skip patterns.
//!
//! Depth-1 patterns read the outgoing `(p, o)` pairs of the resource;
//! depth-2 patterns chain one step further: `*p`/`*o`/`*po` continue from
//! every depth-1 object regardless of the predicate that reached it, while
//! `pp`/`ppo`/`p*o` retain the depth-1 predicate. The subject position is
//! always variable, so features never embed the resource identity and are
//! shared across resources.

use std::collections::{HashMap, HashSet};

use arrayvec::ArrayVec;

use crate::pattern::SkipPattern;
use crate::rdf::{Graph, Term, TermId};

/// One extracted Skip-pattern instance: the pattern tag plus the terms
/// bound to its non-variable positions, in pattern order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Feature {
    pub pattern: SkipPattern,
    pub slots: ArrayVec<TermId, 3>,
}

impl Feature {
    pub fn new(pattern: SkipPattern, slots: impl IntoIterator<Item = TermId>) -> Feature {
        let slots: ArrayVec<TermId, 3> = slots.into_iter().collect();
        debug_assert_eq!(slots.len(), pattern.arity());
        Feature { pattern, slots }
    }

    /// Stable dictionary key: `tag|slot1|slot2|...` with slots rendered as
    /// N-Triples tokens. Injective over features of one graph.
    pub fn canonical(&self, g: &Graph) -> String {
        let mut out = self.pattern.tag().to_string();
        for &slot in &self.slots {
            out.push('|');
            out.push_str(&g.term(slot).to_string());
        }
        out
    }
}

/// All features of one pattern for one resource.
#[derive(Debug, Clone)]
pub struct FeatureSet {
    pub resource: Term,
    pub pattern: SkipPattern,
    pub features: HashSet<Feature>,
}

/// Extracts the feature set of `sp` for resource `s`. A resource absent
/// from the graph yields the empty set.
pub fn extract(g: &Graph, s: &Term, sp: SkipPattern) -> FeatureSet {
    let features = match g.term_id(s) {
        Some(id) => extract_ids(g, id, sp),
        None => HashSet::new(),
    };
    FeatureSet {
        resource: s.clone(),
        pattern: sp,
        features,
    }
}

fn extract_ids(g: &Graph, s: TermId, sp: SkipPattern) -> HashSet<Feature> {
    let mut out = HashSet::new();
    let first = g.outgoing_ids(s);
    match sp {
        SkipPattern::P => {
            for &(p, _) in first {
                out.insert(Feature::new(sp, [p]));
            }
        }
        SkipPattern::O => {
            for &(_, o) in first {
                out.insert(Feature::new(sp, [o]));
            }
        }
        SkipPattern::Po => {
            for &(p, o) in first {
                out.insert(Feature::new(sp, [p, o]));
            }
        }
        SkipPattern::StarP | SkipPattern::StarO | SkipPattern::StarPo => {
            let mut seen: HashSet<TermId> = HashSet::new();
            for &(_, o) in first {
                if !seen.insert(o) {
                    continue;
                }
                for &(p2, o2) in g.outgoing_ids(o) {
                    match sp {
                        SkipPattern::StarP => out.insert(Feature::new(sp, [p2])),
                        SkipPattern::StarO => out.insert(Feature::new(sp, [o2])),
                        SkipPattern::StarPo => out.insert(Feature::new(sp, [p2, o2])),
                        _ => unreachable!(),
                    };
                }
            }
        }
        SkipPattern::Pp | SkipPattern::Ppo | SkipPattern::PStarO => {
            for &(p1, o1) in first {
                for &(p2, o2) in g.outgoing_ids(o1) {
                    match sp {
                        SkipPattern::Pp => out.insert(Feature::new(sp, [p1, p2])),
                        SkipPattern::Ppo => out.insert(Feature::new(sp, [p1, p2, o2])),
                        SkipPattern::PStarO => out.insert(Feature::new(sp, [p1, o2])),
                        _ => unreachable!(),
                    };
                }
            }
        }
    }
    out
}

/// All nine per-pattern feature sets of one resource, in canonical
/// pattern order.
pub fn extract_all(g: &Graph, s: &Term) -> Vec<HashSet<Feature>> {
    let id = g.term_id(s);
    SkipPattern::ALL
        .iter()
        .map(|&sp| match id {
            Some(id) => extract_ids(g, id, sp),
            None => HashSet::new(),
        })
        .collect()
}

/// Union of one pattern's features over a resource set, with per-resource
/// membership (indices into the input slice) for downstream counting.
#[derive(Debug, Clone)]
pub struct UnionFeatures {
    pub pattern: SkipPattern,
    pub membership: HashMap<Feature, Vec<usize>>,
}

impl UnionFeatures {
    /// The feature union, sorted by canonical string form.
    pub fn features_sorted(&self, g: &Graph) -> Vec<Feature> {
        let mut feats: Vec<(String, Feature)> = self
            .membership
            .keys()
            .map(|f| (f.canonical(g), f.clone()))
            .collect();
        feats.sort_by(|a, b| a.0.cmp(&b.0));
        feats.into_iter().map(|(_, f)| f).collect()
    }

    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    pub fn occurrence(&self, f: &Feature) -> usize {
        self.membership.get(f).map(Vec::len).unwrap_or(0)
    }
}

pub fn extract_union(g: &Graph, resources: &[Term], sp: SkipPattern) -> UnionFeatures {
    let mut membership: HashMap<Feature, Vec<usize>> = HashMap::new();
    for (idx, r) in resources.iter().enumerate() {
        let set = extract(g, r, sp);
        for f in set.features {
            membership.entry(f).or_default().push(idx);
        }
    }
    UnionFeatures {
        pattern: sp,
        membership,
    }
}
