//! Exhaustive counting oracles for the Walk, PRO, Skip, and Subtree
//! feature families.
//!
//! These generate features by blunt enumeration — walks first, then every
//! admissible variable substitution — and exist to cross-check the direct
//! per-pattern extraction in [`crate::extract`] and the complexity bounds
//! it relies on. They are deliberately independent of that code path and
//! refuse inputs past small depth/size limits.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::extract::Feature;
use crate::pattern::SkipPattern;
use crate::rdf::{Graph, Term, TermId};

/// A triple chain from a start resource: elements `⟨s, p1, o1, ..., pd, od⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub elements: Vec<Term>,
}

impl Walk {
    pub fn depth(&self) -> usize {
        (self.elements.len() - 1) / 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleFamily {
    Walk,
    Pro,
    Skip,
    Subtree,
}

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("oracle depth limit exceeded for {family}: d_max={requested} > {limit}")]
    DepthLimit {
        family: &'static str,
        requested: u32,
        limit: u32,
    },
    #[error("subtree oracle requires at most {limit} distinct predicate-object pairs, graph has {actual}")]
    SubtreeSize { limit: usize, actual: usize },
}

/// Every triple chain of depth 1..=d_max starting at `s`, in deterministic
/// order. Chains may revisit nodes; depth-0 walks are excluded.
pub fn enumerate_walks(g: &Graph, s: &Term, d_max: u32) -> Vec<Walk> {
    let Some(start) = g.term_id(s) else {
        return Vec::new();
    };
    let mut walks = Vec::new();
    let mut prefix = vec![start];
    walk_dfs(g, start, d_max, &mut prefix, &mut walks);
    walks
        .into_iter()
        .map(|ids| Walk {
            elements: ids.into_iter().map(|id| g.term(id).clone()).collect(),
        })
        .collect()
}

fn walk_dfs(
    g: &Graph,
    node: TermId,
    remaining: u32,
    prefix: &mut Vec<TermId>,
    out: &mut Vec<Vec<TermId>>,
) {
    if remaining == 0 {
        return;
    }
    for &(p, o) in g.outgoing_ids(node) {
        prefix.push(p);
        prefix.push(o);
        out.push(prefix.clone());
        walk_dfs(g, o, remaining - 1, prefix, out);
        prefix.pop();
        prefix.pop();
    }
}

/// Exact per-depth feature counts for one family, via exhaustive
/// generation. Depths with no features are omitted from the map.
pub fn oracle_count(
    g: &Graph,
    s: &Term,
    family: OracleFamily,
    d_max: u32,
) -> Result<BTreeMap<u32, u64>, OracleError> {
    match family {
        OracleFamily::Walk | OracleFamily::Pro | OracleFamily::Skip => {
            let name = match family {
                OracleFamily::Walk => "walk",
                OracleFamily::Pro => "pro",
                OracleFamily::Skip => "skip",
                OracleFamily::Subtree => unreachable!(),
            };
            if d_max > 3 {
                return Err(OracleError::DepthLimit {
                    family: name,
                    requested: d_max,
                    limit: 3,
                });
            }
        }
        OracleFamily::Subtree => {
            if d_max > 2 {
                return Err(OracleError::DepthLimit {
                    family: "subtree",
                    requested: d_max,
                    limit: 2,
                });
            }
            let pairs = distinct_pairs(g);
            if pairs > 4 {
                return Err(OracleError::SubtreeSize {
                    limit: 4,
                    actual: pairs,
                });
            }
        }
    }

    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    match family {
        OracleFamily::Walk => {
            for walk in enumerate_walks(g, s, d_max) {
                *counts.entry(walk.depth() as u32).or_insert(0) += 1;
            }
        }
        OracleFamily::Pro => {
            for (depth, pros) in pros_by_depth(g, s, d_max) {
                counts.insert(depth, pros.len() as u64);
            }
        }
        OracleFamily::Skip => {
            for (depth, skips) in skips_by_depth(g, s, d_max) {
                counts.insert(depth, skips.len() as u64);
            }
        }
        OracleFamily::Subtree => {
            for (depth, trees) in subtrees_by_depth(g, s, d_max) {
                counts.insert(depth, trees.len() as u64);
            }
        }
    }
    Ok(counts)
}

fn distinct_pairs(g: &Graph) -> usize {
    let mut pairs = HashSet::new();
    for t in g.triples() {
        pairs.insert((t.predicate().clone(), t.object().clone()));
    }
    pairs.len()
}

/// A PRO: the predicate sequence of a walk plus its terminal object.
type Pro = (Vec<TermId>, TermId);

fn pros_by_depth(g: &Graph, s: &Term, d_max: u32) -> BTreeMap<u32, HashSet<Pro>> {
    let mut out: BTreeMap<u32, HashSet<Pro>> = BTreeMap::new();
    let Some(start) = g.term_id(s) else {
        return out;
    };
    let mut walks = Vec::new();
    let mut prefix = vec![start];
    walk_dfs(g, start, d_max, &mut prefix, &mut walks);
    for walk in walks {
        let depth = ((walk.len() - 1) / 2) as u32;
        let preds: Vec<TermId> = walk[1..].iter().step_by(2).copied().collect();
        let terminal = *walk.last().unwrap();
        out.entry(depth).or_default().insert((preds, terminal));
    }
    out
}

/// A Skip as a slot sequence `[p1, o1, ..., pd, od]` with `None` for the
/// variable `*`. The leading subject slot is always variable and omitted.
type SkipSeq = Vec<Option<TermId>>;

fn skips_by_depth(g: &Graph, s: &Term, d_max: u32) -> BTreeMap<u32, HashSet<SkipSeq>> {
    let mut out: BTreeMap<u32, HashSet<SkipSeq>> = BTreeMap::new();
    for (depth, pros) in pros_by_depth(g, s, d_max) {
        let slot = out.entry(depth).or_default();
        let d = depth as usize;
        for (preds, terminal) in pros {
            // Every skip function over the d predicates and the terminal
            // object, except those erasing both terminal positions.
            for mask in 0..(1u32 << (d + 1)) {
                let drops_terminal_pred = mask & (1 << (d - 1)) != 0;
                let drops_object = mask & (1 << d) != 0;
                if drops_terminal_pred && drops_object {
                    continue;
                }
                let mut seq: SkipSeq = Vec::with_capacity(2 * d);
                for (i, &p) in preds.iter().enumerate() {
                    seq.push(if mask & (1 << i) != 0 { None } else { Some(p) });
                    // Intermediate objects are already variables in a PRO.
                    seq.push(if i + 1 == d && !drops_object {
                        Some(terminal)
                    } else {
                        None
                    });
                }
                slot.insert(seq);
            }
        }
    }
    out.retain(|_, set| !set.is_empty());
    out
}

/// Classifies every depth ≤ 2 Skip produced by the exhaustive oracle into
/// its production pattern. The independent counterpart of
/// [`crate::extract::extract`].
pub fn skip_oracle_features(g: &Graph, s: &Term) -> HashMap<SkipPattern, HashSet<Feature>> {
    let mut out: HashMap<SkipPattern, HashSet<Feature>> = HashMap::new();
    for sp in SkipPattern::ALL {
        out.insert(sp, HashSet::new());
    }
    for (depth, skips) in skips_by_depth(g, s, 2) {
        for seq in skips {
            let kept: Vec<bool> = seq.iter().step_by(2).map(Option::is_some).collect();
            let keeps_object = seq.last().unwrap().is_some();
            let pattern = SkipPattern::ALL
                .into_iter()
                .find(|p| {
                    p.depth() == depth
                        && p.kept_predicates() == kept.as_slice()
                        && p.keeps_object() == keeps_object
                })
                .expect("every admissible skip shape at depth <= 2 is a production pattern");
            let slots = seq.iter().filter_map(|slot| *slot);
            out.get_mut(&pattern).unwrap().insert(Feature::new(pattern, slots));
        }
    }
    out
}

/// A depth ≤ 2 subtree: chosen depth-1 pairs, each with a chosen set of
/// depth-2 child pairs, in canonical order.
type Subtree = Vec<((TermId, TermId), Vec<(TermId, TermId)>)>;

fn subtrees_by_depth(g: &Graph, s: &Term, d_max: u32) -> BTreeMap<u32, HashSet<Subtree>> {
    let mut out: BTreeMap<u32, HashSet<Subtree>> = BTreeMap::new();
    let Some(start) = g.term_id(s) else {
        return out;
    };
    if d_max == 0 {
        return out;
    }
    let first = g.outgoing_ids(start);
    let k = first.len();
    for mask in 1u32..(1 << k) {
        let chosen: Vec<(TermId, TermId)> = (0..k)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| first[i])
            .collect();
        let mut configs: Vec<Subtree> = vec![Vec::new()];
        for &(p, o) in &chosen {
            let children = if d_max >= 2 { g.outgoing_ids(o) } else { &[] };
            let mut next = Vec::new();
            for cfg in &configs {
                for cmask in 0u32..(1 << children.len()) {
                    let picked: Vec<(TermId, TermId)> = (0..children.len())
                        .filter(|i| cmask & (1 << i) != 0)
                        .map(|i| children[i])
                        .collect();
                    let mut cfg = cfg.clone();
                    cfg.push(((p, o), picked));
                    next.push(cfg);
                }
            }
            configs = next;
        }
        for cfg in configs {
            let depth = if cfg.iter().any(|(_, kids)| !kids.is_empty()) {
                2
            } else {
                1
            };
            out.entry(depth).or_default().insert(cfg);
        }
    }
    out
}

/// Closed-form complexity ceilings, for bound checks against the oracle.
pub mod bounds {
    /// Walks at exactly depth d never exceed (m·n)^d.
    pub fn walk_per_depth(m: u64, n: u64, d: u32) -> u128 {
        (m as u128 * n as u128).pow(d)
    }

    /// PROs at exactly depth d never exceed m^d · n.
    pub fn pro_per_depth(m: u64, n: u64, d: u32) -> u128 {
        (m as u128).pow(d) * n as u128
    }

    /// Skips up to depth d never exceed (m + n + mn)(2 + m)^(d-1).
    pub fn skip_cumulative(m: u64, n: u64, d: u32) -> u128 {
        let (m, n) = (m as u128, n as u128);
        (m + n + m * n) * (2 + m).pow(d - 1)
    }
}
