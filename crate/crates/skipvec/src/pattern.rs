//! Skip patterns: the type-level shapes of Skip features, and the census
//! that enumerates them per depth.
//!
//! A depth-d Skip keeps or drops each of the d predicates and the terminal
//! object of a predicate chain (intermediate objects are always dropped),
//! with the constraint that the terminal predicate and terminal object are
//! never both dropped. That yields 3·2^(d-1) shapes at depth d and nine
//! production patterns at depth ≤ 2.

use std::fmt;
use std::str::FromStr;

/// The nine production Skip patterns (depth ≤ 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SkipPattern {
    /// `<*,p,*>`
    P,
    /// `<*,*,o>`
    O,
    /// `<*,p,o>`
    Po,
    /// `<*,*,*,p,*>`
    StarP,
    /// `<*,*,*,*,o>`
    StarO,
    /// `<*,*,*,p,o>`
    StarPo,
    /// `<*,p,*,p,*>`
    Pp,
    /// `<*,p,*,p,o>`
    Ppo,
    /// `<*,p,*,*,o>`
    PStarO,
}

impl SkipPattern {
    /// All nine patterns in canonical order: depth-1 first, then depth-2.
    pub const ALL: [SkipPattern; 9] = [
        SkipPattern::P,
        SkipPattern::O,
        SkipPattern::Po,
        SkipPattern::StarP,
        SkipPattern::StarO,
        SkipPattern::StarPo,
        SkipPattern::Pp,
        SkipPattern::Ppo,
        SkipPattern::PStarO,
    ];

    /// Short tag, e.g. `p`, `*po`, `p*o`.
    pub fn tag(self) -> &'static str {
        match self {
            SkipPattern::P => "p",
            SkipPattern::O => "o",
            SkipPattern::Po => "po",
            SkipPattern::StarP => "*p",
            SkipPattern::StarO => "*o",
            SkipPattern::StarPo => "*po",
            SkipPattern::Pp => "pp",
            SkipPattern::Ppo => "ppo",
            SkipPattern::PStarO => "p*o",
        }
    }

    /// Number of triples the pattern spans (1 or 2).
    pub fn depth(self) -> u32 {
        match self {
            SkipPattern::P | SkipPattern::O | SkipPattern::Po => 1,
            _ => 2,
        }
    }

    /// Number of bound term slots in a feature of this pattern.
    pub fn arity(self) -> usize {
        match self {
            SkipPattern::P | SkipPattern::O | SkipPattern::StarP | SkipPattern::StarO => 1,
            SkipPattern::Po | SkipPattern::StarPo | SkipPattern::Pp | SkipPattern::PStarO => 2,
            SkipPattern::Ppo => 3,
        }
    }

    /// Which of the d predicates are kept, outermost first.
    pub fn kept_predicates(self) -> &'static [bool] {
        match self {
            SkipPattern::P => &[true],
            SkipPattern::O => &[false],
            SkipPattern::Po => &[true],
            SkipPattern::StarP => &[false, true],
            SkipPattern::StarO => &[false, false],
            SkipPattern::StarPo => &[false, true],
            SkipPattern::Pp => &[true, true],
            SkipPattern::Ppo => &[true, true],
            SkipPattern::PStarO => &[true, false],
        }
    }

    /// Whether the terminal object is kept.
    pub fn keeps_object(self) -> bool {
        matches!(
            self,
            SkipPattern::O
                | SkipPattern::Po
                | SkipPattern::StarO
                | SkipPattern::StarPo
                | SkipPattern::Ppo
                | SkipPattern::PStarO
        )
    }

    pub fn from_tag(tag: &str) -> Option<SkipPattern> {
        SkipPattern::ALL.iter().copied().find(|p| p.tag() == tag)
    }
}

impl fmt::Display for SkipPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SkipPattern {
    type Err = String;

    fn from_str(s: &str) -> Result<SkipPattern, String> {
        SkipPattern::from_tag(s).ok_or_else(|| format!("unknown skip pattern tag: {s}"))
    }
}

/// One entry of the pattern census: the shape of a Skip at some depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDescriptor {
    pub depth: u32,
    /// Kept/dropped flag per predicate position, outermost first.
    pub kept_predicates: Vec<bool>,
    pub keeps_object: bool,
}

impl PatternDescriptor {
    /// Compact tag. A leading run of dropped predicates collapses to a
    /// single `*`, a dropped terminal object is silent, and the depth-1
    /// object-only shape is written `o`. Within one depth this naming is
    /// injective.
    pub fn abbreviation(&self) -> String {
        let mut raw = String::new();
        for &kept in &self.kept_predicates {
            raw.push(if kept { 'p' } else { '*' });
        }
        if self.keeps_object {
            raw.push('o');
        }
        let leading = raw.chars().take_while(|&c| c == '*').count();
        let out = if leading > 1 {
            format!("*{}", &raw[leading..])
        } else {
            raw
        };
        if self.depth == 1 && out == "*o" {
            return "o".to_string();
        }
        out
    }

    /// Full element-sequence form, e.g. `<*,p,*,*,o>`.
    pub fn sequence_form(&self) -> String {
        let mut parts = vec!["*".to_string()];
        let d = self.kept_predicates.len();
        for (i, &kept) in self.kept_predicates.iter().enumerate() {
            parts.push(if kept { "p".to_string() } else { "*".to_string() });
            if i + 1 < d {
                parts.push("*".to_string());
            }
        }
        parts.push(if self.keeps_object {
            "o".to_string()
        } else {
            "*".to_string()
        });
        format!("<{}>", parts.join(","))
    }

    pub fn as_production_pattern(&self) -> Option<SkipPattern> {
        SkipPattern::ALL.iter().copied().find(|p| {
            p.depth() == self.depth
                && p.kept_predicates() == self.kept_predicates.as_slice()
                && p.keeps_object() == self.keeps_object
        })
    }
}

/// Enumerates every Skip-pattern shape of depth 1..=d_max, grouped by
/// depth. Depth d+1 shapes are the depth-d shapes with one more kept or
/// dropped predicate prepended, which doubles the count per depth; the
/// grand total up to depth d is 3·2^d − 3.
pub fn pattern_census(d_max: u32) -> Vec<Vec<PatternDescriptor>> {
    assert!(d_max >= 1, "census depth must be at least 1");
    let base = vec![
        PatternDescriptor {
            depth: 1,
            kept_predicates: vec![true],
            keeps_object: false,
        },
        PatternDescriptor {
            depth: 1,
            kept_predicates: vec![false],
            keeps_object: true,
        },
        PatternDescriptor {
            depth: 1,
            kept_predicates: vec![true],
            keeps_object: true,
        },
    ];
    let mut levels = vec![base];
    for depth in 2..=d_max {
        let prev = levels.last().unwrap();
        let mut next = Vec::with_capacity(prev.len() * 2);
        for lead in [true, false] {
            for pat in prev {
                let mut kept = Vec::with_capacity(pat.kept_predicates.len() + 1);
                kept.push(lead);
                kept.extend_from_slice(&pat.kept_predicates);
                next.push(PatternDescriptor {
                    depth,
                    kept_predicates: kept,
                    keeps_object: pat.keeps_object,
                });
            }
        }
        levels.push(next);
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn census_totals_match_closed_form() {
        for d in 1..=4u32 {
            let total: usize = pattern_census(d).iter().map(Vec::len).sum();
            assert_eq!(total, 3 * 2usize.pow(d) - 3, "depth {d}");
        }
    }

    #[test]
    fn depth_one_census_is_p_o_po() {
        let levels = pattern_census(1);
        let tags: BTreeSet<String> = levels[0].iter().map(|p| p.abbreviation()).collect();
        assert_eq!(tags, ["o", "p", "po"].map(String::from).into());
    }

    #[test]
    fn depth_two_census_matches_the_nine_production_tags() {
        let levels = pattern_census(2);
        let tags: BTreeSet<String> = levels
            .iter()
            .flatten()
            .map(|p| p.abbreviation())
            .collect();
        let expected: BTreeSet<String> = SkipPattern::ALL
            .iter()
            .map(|p| p.tag().to_string())
            .collect();
        assert_eq!(tags, expected);
        for desc in levels.iter().flatten() {
            let pat = desc.as_production_pattern().expect("production pattern");
            assert_eq!(pat.tag(), desc.abbreviation());
        }
    }

    #[test]
    fn abbreviations_are_unique_within_each_depth() {
        for level in pattern_census(5) {
            let tags: BTreeSet<String> = level.iter().map(|p| p.abbreviation()).collect();
            assert_eq!(tags.len(), level.len());
        }
    }

    #[test]
    fn sequence_forms_for_table_entries() {
        let find = |tag: &str| -> PatternDescriptor {
            pattern_census(2)
                .into_iter()
                .flatten()
                .find(|p| p.abbreviation() == tag)
                .unwrap()
        };
        assert_eq!(find("p").sequence_form(), "<*,p,*>");
        assert_eq!(find("o").sequence_form(), "<*,*,o>");
        assert_eq!(find("*p").sequence_form(), "<*,*,*,p,*>");
        assert_eq!(find("*o").sequence_form(), "<*,*,*,*,o>");
        assert_eq!(find("ppo").sequence_form(), "<*,p,*,p,o>");
        assert_eq!(find("p*o").sequence_form(), "<*,p,*,*,o>");
    }

    #[test]
    fn pattern_tags_round_trip() {
        for p in SkipPattern::ALL {
            assert_eq!(SkipPattern::from_tag(p.tag()), Some(p));
            assert_eq!(p.tag().parse::<SkipPattern>().unwrap(), p);
        }
        assert!(SkipPattern::from_tag("pq").is_none());
    }
}
