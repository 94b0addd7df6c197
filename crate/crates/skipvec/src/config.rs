//! Run configuration: a line-based `key = value` file with CLI-flag
//! overrides. Unknown keys are rejected; numeric ranges are validated
//! before a command runs.

use std::path::PathBuf;
use std::str::FromStr;

use crate::pattern::SkipPattern;
use crate::pipeline::{Learner, PipelineConfig};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config line {line}: expected `key = value`: {text}")]
    Malformed { line: usize, text: String },
    #[error("unknown config key: {0}")]
    UnknownKey(String),
    #[error("invalid value for {key}: {value} ({reason})")]
    BadValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("{0}")]
    Invalid(String),
}

/// Which classifier drives evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LearnerKind {
    Knn,
    Tree,
    Forest,
    AdaBoost,
}

impl FromStr for LearnerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<LearnerKind, String> {
        match s {
            "knn" => Ok(LearnerKind::Knn),
            "tree" => Ok(LearnerKind::Tree),
            "rf" => Ok(LearnerKind::Forest),
            "ada" => Ok(LearnerKind::AdaBoost),
            other => Err(format!(
                "unknown learner `{other}` (expected knn, tree, rf, or ada)"
            )),
        }
    }
}

impl LearnerKind {
    pub fn name(self) -> &'static str {
        match self {
            LearnerKind::Knn => "knn",
            LearnerKind::Tree => "tree",
            LearnerKind::Forest => "rf",
            LearnerKind::AdaBoost => "ada",
        }
    }
}

/// Complete run configuration with defaults mirroring the standard
/// experimental setup: all nine patterns, top 100 features per pattern,
/// λ = 1, singleton filtering, KNN with k = 5, 10-fold CV.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub graph_path: Option<PathBuf>,
    pub labels_path: Option<PathBuf>,
    pub leak_predicates: Vec<String>,
    pub patterns: Vec<SkipPattern>,
    pub top_n: usize,
    pub lambda: f64,
    pub min_count: usize,
    pub learner: LearnerKind,
    pub k: usize,
    pub trees: usize,
    pub weak_depth: u32,
    pub rounds: usize,
    pub max_depth: Option<u32>,
    pub min_leaf: usize,
    pub folds: usize,
    pub split: Option<f64>,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub global_selection: bool,
    pub oracle_graphs: usize,
    pub oracle_depth: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            graph_path: None,
            labels_path: None,
            leak_predicates: Vec::new(),
            patterns: SkipPattern::ALL.to_vec(),
            top_n: 100,
            lambda: 1.0,
            min_count: 2,
            learner: LearnerKind::Knn,
            k: 5,
            trees: 100,
            weak_depth: 1,
            rounds: 50,
            max_depth: None,
            min_leaf: 1,
            folds: 10,
            split: None,
            seed: 0,
            out_dir: PathBuf::from("."),
            global_selection: false,
            oracle_graphs: 100,
            oracle_depth: 2,
        }
    }
}

impl RunConfig {
    /// Applies a `key = value` config file. Later lines override earlier
    /// ones; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Malformed {
                    line: idx + 1,
                    text: raw.to_string(),
                });
            };
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Sets one key, parsing and validating the value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
        where
            T::Err: std::fmt::Display,
        {
            value.parse().map_err(|e: T::Err| ConfigError::BadValue {
                key: key.to_string(),
                value: value.to_string(),
                reason: e.to_string(),
            })
        }

        match key {
            "graph" => self.graph_path = Some(PathBuf::from(value)),
            "labels" => self.labels_path = Some(PathBuf::from(value)),
            "leak_predicates" => {
                self.leak_predicates = split_list(value);
            }
            "patterns" => {
                let mut patterns = Vec::new();
                for tag in split_list(value) {
                    patterns.push(parse::<SkipPattern>(key, &tag)?);
                }
                self.patterns = normalize_patterns(patterns);
            }
            "top_n" => self.top_n = parse(key, value)?,
            "lambda" => self.lambda = parse(key, value)?,
            "min_count" => self.min_count = parse(key, value)?,
            "learner" => self.learner = parse(key, value)?,
            "k" => self.k = parse(key, value)?,
            "trees" => self.trees = parse(key, value)?,
            "weak_depth" => self.weak_depth = parse(key, value)?,
            "rounds" => self.rounds = parse(key, value)?,
            "max_depth" => {
                self.max_depth = if value == "none" {
                    None
                } else {
                    Some(parse(key, value)?)
                };
            }
            "min_leaf" => self.min_leaf = parse(key, value)?,
            "folds" => self.folds = parse(key, value)?,
            "split" => self.split = Some(parse(key, value)?),
            "seed" => self.seed = parse(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "global_selection" => self.global_selection = parse(key, value)?,
            "oracle_graphs" => self.oracle_graphs = parse(key, value)?,
            "oracle_depth" => self.oracle_depth = parse(key, value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Range checks shared by every command.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.lambda > 0.0 && self.lambda <= 1.0) {
            return Err(ConfigError::Invalid(format!(
                "lambda must be in (0, 1], got {}",
                self.lambda
            )));
        }
        if self.min_count < 1 {
            return Err(ConfigError::Invalid("min_count must be at least 1".into()));
        }
        if self.k < 1 {
            return Err(ConfigError::Invalid("k must be at least 1".into()));
        }
        if self.trees < 1 {
            return Err(ConfigError::Invalid("trees must be at least 1".into()));
        }
        if !(1..=10).contains(&self.weak_depth) {
            return Err(ConfigError::Invalid(format!(
                "weak_depth must be in 1..=10, got {}",
                self.weak_depth
            )));
        }
        if self.rounds < 1 {
            return Err(ConfigError::Invalid("rounds must be at least 1".into()));
        }
        if self.min_leaf < 1 {
            return Err(ConfigError::Invalid("min_leaf must be at least 1".into()));
        }
        if self.folds < 2 {
            return Err(ConfigError::Invalid(format!(
                "folds must be at least 2, got {}",
                self.folds
            )));
        }
        if let Some(split) = self.split {
            if !(split > 0.0 && split < 1.0) {
                return Err(ConfigError::Invalid(format!(
                    "split must be in (0, 1), got {split}"
                )));
            }
        }
        if self.patterns.is_empty() {
            return Err(ConfigError::Invalid("patterns must not be empty".into()));
        }
        if self.oracle_graphs < 1 {
            return Err(ConfigError::Invalid("oracle_graphs must be at least 1".into()));
        }
        if !(1..=3).contains(&self.oracle_depth) {
            return Err(ConfigError::Invalid(format!(
                "oracle_depth must be in 1..=3, got {}",
                self.oracle_depth
            )));
        }
        Ok(())
    }

    /// Leak predicates as terms; bare strings are taken as IRIs, angle
    /// brackets optional.
    pub fn leak_predicate_terms(&self) -> std::collections::HashSet<crate::rdf::Term> {
        self.leak_predicates
            .iter()
            .map(|p| {
                let iri = p
                    .strip_prefix('<')
                    .and_then(|s| s.strip_suffix('>'))
                    .unwrap_or(p);
                crate::rdf::Term::iri(iri)
            })
            .collect()
    }

    pub fn pipeline_config(&self) -> PipelineConfig {
        let learner = match self.learner {
            LearnerKind::Knn => Learner::Knn { k: self.k },
            LearnerKind::Tree => Learner::Tree {
                max_depth: self.max_depth,
                min_leaf: self.min_leaf,
            },
            LearnerKind::Forest => Learner::Forest {
                n_trees: self.trees,
                max_depth: self.max_depth,
                min_leaf: self.min_leaf,
            },
            LearnerKind::AdaBoost => Learner::AdaBoost {
                weak_depth: self.weak_depth,
                rounds: self.rounds,
            },
        };
        PipelineConfig {
            patterns: self.patterns.clone(),
            top_n: self.top_n,
            lambda: self.lambda,
            min_count: self.min_count,
            global_selection: self.global_selection,
            learner,
        }
    }
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Deduplicates and restores canonical pattern order.
pub fn normalize_patterns(patterns: Vec<SkipPattern>) -> Vec<SkipPattern> {
    SkipPattern::ALL
        .into_iter()
        .filter(|p| patterns.contains(p))
        .collect()
}
