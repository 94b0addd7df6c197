//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line (visible with `--nocapture`). Expected values are either
//! exact by construction or recomputed here by independent brute force.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::time::Instant;

use skipvec::cli::{cmd_evaluate, cmd_select, cmd_vectorize};
use skipvec::config::RunConfig;
use skipvec::extract::{extract, Feature};
use skipvec::infogain::{conditional_entropy, entropy, gain_ratio, split_info, FeatureStats};
use skipvec::learn::{knn_predict, subseed, Dataset};
use skipvec::oracle::{bounds, oracle_count, skip_oracle_features, OracleFamily};
use skipvec::pattern::{pattern_census, SkipPattern};
use skipvec::pipeline::{build_cache, select_for_rows, rows_from_cache};
use skipvec::rdf::{parse_ntriples_str, Graph, Term};
use skipvec::synthetic::{generate, random_graph, shuffle_labels, BenchmarkConfig};
use skipvec::vector::{build_index, export_rows, import_sparse_str, vectorize};

const FRUITS: &str = include_str!("data/fruits.nt");
const FRUITS_LABELS: &str = include_str!("data/fruits_labels.tsv");

fn ex(name: &str) -> Term {
    Term::iri(format!("http://example.org/{name}"))
}

fn feature(g: &Graph, sp: SkipPattern, slots: &[&Term]) -> Feature {
    Feature::new(sp, slots.iter().map(|t| g.term_id(t).unwrap()))
}

fn set(features: Vec<Feature>) -> BTreeSet<Feature> {
    features.into_iter().collect()
}

#[test]
fn criterion_1_figure_fixture_fidelity() {
    let start = Instant::now();
    let g = parse_ntriples_str(FRUITS).unwrap();
    let apple = ex("apple");
    let rdf_type = Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    let subclass = Term::iri("http://www.w3.org/2000/01/rdf-schema#subClassOf");
    let (color, shape, taste) = (ex("color"), ex("shape"), ex("taste"));
    let (red, green, sphere, sweet) = (ex("red"), ex("green"), ex("sphere"), ex("sweet"));
    let (fruits, foods) = (ex("fruits"), ex("foods"));

    let got = |sp| set(extract(&g, &apple, sp).features.into_iter().collect());

    assert_eq!(
        got(SkipPattern::P),
        set(vec![
            feature(&g, SkipPattern::P, &[&color]),
            feature(&g, SkipPattern::P, &[&shape]),
            feature(&g, SkipPattern::P, &[&taste]),
            feature(&g, SkipPattern::P, &[&rdf_type]),
        ])
    );
    assert_eq!(
        got(SkipPattern::O),
        set(vec![
            feature(&g, SkipPattern::O, &[&red]),
            feature(&g, SkipPattern::O, &[&green]),
            feature(&g, SkipPattern::O, &[&fruits]),
            feature(&g, SkipPattern::O, &[&sphere]),
            feature(&g, SkipPattern::O, &[&sweet]),
        ])
    );
    assert_eq!(
        got(SkipPattern::Po),
        set(vec![
            feature(&g, SkipPattern::Po, &[&color, &green]),
            feature(&g, SkipPattern::Po, &[&color, &red]),
            feature(&g, SkipPattern::Po, &[&shape, &sphere]),
            feature(&g, SkipPattern::Po, &[&taste, &sweet]),
            feature(&g, SkipPattern::Po, &[&rdf_type, &fruits]),
        ])
    );
    assert_eq!(
        got(SkipPattern::StarO),
        set(vec![feature(&g, SkipPattern::StarO, &[&foods])])
    );
    assert_eq!(
        got(SkipPattern::StarPo),
        set(vec![feature(&g, SkipPattern::StarPo, &[&subclass, &foods])])
    );
    assert_eq!(
        got(SkipPattern::Ppo),
        set(vec![feature(
            &g,
            SkipPattern::Ppo,
            &[&rdf_type, &subclass, &foods]
        )])
    );
    assert_eq!(
        got(SkipPattern::PStarO),
        set(vec![feature(&g, SkipPattern::PStarO, &[&rdf_type, &foods])])
    );
    assert_eq!(
        got(SkipPattern::StarP),
        set(vec![feature(&g, SkipPattern::StarP, &[&subclass])])
    );
    assert_eq!(
        got(SkipPattern::Pp),
        set(vec![feature(&g, SkipPattern::Pp, &[&rdf_type, &subclass])])
    );

    // V_p(apple) over the fixed seven-feature sequence.
    let sequence: Vec<Feature> = [&color, &shape, &rdf_type, &ex("like"), &ex("live"), &taste, &ex("climb")]
        .iter()
        .map(|t| feature(&g, SkipPattern::P, &[t]))
        .collect();
    let index = build_index(&g, vec![(SkipPattern::P, sequence)]).unwrap();
    let v = vectorize(&g, &apple, &index, 1.0).unwrap();
    let dense: Vec<f64> = (0..7).map(|i| v.values.get(&i).copied().unwrap_or(0.0)).collect();
    assert_eq!(dense, vec![1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0]);

    assert!(start.elapsed().as_secs() < 1, "took {:?}", start.elapsed());
    println!("PASS criterion 1: fixture feature sets and V_p vector reproduced exactly");
}

#[test]
fn criterion_2_pattern_census() {
    for (d, expected) in [(1u32, 3usize), (2, 9), (3, 21), (4, 45)] {
        let total: usize = pattern_census(d).iter().map(Vec::len).sum();
        assert_eq!(total, expected, "census total at depth {d}");
    }
    let tags: BTreeSet<String> = pattern_census(2)
        .iter()
        .flatten()
        .map(|p| p.abbreviation())
        .collect();
    let expected: BTreeSet<String> = ["p", "o", "po", "*p", "*o", "*po", "pp", "ppo", "p*o"]
        .into_iter()
        .map(String::from)
        .collect();
    assert_eq!(tags, expected);
    println!("PASS criterion 2: census totals 3/9/21/45 and the nine depth<=2 tags match");
}

#[test]
fn criterion_3_oracle_equivalence_and_bounds() {
    let start = Instant::now();
    let mut subjects_checked = 0usize;
    for gi in 0..100u64 {
        let g = random_graph(subseed(2024, gi), 30, 5);
        let m = g.predicate_count() as u64;
        let n = g.object_count() as u64;
        let mut subjects: Vec<Term> = g.triples().map(|t| t.subject().clone()).collect();
        subjects.sort();
        subjects.dedup();
        for s in subjects {
            subjects_checked += 1;
            let oracle_sets = skip_oracle_features(&g, &s);
            for sp in SkipPattern::ALL {
                assert_eq!(
                    extract(&g, &s, sp).features,
                    oracle_sets[&sp],
                    "graph {gi}, subject {s}, pattern {sp}"
                );
            }
            let walk = oracle_count(&g, &s, OracleFamily::Walk, 2).unwrap();
            for (&d, &count) in &walk {
                assert!(u128::from(count) <= bounds::walk_per_depth(m, n, d));
            }
            let pro = oracle_count(&g, &s, OracleFamily::Pro, 2).unwrap();
            for (&d, &count) in &pro {
                assert!(u128::from(count) <= bounds::pro_per_depth(m, n, d));
            }
            let skip = oracle_count(&g, &s, OracleFamily::Skip, 2).unwrap();
            let cumulative: u64 = skip.values().sum();
            assert!(u128::from(cumulative) <= bounds::skip_cumulative(m, n, 2));
        }
    }
    assert!(start.elapsed().as_secs() < 60, "took {:?}", start.elapsed());
    println!(
        "PASS criterion 3: extraction matches the skip oracle and all bounds hold \
         on 100 graphs ({subjects_checked} subjects)"
    );
}

/// Independent recomputation of all four information quantities straight
/// from a raw membership table, using a different algebraic route for the
/// entropy: H = log2(K) - (1/K) * sum k_c * log2(k_c).
mod brute {
    pub fn entropy(counts: &[u64]) -> f64 {
        let total: u64 = counts.iter().sum();
        assert!(total > 0);
        let k = total as f64;
        let sum: f64 = counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| c as f64 * (c as f64).log2())
            .sum();
        k.log2() - sum / k
    }

    /// labels[i] is resource i's class; possessed[i] says whether it has
    /// the feature. Returns (base, conditional, split, gain_ratio).
    pub fn quantities(labels: &[usize], possessed: &[bool], n_classes: usize) -> (f64, f64, f64, f64) {
        let count = |rows: &[usize]| -> Vec<u64> {
            let mut c = vec![0u64; n_classes];
            for &r in rows {
                c[labels[r]] += 1;
            }
            c
        };
        let all: Vec<usize> = (0..labels.len()).collect();
        let with: Vec<usize> = all.iter().copied().filter(|&r| possessed[r]).collect();
        let without: Vec<usize> = all.iter().copied().filter(|&r| !possessed[r]).collect();
        let base = entropy(&count(&all));
        let total = labels.len() as f64;
        let mut conditional = 0.0;
        for side in [&with, &without] {
            if !side.is_empty() {
                conditional += side.len() as f64 / total * entropy(&count(side));
            }
        }
        let split = entropy(&[with.len() as u64, without.len() as u64]);
        let ratio = if split == 0.0 {
            0.0
        } else {
            (base - conditional) / split
        };
        (base, conditional, split, ratio)
    }
}

#[test]
fn criterion_4_information_gain_against_brute_force() {
    use rand::{Rng, SeedableRng};

    let check = |labels: &[usize], possessed: &[bool], n_classes: usize| {
        let (b_base, b_cond, b_split, b_ratio) = brute::quantities(labels, possessed, n_classes);
        let mut with = vec![0u64; n_classes];
        let mut without = vec![0u64; n_classes];
        for (i, &label) in labels.iter().enumerate() {
            if possessed[i] {
                with[label] += 1;
            } else {
                without[label] += 1;
            }
        }
        let totals: Vec<u64> = with.iter().zip(&without).map(|(a, b)| a + b).collect();
        let stats = FeatureStats::new(with, without);
        let base = entropy(&totals).unwrap();
        assert!((base - b_base).abs() < 1e-12);
        assert!((conditional_entropy(&stats).unwrap() - b_cond).abs() < 1e-12);
        assert!((split_info(&stats).unwrap() - b_split).abs() < 1e-12);
        assert!((gain_ratio(&stats, base).unwrap() - b_ratio).abs() < 1e-12);
    };

    // Exhaustive over all (class, possession) assignments for up to five
    // binary-class resources.
    for n in 1..=5usize {
        for code in 0..4usize.pow(n as u32) {
            let mut labels = Vec::with_capacity(n);
            let mut possessed = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                labels.push(c % 2);
                possessed.push((c / 2) % 2 == 1);
                c /= 4;
            }
            check(&labels, &possessed, 2);
        }
    }

    // Randomized tables up to the stated limits: 12 resources, 8
    // features, 3 classes.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    for _ in 0..500 {
        let n = rng.gen_range(2..=12);
        let n_classes = rng.gen_range(2..=3usize);
        let n_features = rng.gen_range(1..=8usize);
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n_classes)).collect();
        for _ in 0..n_features {
            let possessed: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            check(&labels, &possessed, n_classes);
        }
    }

    // Pinned anchors: a perfect splitter scores 1, a universal feature 0.
    let perfect = FeatureStats::new(vec![2, 0], vec![0, 2]);
    assert_eq!(gain_ratio(&perfect, 1.0).unwrap(), 1.0);
    let universal = FeatureStats::new(vec![2, 2], vec![0, 0]);
    assert_eq!(gain_ratio(&universal, 1.0).unwrap(), 0.0);

    println!("PASS criterion 4: info-gain quantities match brute force to 1e-12");
}

fn bench_config(dir: &std::path::Path, graph: &str, labels: &str) -> RunConfig {
    let graph_path = dir.join("bench.nt");
    let labels_path = dir.join("bench.tsv");
    fs::write(&graph_path, graph).unwrap();
    fs::write(&labels_path, labels).unwrap();
    RunConfig {
        graph_path: Some(graph_path),
        labels_path: Some(labels_path),
        out_dir: dir.join("out"),
        seed: 42,
        ..RunConfig::default()
    }
}

fn labels_tsv(labels: &skipvec::LabeledResources) -> String {
    let mut out = String::new();
    for (resource, label) in labels.iter() {
        out.push_str(&format!("{resource}\t{label}\n"));
    }
    out
}

#[test]
fn criterion_5_end_to_end_synthetic_benchmark() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let (g, labels) = generate(&BenchmarkConfig::default());

    let config = bench_config(dir.path(), &g.to_ntriples(), &labels_tsv(&labels));
    let summary = cmd_evaluate(&config).unwrap();
    assert!(
        summary.mean >= 0.99,
        "planted benchmark accuracy {}",
        summary.mean
    );

    // Permutation-null control, averaged over three shuffle seeds.
    let mut null_means = Vec::new();
    for s in 0..3u64 {
        let shuffled = shuffle_labels(&labels, 100 + s);
        let config = bench_config(dir.path(), &g.to_ntriples(), &labels_tsv(&shuffled));
        null_means.push(cmd_evaluate(&config).unwrap().mean);
    }
    let null = null_means.iter().sum::<f64>() / null_means.len() as f64;
    assert!(
        (null - 0.5).abs() <= 0.15,
        "label-shuffled control accuracy {null} (per-seed {null_means:?})"
    );

    assert!(start.elapsed().as_secs() < 120, "took {:?}", start.elapsed());
    println!(
        "PASS criterion 5: planted benchmark mean {:.4} >= 0.99, shuffled control {:.4} in 0.5±0.15",
        summary.mean, null
    );
}

#[test]
fn criterion_6_determinism_and_round_trip() {
    let (g, labels) = generate(&BenchmarkConfig {
        resources_per_class: 25,
        ..BenchmarkConfig::default()
    });
    let graph_text = g.to_ntriples();
    let labels_text = labels_tsv(&labels);

    let run = |dir: &std::path::Path| -> Vec<Vec<u8>> {
        let mut config = bench_config(dir, &graph_text, &labels_text);
        config.lambda = 0.3;
        cmd_select(&config).unwrap();
        cmd_vectorize(&config).unwrap();
        cmd_evaluate(&config).unwrap();
        ["ranking.tsv", "dataset.txt", "dictionary.tsv", "label_map.tsv", "evaluation.tsv"]
            .iter()
            .map(|name| fs::read(config.out_dir.join(name)).unwrap())
            .collect()
    };

    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let a = run(dir_a.path());
    let b = run(dir_b.path());
    assert_eq!(a, b, "artifact files differ between identical runs");

    // export -> import -> export is byte-identical.
    let dataset = String::from_utf8(a[1].clone()).unwrap();
    let rows = import_sparse_str(&dataset, true).unwrap();
    let mut re_exported = Vec::new();
    export_rows(&rows, &mut re_exported).unwrap();
    assert_eq!(re_exported, a[1]);

    println!("PASS criterion 6: identical runs are byte-identical and the dataset round-trips");
}

#[test]
fn criterion_7_lambda_semantics() {
    // Vector side: only depth-2 coordinates change, by exactly lambda.
    let g = parse_ntriples_str(FRUITS).unwrap();
    let labels = skipvec::rdf::load_labels_str(FRUITS_LABELS).unwrap();
    let cache = build_cache(&g, &labels, &SkipPattern::ALL).unwrap();
    let all: Vec<usize> = (0..cache.resources.len()).collect();
    let selection = select_for_rows(&g, &cache, &all, 100, 1).unwrap();
    let depth_of: HashMap<u32, u32> = selection
        .index
        .segments()
        .iter()
        .flat_map(|seg| {
            (0..seg.ordered_features.len() as u32)
                .map(move |i| (seg.offset + i, seg.pattern.depth()))
        })
        .collect();

    let reference = rows_from_cache(&cache, &selection, 1.0, &all);
    for &lambda in &[0.1, 0.5, 1.0] {
        let rows = rows_from_cache(&cache, &selection, lambda, &all);
        for (row, ref_row) in rows.iter().zip(&reference) {
            assert_eq!(row.len(), ref_row.len(), "sparsity changed with lambda");
            for (&(c, v), &(rc, rv)) in row.iter().zip(ref_row) {
                assert_eq!(c, rc);
                match depth_of[&c] {
                    1 => assert_eq!(v, rv),
                    2 => assert_eq!(v, rv * lambda, "coordinate {c}"),
                    d => panic!("unexpected depth {d}"),
                }
            }
        }
    }

    // Prediction side: on a depth-1-only benchmark, KNN predictions are
    // identical for every lambda.
    let (g, labels) = generate(&BenchmarkConfig {
        resources_per_class: 20,
        depth_one_only: true,
        ..BenchmarkConfig::default()
    });
    let cache = build_cache(&g, &labels, &SkipPattern::ALL).unwrap();
    let all: Vec<usize> = (0..cache.resources.len()).collect();
    let (train, test): (Vec<usize>, Vec<usize>) =
        all.iter().partition(|&&r| r % 4 != 0);
    let selection = select_for_rows(&g, &cache, &train, 100, 2).unwrap();

    let predict_all = |lambda: f64| -> Vec<usize> {
        let train_rows = rows_from_cache(&cache, &selection, lambda, &train);
        let train_labels: Vec<usize> = train.iter().map(|&r| cache.classes[r]).collect();
        let train_ds = Dataset::new(
            train_rows,
            train_labels,
            selection.index.total_dim().max(1),
            cache.n_classes,
        )
        .unwrap();
        rows_from_cache(&cache, &selection, lambda, &test)
            .iter()
            .map(|row| knn_predict(&train_ds, row, 5).unwrap())
            .collect()
    };

    let at_one = predict_all(1.0);
    for &lambda in &[0.1, 0.5] {
        assert_eq!(predict_all(lambda), at_one, "lambda {lambda}");
    }

    println!("PASS criterion 7: lambda rescales depth-2 coordinates only; depth-1 predictions are lambda-invariant");
}
