//! Planted-feature benchmark generator.
//!
//! Class membership is equivalent to possession of one planted depth-2
//! chain: positive resources link to a hub whose category is `special`,
//! negative resources to a hub whose category is `ordinary`. Noise triples
//! with a disjoint vocabulary attach to resources and hubs at random, so
//! they can never recreate the planted chain. Generation is a pure
//! function of the config.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rdf::{Graph, LabeledResources, Term, Triple};

const NS: &str = "http://bench.example/";

#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    pub resources_per_class: usize,
    /// Noise triples as a fraction of signal triples.
    pub noise_fraction: f64,
    pub noise_predicates: usize,
    pub noise_objects: usize,
    /// Plant a depth-1 marker instead of the depth-2 chain and keep every
    /// object terminal, so the graph has no depth-2 features at all.
    pub depth_one_only: bool,
    pub seed: u64,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        BenchmarkConfig {
            resources_per_class: 100,
            noise_fraction: 0.2,
            noise_predicates: 8,
            noise_objects: 25,
            depth_one_only: false,
            seed: 0,
        }
    }
}

fn iri(name: impl AsRef<str>) -> Term {
    Term::iri(format!("{NS}{}", name.as_ref()))
}

fn triple(s: &Term, p: &Term, o: &Term) -> Triple {
    Triple::new(s.clone(), p.clone(), o.clone()).expect("generated terms are structurally valid")
}

/// The canonical form of the planted positive-class chain, for tests:
/// `(linksTo, category, special)` as a `ppo` feature.
pub fn planted_ppo_terms() -> (Term, Term, Term) {
    (iri("linksTo"), iri("category"), iri("special"))
}

pub fn generate(config: &BenchmarkConfig) -> (Graph, LabeledResources) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.resources_per_class * 2;
    let links_to = iri("linksTo");
    let category = iri("category");
    let special = iri("special");
    let ordinary = iri("ordinary");
    let flavor = iri("flavor");
    let in_group = iri("inGroup");

    let mut triples = Vec::new();
    let mut labels = Vec::new();
    let mut resources = Vec::new();
    let mut hubs = Vec::new();
    for i in 0..n {
        let res = iri(format!("res{i:04}"));
        let positive = i % 2 == 1;
        labels.push((
            res.clone(),
            if positive { "pos" } else { "neg" }.to_string(),
        ));

        // A label-neutral triple shared across classes.
        triples.push(triple(&res, &in_group, &iri(format!("group{}", i % 3))));

        if config.depth_one_only {
            let marker = if positive { &special } else { &ordinary };
            triples.push(triple(&res, &flavor, marker));
        } else {
            let hub = iri(format!("hub{i:04}"));
            triples.push(triple(&res, &links_to, &hub));
            let marker = if positive { &special } else { &ordinary };
            triples.push(triple(&hub, &category, marker));
            hubs.push(hub);
        }
        resources.push(res);
    }

    let signal = triples.len();
    let noise_target = (config.noise_fraction * signal as f64).ceil() as usize;
    let mut added = 0;
    while added < noise_target {
        let p = iri(format!("noiseP{}", rng.gen_range(0..config.noise_predicates)));
        let o = iri(format!("noiseO{}", rng.gen_range(0..config.noise_objects)));
        let attach_to_hub = !config.depth_one_only && rng.gen_bool(0.5);
        let s = if attach_to_hub {
            hubs.choose(&mut rng).unwrap()
        } else {
            resources.choose(&mut rng).unwrap()
        };
        let t = triple(s, &p, &o);
        triples.push(t);
        added += 1;
    }

    let graph = Graph::from_triples(triples);
    let labels = LabeledResources::from_pairs(labels).expect("generated labels are consistent");
    (graph, labels)
}

/// Small random graph for oracle checks: up to `max_nodes` node IRIs,
/// up to `max_predicates` predicate IRIs, random edges.
pub fn random_graph(seed: u64, max_nodes: usize, max_predicates: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = rng.gen_range(2..=max_nodes.max(2));
    let predicates = rng.gen_range(1..=max_predicates.max(1));
    let edges = rng.gen_range(1..=(nodes * 2));
    let triples: Vec<Triple> = (0..edges)
        .map(|_| {
            triple(
                &iri(format!("n{}", rng.gen_range(0..nodes))),
                &iri(format!("p{}", rng.gen_range(0..predicates))),
                &iri(format!("n{}", rng.gen_range(0..nodes))),
            )
        })
        .collect();
    Graph::from_triples(triples)
}

/// Permutes the labels across resources, keeping the multiset of classes.
pub fn shuffle_labels(labels: &LabeledResources, seed: u64) -> LabeledResources {
    let mut values: Vec<String> = labels.iter().map(|(_, l)| l.to_string()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    values.shuffle(&mut rng);
    labels.with_labels(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::extract;
    use crate::pattern::SkipPattern;
    use crate::Feature;

    #[test]
    fn planted_chain_is_equivalent_to_the_label() {
        let (g, labels) = generate(&BenchmarkConfig::default());
        assert_eq!(labels.len(), 200);
        let (p1, p2, obj) = planted_ppo_terms();
        let planted = Feature::new(
            SkipPattern::Ppo,
            [
                g.term_id(&p1).unwrap(),
                g.term_id(&p2).unwrap(),
                g.term_id(&obj).unwrap(),
            ],
        );
        for (res, label) in labels.iter() {
            let has = extract(&g, res, SkipPattern::Ppo).features.contains(&planted);
            assert_eq!(has, label == "pos", "{res}");
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(&BenchmarkConfig::default());
        let b = generate(&BenchmarkConfig::default());
        assert_eq!(a.0.to_ntriples(), b.0.to_ntriples());
        let c = generate(&BenchmarkConfig {
            seed: 9,
            ..BenchmarkConfig::default()
        });
        assert_ne!(a.0.to_ntriples(), c.0.to_ntriples());
    }

    #[test]
    fn depth_one_variant_has_no_depth_two_features() {
        let cfg = BenchmarkConfig {
            depth_one_only: true,
            resources_per_class: 20,
            ..BenchmarkConfig::default()
        };
        let (g, labels) = generate(&cfg);
        for (res, _) in labels.iter() {
            for sp in SkipPattern::ALL.iter().filter(|p| p.depth() == 2) {
                assert!(extract(&g, res, *sp).features.is_empty());
            }
        }
    }

    #[test]
    fn shuffled_labels_keep_the_class_multiset() {
        let (_, labels) = generate(&BenchmarkConfig {
            resources_per_class: 10,
            ..BenchmarkConfig::default()
        });
        let shuffled = shuffle_labels(&labels, 3);
        assert_eq!(shuffled.len(), labels.len());
        assert_eq!(shuffled.classes(), labels.classes());
        let pos = |l: &LabeledResources| l.iter().filter(|(_, c)| *c == "pos").count();
        assert_eq!(pos(&shuffled), pos(&labels));
        assert_ne!(
            labels.iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>(),
            shuffled.iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>()
        );
    }
}
