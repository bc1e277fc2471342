//! Membership soundness, exclusion, determinism, and uniformity of the
//! negative samplers over synthetic streams covering every feasible
//! category mix.

use std::collections::HashMap;

use tgeval_core::error::Error;
use tgeval_core::event::Event;
use tgeval_core::sampling::{sample_negatives, SamplerSpec, SamplingPlan, Strategy};
use tgeval_core::split::{chronological_split, SplitHistory};
use tgeval_core::synth::{generate, NodeMix, SynthConfig};
use tgeval_core::taxonomy::{
    build_catalog, CatalogConfig, EdgeCategory, EntityCatalog, NodeCategory, PairClass,
};

fn mixes() -> Vec<(&'static str, SynthConfig)> {
    let base = SynthConfig::new(40, 800, 17);
    vec![
        (
            "balanced",
            SynthConfig {
                node_mix: NodeMix { historical: 0.4, inductive: 0.2, overlap: 0.4 },
                test_repeat_fraction: 0.3,
                ..base
            },
        ),
        (
            "inductive-heavy",
            SynthConfig {
                node_mix: NodeMix { historical: 0.2, inductive: 0.5, overlap: 0.3 },
                test_repeat_fraction: 0.1,
                ..base
            },
        ),
        (
            "overlap-heavy",
            SynthConfig {
                node_mix: NodeMix { historical: 0.1, inductive: 0.1, overlap: 0.8 },
                test_repeat_fraction: 0.6,
                ..base
            },
        ),
    ]
}

/// Re-derives the strategy's membership predicate from the catalog and
/// train/test occurrences, independent of the pool that produced it.
fn satisfies(
    strategy: Strategy,
    catalog: &EntityCatalog,
    positive: &Event,
    source: u32,
    destination: u32,
) -> bool {
    let node_is = |n: u32, c: NodeCategory| catalog.classify_node(n) == c;
    let edge_is = |c: EdgeCategory| catalog.classify_edge(source, destination) == c;
    match strategy {
        Strategy::RandomDestination => {
            source == positive.source && (destination as usize) < catalog.node_count()
        }
        Strategy::HistoricalDestination => {
            source == positive.source && node_is(destination, NodeCategory::Historical)
        }
        Strategy::InductiveDestination => {
            source == positive.source && node_is(destination, NodeCategory::Inductive)
        }
        Strategy::OverlapDestination => {
            source == positive.source && node_is(destination, NodeCategory::Overlap)
        }
        Strategy::NeverObservedEdge => edge_is(EdgeCategory::NeverObserved),
        Strategy::HistoricalEdge => edge_is(EdgeCategory::Historical),
        Strategy::InductiveEdge => edge_is(EdgeCategory::Inductive),
        Strategy::OverlapEdge => edge_is(EdgeCategory::Overlap),
        Strategy::NodePair(class) => {
            catalog.classify_pair(source, destination) == Some(class)
        }
    }
}

fn run_strategy(
    split: &SplitHistory,
    catalog: &EntityCatalog,
    strategy: Strategy,
    seed: u64,
) -> Vec<tgeval_core::sampling::CandidateSet> {
    let plan = SamplingPlan::single(SamplerSpec::new(strategy, 5, seed));
    let (sets, _) = plan.run(split, catalog).unwrap();
    sets
}

#[test]
fn membership_holds_for_every_strategy_and_mix() {
    for (name, config) in mixes() {
        let history = generate(&config).unwrap();
        let split = chronological_split(history, config.fractions).unwrap();
        for catalog_config in [
            CatalogConfig::default(),
            CatalogConfig { historical_includes_overlap: true, ..CatalogConfig::default() },
        ] {
            let catalog = build_catalog(&split, catalog_config).unwrap();
            for strategy in Strategy::ALL {
                let sets = run_strategy(&split, &catalog, strategy, 3);
                for set in &sets {
                    for negative in &set.negatives {
                        assert_ne!(
                            (negative.source, negative.destination),
                            set.positive.pair(),
                            "{name}/{strategy}: negative equals its positive"
                        );
                        assert!(
                            satisfies(strategy, &catalog, &set.positive, negative.source, negative.destination),
                            "{name}/{strategy}: negative ({}, {}) violates its predicate (relaxed={})",
                            negative.source,
                            negative.destination,
                            catalog_config.historical_includes_overlap,
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn runs_are_reproducible() {
    let (_, config) = &mixes()[0];
    let history = generate(config).unwrap();
    let split = chronological_split(history, config.fractions).unwrap();
    let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();
    for strategy in [Strategy::RandomDestination, Strategy::HistoricalEdge, Strategy::NeverObservedEdge] {
        let a = run_strategy(&split, &catalog, strategy, 99);
        let b = run_strategy(&split, &catalog, strategy, 99);
        assert_eq!(a, b);
    }
}

#[test]
fn empty_pool_skip_policy_records_ordinals() {
    // No overlap entities at all: overlap strategies cannot sample.
    let config = SynthConfig {
        node_mix: NodeMix { historical: 0.6, inductive: 0.4, overlap: 0.0 },
        test_repeat_fraction: 0.0,
        ..SynthConfig::new(20, 200, 5)
    };
    let history = generate(&config).unwrap();
    let split = chronological_split(history, config.fractions).unwrap();
    let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();

    let plan = SamplingPlan::single(SamplerSpec::new(Strategy::OverlapDestination, 3, 1));
    let (sets, stats) = plan.run(&split, &catalog).unwrap();
    assert!(sets.is_empty());
    assert_eq!(stats.skipped.len(), split.test_events().len());

    let mut abort = plan;
    abort.set_on_empty(tgeval_core::sampling::EmptyPoolPolicy::Abort);
    match abort.run(&split, &catalog) {
        Err(Error::EmptyPool { strategy }) => assert_eq!(strategy, "overlap-destination"),
        other => panic!("expected EmptyPool abort, got {other:?}"),
    }
}

#[test]
fn draws_are_uniform_over_their_pool() {
    // Spread destination draws over a known pool and check each member
    // sits within 5 sigma of the uniform expectation.
    let config = SynthConfig {
        node_mix: NodeMix { historical: 0.5, inductive: 0.25, overlap: 0.25 },
        ..SynthConfig::new(24, 600, 23)
    };
    let history = generate(&config).unwrap();
    let split = chronological_split(history, config.fractions).unwrap();
    let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();

    let pool: Vec<u32> = catalog.node_pool(NodeCategory::Historical).to_vec();
    let positive = split.test_events()[0];
    // Positive destination is test-occurring, never historical, so the
    // pool is not shrunk by the exclusion rule.
    assert!(!pool.contains(&positive.destination));

    let draws = 10_000usize;
    let spec = SamplerSpec::new(Strategy::HistoricalDestination, draws, 1234);
    let set = sample_negatives(&spec, &catalog, &positive).unwrap();
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for negative in &set.negatives {
        *counts.entry(negative.destination).or_default() += 1;
    }
    let p = 1.0 / pool.len() as f64;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    for &member in &pool {
        let observed = *counts.get(&member).unwrap_or(&0) as f64;
        let expected = draws as f64 * p;
        assert!(
            (observed - expected).abs() <= 5.0 * sigma,
            "member {member}: observed {observed}, expected {expected} +- {sigma}"
        );
    }
}

#[test]
fn node_pair_orientation_is_balanced() {
    let config = SynthConfig {
        node_mix: NodeMix { historical: 0.5, inductive: 0.5, overlap: 0.0 },
        test_repeat_fraction: 0.0,
        ..SynthConfig::new(20, 400, 31)
    };
    let history = generate(&config).unwrap();
    let split = chronological_split(history, config.fractions).unwrap();
    let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();
    let positive = split.test_events()[0];
    let spec = SamplerSpec::new(
        Strategy::NodePair(PairClass::HistoricalInductive),
        10_000,
        77,
    );
    let set = sample_negatives(&spec, &catalog, &positive).unwrap();
    let historical_first = set
        .negatives
        .iter()
        .filter(|n| catalog.classify_node(n.source) == NodeCategory::Historical)
        .count();
    let share = historical_first as f64 / set.negatives.len() as f64;
    assert!((share - 0.5).abs() < 0.05, "orientation share {share}");
}
