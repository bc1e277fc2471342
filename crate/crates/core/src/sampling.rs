//! Negative candidate generation: for each positive event, K negatives
//! drawn under one of the taxonomy-driven strategies.
//!
//! Strategies come in three families. Destination strategies keep the
//! positive's source and corrupt the destination from a node pool; edge
//! strategies draw whole pairs from an edge pool (or rejection-sample
//! unobserved pairs); node-pair strategies draw the two endpoints from
//! the pools of one of the six unordered pair classes. Pools are frozen
//! from the full-split catalog, so a node's category does not vary with
//! the query time.
//!
//! Draws are with replacement across the K slots and deterministic under
//! `(seed, positive.ordinal)`: distinct positives may be sampled
//! concurrently without affecting output.

use std::collections::HashSet;

use rand::rngs::OsRng;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::{Event, NodeId};
use crate::io::sha256_hex;
use crate::split::SplitHistory;
use crate::taxonomy::{EdgeCategory, EntityCatalog, NodeCategory, PairClass};

/// A negative-sampling strategy: the three destination corruptions of
/// the benchmark protocol plus one strategy per taxonomy row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Strategy {
    /// Corrupt the destination uniformly over the whole node universe.
    RandomDestination,
    HistoricalDestination,
    InductiveDestination,
    OverlapDestination,
    /// Uniform unobserved pair, by rejection.
    NeverObservedEdge,
    HistoricalEdge,
    InductiveEdge,
    OverlapEdge,
    NodePair(PairClass),
}

impl Strategy {
    pub const ALL: [Strategy; 14] = [
        Strategy::RandomDestination,
        Strategy::HistoricalDestination,
        Strategy::InductiveDestination,
        Strategy::OverlapDestination,
        Strategy::NeverObservedEdge,
        Strategy::HistoricalEdge,
        Strategy::InductiveEdge,
        Strategy::OverlapEdge,
        Strategy::NodePair(PairClass::HistoricalHistorical),
        Strategy::NodePair(PairClass::HistoricalInductive),
        Strategy::NodePair(PairClass::InductiveInductive),
        Strategy::NodePair(PairClass::OverlapOverlap),
        Strategy::NodePair(PairClass::OverlapHistorical),
        Strategy::NodePair(PairClass::OverlapInductive),
    ];

    pub fn label(self) -> &'static str {
        match self {
            Strategy::RandomDestination => "destination",
            Strategy::HistoricalDestination => "historical-destination",
            Strategy::InductiveDestination => "inductive-destination",
            Strategy::OverlapDestination => "overlap-destination",
            Strategy::NeverObservedEdge => "never-observed",
            Strategy::HistoricalEdge => "historical-edge",
            Strategy::InductiveEdge => "inductive-edge",
            Strategy::OverlapEdge => "overlap-edge",
            Strategy::NodePair(class) => match class {
                PairClass::HistoricalHistorical => "pair-historical-historical",
                PairClass::HistoricalInductive => "pair-historical-inductive",
                PairClass::InductiveInductive => "pair-inductive-inductive",
                PairClass::OverlapOverlap => "pair-overlap-overlap",
                PairClass::OverlapHistorical => "pair-overlap-historical",
                PairClass::OverlapInductive => "pair-overlap-inductive",
            },
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let needle = s.trim().to_ascii_lowercase();
        for strategy in Strategy::ALL {
            if strategy.label() == needle {
                return Ok(strategy);
            }
        }
        // common alias
        if needle == "random-edge" {
            return Ok(Strategy::NeverObservedEdge);
        }
        Err(Error::InvalidConfig(format!(
            "unknown strategy {s:?}; expected one of {}",
            Strategy::ALL
                .iter()
                .map(|st| st.label())
                .collect::<Vec<_>>()
                .join(", ")
        )))
    }
}

impl From<Strategy> for String {
    fn from(s: Strategy) -> String {
        s.label().to_string()
    }
}

impl TryFrom<String> for Strategy {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Which positives a sampling run covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coverage {
    /// Test events only: the standard evaluation protocol.
    Test,
    /// Every event in the stream, as the competing-events view needs.
    All,
}

impl Default for Coverage {
    fn default() -> Self {
        Coverage::Test
    }
}

/// What a run does when one positive's pool is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmptyPoolPolicy {
    /// Skip the event and record it in the run stats.
    Skip,
    Abort,
}

impl Default for EmptyPoolPolicy {
    fn default() -> Self {
        EmptyPoolPolicy::Skip
    }
}

pub const DEFAULT_REJECTION_BUDGET: usize = 1000;

/// Full description of one sampler: strategy, negatives per positive,
/// seed, and collision policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub strategy: Strategy,
    pub k: usize,
    pub seed: u64,
    #[serde(default)]
    pub coverage: Coverage,
    #[serde(default)]
    pub on_empty: EmptyPoolPolicy,
    #[serde(default = "default_budget")]
    pub rejection_budget: usize,
    /// Additionally exclude the pairs of all positives sharing the
    /// queried timestamp, not just the own pair.
    #[serde(default)]
    pub exclude_concurrent: bool,
}

fn default_budget() -> usize {
    DEFAULT_REJECTION_BUDGET
}

impl SamplerSpec {
    pub fn new(strategy: Strategy, k: usize, seed: u64) -> Self {
        SamplerSpec {
            strategy,
            k,
            seed,
            coverage: Coverage::default(),
            on_empty: EmptyPoolPolicy::default(),
            rejection_budget: DEFAULT_REJECTION_BUDGET,
            exclude_concurrent: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("sampler needs k >= 1".into()));
        }
        if self.rejection_budget == 0 {
            return Err(Error::InvalidConfig("rejection budget must be positive".into()));
        }
        Ok(())
    }
}

/// One sampled negative, tagged with the strategy that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Negative {
    pub source: NodeId,
    pub destination: NodeId,
    pub strategy: Strategy,
}

/// A positive event with its sampled negatives; all candidates share the
/// positive's timestamp.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    pub positive: Event,
    pub negatives: Vec<Negative>,
}

/// Per-event RNG: one independent ChaCha stream per positive ordinal.
fn event_rng(seed: u64, ordinal: usize) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(ordinal as u64);
    rng
}

/// Uniform draw from a sorted pool with one logically removed element.
fn draw_excluding<T: Copy + Ord>(rng: &mut ChaCha12Rng, pool: &[T], excluded: Option<T>) -> Option<T> {
    let skip = excluded.and_then(|e| pool.binary_search(&e).ok());
    let effective = pool.len() - usize::from(skip.is_some());
    if effective == 0 {
        return None;
    }
    let mut idx = rng.gen_range(0..effective);
    if let Some(pos) = skip {
        if idx >= pos {
            idx += 1;
        }
    }
    Some(pool[idx])
}

/// Uniform draw from 0..n with one logically removed value.
fn draw_node_excluding(rng: &mut ChaCha12Rng, n: usize, excluded: Option<NodeId>) -> Option<NodeId> {
    let skip = excluded.filter(|&e| (e as usize) < n);
    let effective = n - usize::from(skip.is_some());
    if effective == 0 {
        return None;
    }
    let mut idx = rng.gen_range(0..effective) as NodeId;
    if let Some(e) = skip {
        if idx >= e {
            idx += 1;
        }
    }
    Some(idx)
}

fn node_pool_for(catalog: &EntityCatalog, strategy: Strategy) -> Option<&[NodeId]> {
    match strategy {
        Strategy::HistoricalDestination => Some(catalog.node_pool(NodeCategory::Historical)),
        Strategy::InductiveDestination => Some(catalog.node_pool(NodeCategory::Inductive)),
        Strategy::OverlapDestination => Some(catalog.node_pool(NodeCategory::Overlap)),
        _ => None,
    }
}

fn edge_pool_for(catalog: &EntityCatalog, strategy: Strategy) -> Option<&[(NodeId, NodeId)]> {
    match strategy {
        Strategy::HistoricalEdge => Some(catalog.edge_pool(EdgeCategory::Historical)),
        Strategy::InductiveEdge => Some(catalog.edge_pool(EdgeCategory::Inductive)),
        Strategy::OverlapEdge => Some(catalog.edge_pool(EdgeCategory::Overlap)),
        _ => None,
    }
}

/// Draws the K negatives for one positive. Deterministic under
/// `(spec.seed, positive.ordinal)`.
pub fn sample_negatives(
    spec: &SamplerSpec,
    catalog: &EntityCatalog,
    positive: &Event,
) -> Result<CandidateSet> {
    sample_negatives_excluding(spec, catalog, positive, None)
}

/// As [`sample_negatives`], with an extra exclusion set of pairs (used
/// for the strict same-timestamp collision policy).
pub fn sample_negatives_excluding(
    spec: &SamplerSpec,
    catalog: &EntityCatalog,
    positive: &Event,
    concurrent: Option<&HashSet<(NodeId, NodeId)>>,
) -> Result<CandidateSet> {
    spec.validate()?;
    let mut rng = event_rng(spec.seed, positive.ordinal);
    let mut negatives = Vec::with_capacity(spec.k);
    let strategy = spec.strategy;
    let label = strategy.label();
    let excluded_pair = positive.pair();
    let blocked = |pair: (NodeId, NodeId)| -> bool {
        pair == excluded_pair || concurrent.map_or(false, |set| set.contains(&pair))
    };

    // Concurrent exclusion on destination/edge pools falls back to
    // rejection over the pool draw; the plain path stays O(log n).
    let rejection_draw = |rng: &mut ChaCha12Rng,
                          draw: &mut dyn FnMut(&mut ChaCha12Rng) -> Option<(NodeId, NodeId)>|
     -> Result<(NodeId, NodeId)> {
        for _ in 0..spec.rejection_budget {
            match draw(rng) {
                Some(pair) if !blocked(pair) => return Ok(pair),
                Some(_) => continue,
                None => return Err(Error::EmptyPool { strategy: label }),
            }
        }
        Err(Error::RejectionBudgetExceeded {
            strategy: label,
            attempts: spec.rejection_budget,
        })
    };

    match strategy {
        Strategy::RandomDestination
        | Strategy::HistoricalDestination
        | Strategy::InductiveDestination
        | Strategy::OverlapDestination => {
            let source = positive.source;
            let excluded = Some(positive.destination);
            for _ in 0..spec.k {
                let mut draw = |rng: &mut ChaCha12Rng| -> Option<(NodeId, NodeId)> {
                    let dst = match node_pool_for(catalog, strategy) {
                        Some(pool) => draw_excluding(rng, pool, excluded)?,
                        None => draw_node_excluding(rng, catalog.node_count(), excluded)?,
                    };
                    Some((source, dst))
                };
                let (u, v) = if spec.exclude_concurrent {
                    rejection_draw(&mut rng, &mut draw)?
                } else {
                    draw(&mut rng).ok_or(Error::EmptyPool { strategy: label })?
                };
                negatives.push(Negative {
                    source: u,
                    destination: v,
                    strategy,
                });
            }
        }
        Strategy::HistoricalEdge | Strategy::InductiveEdge | Strategy::OverlapEdge => {
            let pool = edge_pool_for(catalog, strategy).unwrap();
            for _ in 0..spec.k {
                let mut draw = |rng: &mut ChaCha12Rng| -> Option<(NodeId, NodeId)> {
                    draw_excluding(rng, pool, Some(excluded_pair))
                };
                let (u, v) = if spec.exclude_concurrent {
                    rejection_draw(&mut rng, &mut draw)?
                } else {
                    draw(&mut rng).ok_or(Error::EmptyPool { strategy: label })?
                };
                negatives.push(Negative {
                    source: u,
                    destination: v,
                    strategy,
                });
            }
        }
        Strategy::NeverObservedEdge => {
            let n = catalog.node_count() as u64;
            let observed = catalog.observed_pairs().count() as u64;
            if n == 0 || observed >= n * n {
                return Err(Error::EmptyPool { strategy: label });
            }
            for _ in 0..spec.k {
                let mut found = None;
                for _ in 0..spec.rejection_budget {
                    let u = rng.gen_range(0..catalog.node_count()) as NodeId;
                    let v = rng.gen_range(0..catalog.node_count()) as NodeId;
                    if !catalog.is_observed_pair(u, v) && !blocked((u, v)) {
                        found = Some((u, v));
                        break;
                    }
                }
                let (u, v) = found.ok_or(Error::RejectionBudgetExceeded {
                    strategy: label,
                    attempts: spec.rejection_budget,
                })?;
                negatives.push(Negative {
                    source: u,
                    destination: v,
                    strategy,
                });
            }
        }
        Strategy::NodePair(class) => {
            let (cat_a, cat_b) = class.endpoint_categories();
            let pool_a = catalog.node_pool(cat_a);
            let pool_b = catalog.node_pool(cat_b);
            if pool_a.is_empty() || pool_b.is_empty() {
                return Err(Error::EmptyPool { strategy: label });
            }
            for _ in 0..spec.k {
                let mut draw = |rng: &mut ChaCha12Rng| -> Option<(NodeId, NodeId)> {
                    // Both orientations with equal probability.
                    let (first, second) = if rng.gen::<bool>() {
                        (pool_a, pool_b)
                    } else {
                        (pool_b, pool_a)
                    };
                    let u = first[rng.gen_range(0..first.len())];
                    let v = second[rng.gen_range(0..second.len())];
                    Some((u, v))
                };
                let (u, v) = rejection_draw(&mut rng, &mut draw)?;
                negatives.push(Negative {
                    source: u,
                    destination: v,
                    strategy,
                });
            }
        }
    }

    Ok(CandidateSet {
        positive: *positive,
        negatives,
    })
}

/// Outcome counters for a sampling run.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct SampleStats {
    pub emitted: usize,
    /// Ordinals skipped under [`EmptyPoolPolicy::Skip`], with reasons.
    pub skipped: Vec<(usize, String)>,
}

/// A set of samplers applied jointly to every covered positive. A plan
/// with one spec is the standard single-strategy run; a plan with one
/// spec per strategy and k=1 produces the merged candidate sets the
/// competing-events view consumes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub specs: Vec<SamplerSpec>,
}

impl SamplingPlan {
    /// Builds a plan where spec `i` draws from its own seed `seed + i`,
    /// keeping strategies decorrelated while staying reproducible.
    pub fn new(strategies: &[Strategy], k: usize, seed: u64) -> Self {
        let specs = strategies
            .iter()
            .enumerate()
            .map(|(i, &strategy)| SamplerSpec::new(strategy, k, seed + i as u64))
            .collect();
        SamplingPlan { specs }
    }

    pub fn single(spec: SamplerSpec) -> Self {
        SamplingPlan { specs: vec![spec] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.specs.is_empty() {
            return Err(Error::InvalidConfig("sampling plan has no strategies".into()));
        }
        for spec in &self.specs {
            spec.validate()?;
        }
        Ok(())
    }

    pub fn coverage(&self) -> Coverage {
        self.specs[0].coverage
    }

    pub fn on_empty(&self) -> EmptyPoolPolicy {
        self.specs[0].on_empty
    }

    pub fn set_coverage(&mut self, coverage: Coverage) {
        for spec in &mut self.specs {
            spec.coverage = coverage;
        }
    }

    pub fn set_on_empty(&mut self, policy: EmptyPoolPolicy) {
        for spec in &mut self.specs {
            spec.on_empty = policy;
        }
    }

    pub fn set_exclude_concurrent(&mut self, flag: bool) {
        for spec in &mut self.specs {
            spec.exclude_concurrent = flag;
        }
    }

    /// Strategy labels in slot order.
    pub fn labels(&self) -> Vec<&'static str> {
        self.specs.iter().map(|s| s.strategy.label()).collect()
    }

    /// Content hash binding score files to the sampler that produced
    /// their candidates.
    pub fn spec_hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("plan serializes");
        sha256_hex(canonical.as_bytes())
    }

    /// Merged candidate set for one positive: spec 0's negatives first.
    pub fn sample_event(
        &self,
        catalog: &EntityCatalog,
        positive: &Event,
        concurrent: Option<&HashSet<(NodeId, NodeId)>>,
    ) -> Result<CandidateSet> {
        let mut negatives = Vec::new();
        for spec in &self.specs {
            let set = sample_negatives_excluding(spec, catalog, positive, concurrent)?;
            negatives.extend(set.negatives);
        }
        Ok(CandidateSet {
            positive: *positive,
            negatives,
        })
    }

    /// Runs the plan over the covered positives in stream order.
    pub fn run(
        &self,
        split: &SplitHistory,
        catalog: &EntityCatalog,
    ) -> Result<(Vec<CandidateSet>, SampleStats)> {
        self.validate()?;
        let events = match self.coverage() {
            Coverage::Test => split.test_events(),
            Coverage::All => split.history().events(),
        };
        let exclude_concurrent = self.specs.iter().any(|s| s.exclude_concurrent);
        let all_events = split.history().events();

        let mut sets = Vec::with_capacity(events.len());
        let mut stats = SampleStats::default();
        let mut concurrent: HashSet<(NodeId, NodeId)> = HashSet::new();
        let mut block: (usize, usize) = (0, 0);
        for positive in events {
            let concurrent_ref = if exclude_concurrent {
                // Pairs of all positives sharing this timestamp.
                if positive.ordinal >= block.1 {
                    let start = all_events
                        .partition_point(|e| e.timestamp < positive.timestamp);
                    let end = all_events
                        .partition_point(|e| e.timestamp <= positive.timestamp);
                    block = (start, end);
                    concurrent = all_events[start..end].iter().map(Event::pair).collect();
                }
                Some(&concurrent)
            } else {
                None
            };
            match self.sample_event(catalog, positive, concurrent_ref) {
                Ok(set) => {
                    stats.emitted += 1;
                    sets.push(set);
                }
                Err(err @ Error::EmptyPool { .. }) if self.on_empty() == EmptyPoolPolicy::Skip => {
                    stats.skipped.push((positive.ordinal, err.to_string()));
                }
                Err(err) => return Err(err),
            }
        }
        Ok((sets, stats))
    }
}

/// Draws a fresh random seed, for callers that want explicit
/// reproducibility metadata rather than silent entropy.
pub fn random_seed() -> u64 {
    OsRng.next_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::History;
    use crate::split::{chronological_split, Fractions};
    use crate::taxonomy::{build_catalog, CatalogConfig};

    /// train: (0,1),(2,3) twice over; val: (0,1); test: (4,5),(4,6).
    fn fixture() -> (SplitHistory, EntityCatalog) {
        let records = vec![
            (0, 1, 0.0),
            (2, 3, 1.0),
            (0, 1, 2.0),
            (2, 3, 3.0),
            (0, 1, 4.0),
            (2, 3, 5.0),
            (0, 1, 6.0),
            (0, 1, 7.0),
            (4, 5, 8.0),
            (4, 6, 9.0),
        ];
        let h = History::from_dense(records, 7).unwrap();
        let split = chronological_split(h, Fractions::DEFAULT).unwrap();
        let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();
        (split, catalog)
    }

    #[test]
    fn historical_edge_pool_excludes_positive() {
        let (_, catalog) = fixture();
        // Positive on (2,3): the only other historical edge is (0,1).
        let positive = Event {
            source: 2,
            destination: 3,
            timestamp: 9.0,
            ordinal: 9,
        };
        let spec = SamplerSpec::new(Strategy::HistoricalEdge, 8, 7);
        let set = sample_negatives(&spec, &catalog, &positive).unwrap();
        assert!(set.negatives.iter().all(|n| (n.source, n.destination) == (0, 1)));
    }

    #[test]
    fn inductive_destination_pool_of_constrained_size() {
        let (_, catalog) = fixture();
        let positive = Event {
            source: 0,
            destination: 1,
            timestamp: 9.0,
            ordinal: 9,
        };
        let spec = SamplerSpec::new(Strategy::InductiveDestination, 6, 3);
        let set = sample_negatives(&spec, &catalog, &positive).unwrap();
        for n in &set.negatives {
            assert_eq!(n.source, 0);
            assert!([4, 5, 6].contains(&n.destination));
        }
    }

    #[test]
    fn empty_pool_is_reported() {
        let (_, catalog) = fixture();
        let positive = Event {
            source: 0,
            destination: 1,
            timestamp: 9.0,
            ordinal: 9,
        };
        let spec = SamplerSpec::new(Strategy::OverlapEdge, 2, 1);
        match sample_negatives(&spec, &catalog, &positive) {
            Err(Error::EmptyPool { strategy }) => assert_eq!(strategy, "overlap-edge"),
            other => panic!("expected EmptyPool, got {other:?}"),
        }
    }

    #[test]
    fn deterministic_under_seed_and_ordinal() {
        let (_, catalog) = fixture();
        let positive = Event {
            source: 4,
            destination: 5,
            timestamp: 8.0,
            ordinal: 8,
        };
        let spec = SamplerSpec::new(Strategy::RandomDestination, 16, 99);
        let a = sample_negatives(&spec, &catalog, &positive).unwrap();
        let b = sample_negatives(&spec, &catalog, &positive).unwrap();
        assert_eq!(a, b);
        let other = Event {
            ordinal: 9,
            ..positive
        };
        let c = sample_negatives(&spec, &catalog, &other).unwrap();
        assert_ne!(a.negatives, c.negatives);
    }

    #[test]
    fn negatives_never_equal_their_positive() {
        let (split, catalog) = fixture();
        for strategy in Strategy::ALL {
            let spec = SamplerSpec::new(strategy, 4, 11);
            let plan = SamplingPlan::single(spec);
            let (sets, _) = plan.run(&split, &catalog).unwrap();
            for set in sets {
                for n in &set.negatives {
                    assert_ne!((n.source, n.destination), set.positive.pair());
                }
            }
        }
    }

    #[test]
    fn run_covers_all_test_events() {
        let (split, catalog) = fixture();
        let plan = SamplingPlan::single(SamplerSpec::new(Strategy::RandomDestination, 3, 5));
        let (sets, stats) = plan.run(&split, &catalog).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(stats.emitted, 2);
        assert!(sets.iter().all(|s| s.negatives.len() == 3));
        let mut all = plan.clone();
        all.set_coverage(Coverage::All);
        let (sets, _) = all.run(&split, &catalog).unwrap();
        assert_eq!(sets.len(), 10);
    }

    #[test]
    fn plan_merges_strategies_in_slot_order() {
        let (split, catalog) = fixture();
        let plan = SamplingPlan::new(
            &[Strategy::HistoricalEdge, Strategy::InductiveDestination],
            2,
            13,
        );
        let (sets, _) = plan.run(&split, &catalog).unwrap();
        for set in sets {
            assert_eq!(set.negatives.len(), 4);
            assert_eq!(set.negatives[0].strategy, Strategy::HistoricalEdge);
            assert_eq!(set.negatives[3].strategy, Strategy::InductiveDestination);
        }
    }

    #[test]
    fn strategy_labels_round_trip() {
        for strategy in Strategy::ALL {
            let parsed: Strategy = strategy.label().parse().unwrap();
            assert_eq!(parsed, strategy);
        }
        assert!("made-up".parse::<Strategy>().is_err());
    }
}
