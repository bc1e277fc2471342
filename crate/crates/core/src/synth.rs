//! Seeded synthetic CTDG generation with a controlled post-split
//! taxonomy: requested node-category proportions, plus a knob for how
//! many test events repeat training-period pairs.
//!
//! Timestamps are the integers 0..M, so the 70/15/15 boundaries land
//! exactly on the floor ordinals and the generated mix is exact (within
//! rounding of the requested proportions). Every historical node is
//! scheduled at least once inside the strict training period, every
//! inductive node at least once in test, and every overlap node in both,
//! so the classifier reproduces the mix deterministically.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::{History, NodeId};
use crate::split::Fractions;

/// Target node-category proportions; must sum to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeMix {
    pub historical: f64,
    pub inductive: f64,
    pub overlap: f64,
}

impl Default for NodeMix {
    fn default() -> Self {
        NodeMix {
            historical: 0.4,
            inductive: 0.2,
            overlap: 0.4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub nodes: usize,
    pub events: usize,
    pub seed: u64,
    #[serde(default)]
    pub fractions: Fractions,
    #[serde(default)]
    pub node_mix: NodeMix,
    /// Fraction of test events that repeat a strict-train pair (both
    /// endpoints overlap); the remainder land on pairs unseen before the
    /// test period.
    #[serde(default)]
    pub test_repeat_fraction: f64,
    #[serde(default)]
    pub allow_self_loops: bool,
}

impl SynthConfig {
    pub fn new(nodes: usize, events: usize, seed: u64) -> Self {
        SynthConfig {
            nodes,
            events,
            seed,
            fractions: Fractions::DEFAULT,
            node_mix: NodeMix::default(),
            test_repeat_fraction: 0.2,
            allow_self_loops: false,
        }
    }
}

struct Plan {
    historical: Vec<NodeId>,
    inductive: Vec<NodeId>,
    overlap: Vec<NodeId>,
    train_n: usize,
    val_n: usize,
    test_n: usize,
    repeat_n: usize,
}

fn infeasible(msg: impl Into<String>) -> Error {
    Error::InvalidConfig(format!("infeasible synthetic mix: {}", msg.into()))
}

fn plan(config: &SynthConfig, rng: &mut ChaCha12Rng) -> Result<Plan> {
    if config.nodes == 0 || config.events == 0 {
        return Err(Error::InvalidConfig(
            "synthetic config needs nodes > 0 and events > 0".into(),
        ));
    }
    config.fractions.validate()?;
    let mix = config.node_mix;
    if mix.historical < 0.0 || mix.inductive < 0.0 || mix.overlap < 0.0 {
        return Err(Error::InvalidConfig("node mix proportions must be non-negative".into()));
    }
    if (mix.historical + mix.inductive + mix.overlap - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidConfig("node mix proportions must sum to 1".into()));
    }
    if !(0.0..=1.0).contains(&config.test_repeat_fraction) {
        return Err(Error::InvalidConfig("test_repeat_fraction must be in [0, 1]".into()));
    }

    let n = config.nodes;
    let m = config.events;
    let n_ind = (mix.inductive * n as f64).round() as usize;
    let n_overlap = (mix.overlap * n as f64).round() as usize;
    if n_ind + n_overlap > n {
        return Err(infeasible("rounded category counts exceed the node count"));
    }
    let n_hist = n - n_ind - n_overlap;

    let train_n = (config.fractions.train * m as f64).floor() as usize;
    let val_end = ((config.fractions.train + config.fractions.val) * m as f64).floor() as usize;
    let val_n = val_end - train_n;
    let test_n = m - val_end;
    if train_n == 0 || test_n == 0 {
        return Err(infeasible("split leaves an empty train or test period"));
    }

    if n_hist + n_overlap == 0 {
        return Err(infeasible("no train-eligible nodes (historical + overlap is zero)"));
    }
    if n_ind + n_overlap == 0 {
        return Err(infeasible("no test-eligible nodes (inductive + overlap is zero)"));
    }
    if !config.allow_self_loops && n_hist + n_overlap < 2 {
        return Err(infeasible(
            "a single train-eligible node requires allow_self_loops",
        ));
    }
    if !config.allow_self_loops && n_ind + n_overlap < 2 {
        return Err(infeasible(
            "a single test-eligible node requires allow_self_loops",
        ));
    }
    if n_hist + n_overlap > train_n {
        return Err(infeasible(format!(
            "{} mandatory train appearances do not fit in {} train events",
            n_hist + n_overlap,
            train_n
        )));
    }
    if n_ind + n_overlap > test_n {
        return Err(infeasible(format!(
            "{} mandatory test appearances do not fit in {} test events",
            n_ind + n_overlap,
            test_n
        )));
    }

    let repeat_n = (config.test_repeat_fraction * test_n as f64).round() as usize;
    if repeat_n > 0 {
        let overlap_pairs_possible = n_overlap >= 2 || (n_overlap == 1 && config.allow_self_loops);
        if !overlap_pairs_possible {
            return Err(infeasible(
                "repeating test pairs needs at least two overlap nodes (or self-loops)",
            ));
        }
    }
    if test_n - repeat_n < n_ind {
        return Err(infeasible(format!(
            "{n_ind} inductive nodes need fresh test events but only {} remain after repeats",
            test_n - repeat_n
        )));
    }

    let mut ids: Vec<NodeId> = (0..n as NodeId).collect();
    ids.shuffle(rng);
    let historical = ids[..n_hist].to_vec();
    let inductive = ids[n_hist..n_hist + n_ind].to_vec();
    let overlap = ids[n_hist + n_ind..].to_vec();

    Ok(Plan {
        historical,
        inductive,
        overlap,
        train_n,
        val_n,
        test_n,
        repeat_n,
    })
}

/// Partner for `node` from `pool`, respecting the self-loop rule.
fn partner(
    rng: &mut ChaCha12Rng,
    pool: &[NodeId],
    node: NodeId,
    allow_self_loops: bool,
) -> Result<NodeId> {
    if allow_self_loops {
        return Ok(pool[rng.gen_range(0..pool.len())]);
    }
    let eligible = pool.len() - usize::from(pool.contains(&node));
    if eligible == 0 {
        return Err(infeasible("partner pool collapses to a self-loop"));
    }
    loop {
        let candidate = pool[rng.gen_range(0..pool.len())];
        if candidate != node {
            return Ok(candidate);
        }
    }
}

fn random_pair(
    rng: &mut ChaCha12Rng,
    pool: &[NodeId],
    allow_self_loops: bool,
) -> Result<(NodeId, NodeId)> {
    let u = pool[rng.gen_range(0..pool.len())];
    let v = partner(rng, pool, u, allow_self_loops)?;
    Ok((u, v))
}

/// Generates a deterministic synthetic history matching the configured
/// category mix under the configured split.
pub fn generate(config: &SynthConfig) -> Result<History> {
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let plan = plan(config, &mut rng)?;

    let mut train_pool: Vec<NodeId> =
        plan.historical.iter().chain(plan.overlap.iter()).copied().collect();
    train_pool.sort_unstable();
    let mut test_pool: Vec<NodeId> =
        plan.inductive.iter().chain(plan.overlap.iter()).copied().collect();
    test_pool.sort_unstable();

    // --- strict training period ---------------------------------------
    let mut train_events: Vec<(NodeId, NodeId)> = Vec::with_capacity(plan.train_n);
    // Pairs available for test repeats: both endpoints overlap, observed
    // in the strict train period.
    let mut overlap_pairs: Vec<(NodeId, NodeId)> = Vec::new();
    let mut overlap_pair_set: HashSet<(NodeId, NodeId)> = HashSet::new();
    let mut overlap_pair_of: HashMap<NodeId, (NodeId, NodeId)> = HashMap::new();
    let overlap_set: HashSet<NodeId> = plan.overlap.iter().copied().collect();
    let record_overlap_pair = |pair: (NodeId, NodeId),
                                   overlap_pairs: &mut Vec<(NodeId, NodeId)>,
                                   overlap_pair_set: &mut HashSet<(NodeId, NodeId)>| {
        if overlap_set.contains(&pair.0) && overlap_set.contains(&pair.1)
            && overlap_pair_set.insert(pair)
        {
            overlap_pairs.push(pair);
        }
    };

    for &h in &plan.historical {
        let p = partner(&mut rng, &train_pool, h, config.allow_self_loops)?;
        train_events.push((h, p));
    }
    for &o in &plan.overlap {
        // When repeats are requested, pin each overlap node to a
        // both-overlap pair so its test coverage can ride a repeat.
        let p = if plan.repeat_n > 0 {
            partner(&mut rng, &plan.overlap, o, config.allow_self_loops)?
        } else {
            partner(&mut rng, &train_pool, o, config.allow_self_loops)?
        };
        train_events.push((o, p));
        record_overlap_pair((o, p), &mut overlap_pairs, &mut overlap_pair_set);
        overlap_pair_of.entry(o).or_insert((o, p));
    }
    while train_events.len() < plan.train_n {
        let pair = random_pair(&mut rng, &train_pool, config.allow_self_loops)?;
        record_overlap_pair(pair, &mut overlap_pairs, &mut overlap_pair_set);
        train_events.push(pair);
    }
    train_events.shuffle(&mut rng);

    // --- validation period ---------------------------------------------
    let mut val_events: Vec<(NodeId, NodeId)> = Vec::with_capacity(plan.val_n);
    for _ in 0..plan.val_n {
        val_events.push(random_pair(&mut rng, &train_pool, config.allow_self_loops)?);
    }

    // Everything observed before the test period; fresh test pairs must
    // avoid all of it.
    let pre_test_pairs: HashSet<(NodeId, NodeId)> = train_events
        .iter()
        .chain(val_events.iter())
        .copied()
        .collect();

    // --- test period -----------------------------------------------------
    let mut test_events: Vec<(NodeId, NodeId)> = Vec::with_capacity(plan.test_n);
    let mut repeat_budget = plan.repeat_n;
    let mut fresh_budget = plan.test_n - plan.repeat_n;

    let fresh_event = |rng: &mut ChaCha12Rng, anchor: Option<NodeId>| -> Result<(NodeId, NodeId)> {
        for _ in 0..10_000 {
            let pair = match anchor {
                Some(node) => {
                    let p = partner(rng, &test_pool, node, config.allow_self_loops)?;
                    if rng.gen::<bool>() {
                        (node, p)
                    } else {
                        (p, node)
                    }
                }
                None => random_pair(rng, &test_pool, config.allow_self_loops)?,
            };
            if !pre_test_pairs.contains(&pair) {
                return Ok(pair);
            }
        }
        Err(infeasible(
            "could not draw a test pair unseen before the test period",
        ))
    };

    for &o in &plan.overlap {
        if repeat_budget > 0 {
            if let Some(&pair) = overlap_pair_of.get(&o) {
                test_events.push(pair);
                repeat_budget -= 1;
                continue;
            }
        }
        if fresh_budget == 0 {
            return Err(infeasible("overlap coverage exhausted the fresh test budget"));
        }
        test_events.push(fresh_event(&mut rng, Some(o))?);
        fresh_budget -= 1;
    }
    for &i in &plan.inductive {
        debug_assert!(fresh_budget > 0, "checked by plan()");
        test_events.push(fresh_event(&mut rng, Some(i))?);
        fresh_budget -= 1;
    }
    for _ in 0..repeat_budget {
        let pair = overlap_pairs[rng.gen_range(0..overlap_pairs.len())];
        test_events.push(pair);
    }
    for _ in 0..fresh_budget {
        test_events.push(fresh_event(&mut rng, None)?);
    }
    test_events.shuffle(&mut rng);

    // --- stitch together --------------------------------------------------
    let records: Vec<(NodeId, NodeId, f64)> = train_events
        .into_iter()
        .chain(val_events)
        .chain(test_events)
        .enumerate()
        .map(|(m, (u, v))| (u, v, m as f64))
        .collect();
    History::from_dense(records, config.nodes)
}
