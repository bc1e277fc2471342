//! Ranking metrics over scored candidate streams: pooled AUC and average
//! precision, per-event mean ranks, MRR, and the competing-events labels.
//!
//! Heuristic scorers produce massive ties, so every tie convention here
//! is pinned: AUC counts ties as half-wins, AP averages over tied blocks
//! by walking distinct thresholds, and ranks default to the mean-rank
//! convention (optimistic and pessimistic variants are available but
//! must be reported alongside the numbers).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::Strategy;
use crate::scoring::ScoredCandidateSet;

/// Tie convention for per-event ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    /// 1 + strictly-better count + half the tied count.
    Mean,
    /// Ties resolve in the positive's favor.
    Optimistic,
    /// Ties resolve against the positive.
    Pessimistic,
}

impl Default for TieRule {
    fn default() -> Self {
        TieRule::Mean
    }
}

/// Pooled metrics aggregate all scores into one two-class problem;
/// per-event macro-averaging computes each event separately and means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pooling {
    Pooled,
    PerEvent,
}

impl Default for Pooling {
    fn default() -> Self {
        Pooling::Pooled
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MetricConfig {
    #[serde(default)]
    pub pooling: Pooling,
    #[serde(default)]
    pub tie_rule: TieRule,
}

/// Pooled two-sample AUC: P(score+ > score-) + P(score+ = score-)/2,
/// computed by rank summation in O(n log n).
pub fn auc(positives: &[f64], negatives: &[f64]) -> Result<f64> {
    if positives.is_empty() || negatives.is_empty() {
        return Err(Error::Data(
            "auc needs at least one positive and one negative score".into(),
        ));
    }
    let mut all: Vec<(f64, bool)> = positives
        .iter()
        .map(|&s| (s, true))
        .chain(negatives.iter().map(|&s| (s, false)))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut rank_sum_pos = 0.0;
    let mut i = 0;
    while i < all.len() {
        let mut j = i + 1;
        while j < all.len() && all[j].0 == all[i].0 {
            j += 1;
        }
        // average of 1-based ranks i+1..=j
        let avg_rank = (i + 1 + j) as f64 / 2.0;
        for item in &all[i..j] {
            if item.1 {
                rank_sum_pos += avg_rank;
            }
        }
        i = j;
    }
    let n_pos = positives.len() as f64;
    let n_neg = negatives.len() as f64;
    let u = rank_sum_pos - n_pos * (n_pos + 1.0) / 2.0;
    Ok(u / (n_pos * n_neg))
}

/// Average precision of the pooled ranking with positives relevant.
/// Walks tied blocks in descending score order; each block contributes
/// its precision at the block's threshold.
pub fn average_precision(positives: &[f64], negatives: &[f64]) -> Result<f64> {
    if positives.is_empty() || negatives.is_empty() {
        return Err(Error::Data(
            "average precision needs at least one positive and one negative score".into(),
        ));
    }
    let mut all: Vec<(f64, bool)> = positives
        .iter()
        .map(|&s| (s, true))
        .chain(negatives.iter().map(|&s| (s, false)))
        .collect();
    all.sort_by(|a, b| b.0.total_cmp(&a.0));

    let total_relevant = positives.len() as f64;
    let mut ap = 0.0;
    let mut retrieved = 0usize;
    let mut relevant = 0usize;
    let mut i = 0;
    while i < all.len() {
        let mut j = i + 1;
        while j < all.len() && all[j].0 == all[i].0 {
            j += 1;
        }
        let block_relevant = all[i..j].iter().filter(|x| x.1).count();
        retrieved += j - i;
        relevant += block_relevant;
        if block_relevant > 0 {
            ap += (block_relevant as f64 / total_relevant)
                * (relevant as f64 / retrieved as f64);
        }
        i = j;
    }
    Ok(ap)
}

/// Rank of the positive among its negatives under a tie rule; 1 is best.
pub fn rank_of(positive: f64, negatives: &[f64], rule: TieRule) -> f64 {
    let better = negatives.iter().filter(|&&n| n > positive).count();
    let tied = negatives.iter().filter(|&&n| n == positive).count();
    match rule {
        TieRule::Mean => 1.0 + better as f64 + tied as f64 / 2.0,
        TieRule::Optimistic => 1.0 + better as f64,
        TieRule::Pessimistic => 1.0 + (better + tied) as f64,
    }
}

/// The label of the best-scoring candidate: "positive" or the winning
/// negative's strategy. Ties break in favor of the positive, then by
/// slot index.
pub fn best_candidate_label(set: &ScoredCandidateSet) -> &'static str {
    let mut best_score = set.positive_score();
    let mut best: &'static str = "positive";
    for (negative, &score) in set
        .candidates
        .negatives
        .iter()
        .zip(set.negative_scores())
    {
        if score > best_score {
            best_score = score;
            best = negative.strategy.label();
        }
    }
    best
}

/// Per-event rank record: the direct input of the rank visualizations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRecord {
    pub positive_ordinal: usize,
    /// Mean rank in [1, K+1].
    pub rank: f64,
    /// Negatives count for this event.
    pub k: usize,
    /// Winner of the candidate competition.
    pub best_label: String,
}

/// Computes one rank record per scored event, in stream order.
pub fn compute_ranks(scored: &[ScoredCandidateSet], rule: TieRule) -> Vec<RankRecord> {
    scored
        .iter()
        .map(|set| RankRecord {
            positive_ordinal: set.candidates.positive.ordinal,
            rank: rank_of(set.positive_score(), set.negative_scores(), rule),
            k: set.candidates.negatives.len(),
            best_label: best_candidate_label(set).to_string(),
        })
        .collect()
}

/// Mean reciprocal rank over per-event ranks.
pub fn mrr(ranks: &[RankRecord]) -> Result<f64> {
    if ranks.is_empty() {
        return Err(Error::Data("mrr needs at least one event".into()));
    }
    Ok(ranks.iter().map(|r| 1.0 / r.rank).sum::<f64>() / ranks.len() as f64)
}

/// Winning label per positive ordinal: the competing-events stream.
pub fn competing_labels(scored: &[ScoredCandidateSet]) -> Vec<(usize, String)> {
    scored
        .iter()
        .map(|set| {
            (
                set.candidates.positive.ordinal,
                best_candidate_label(set).to_string(),
            )
        })
        .collect()
}

/// Metrics for one strategy's negatives (or the whole run).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyMetrics {
    pub auc: f64,
    pub ap: f64,
    pub mrr: f64,
    pub events: usize,
    pub negatives: usize,
}

/// The full evaluation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub auc: f64,
    pub ap: f64,
    pub mrr: f64,
    pub events: usize,
    pub negatives: usize,
    pub config: MetricConfig,
    /// Breakdown keyed by strategy label; equals the overall numbers for
    /// single-strategy runs.
    pub per_strategy: BTreeMap<String, StrategyMetrics>,
    /// Sampler spec hash echoed from the candidate sidecar, when known.
    pub sampler_spec_hash: Option<String>,
}

fn pooled_or_macro(
    scored: &[ScoredCandidateSet],
    config: MetricConfig,
    select: impl Fn(&ScoredCandidateSet) -> Vec<f64>,
) -> Result<(f64, f64)> {
    match config.pooling {
        Pooling::Pooled => {
            let positives: Vec<f64> = scored.iter().map(|s| s.positive_score()).collect();
            let negatives: Vec<f64> = scored.iter().flat_map(&select).collect();
            Ok((
                auc(&positives, &negatives)?,
                average_precision(&positives, &negatives)?,
            ))
        }
        Pooling::PerEvent => {
            let mut auc_sum = 0.0;
            let mut ap_sum = 0.0;
            let mut n = 0usize;
            for set in scored {
                let negatives = select(set);
                if negatives.is_empty() {
                    continue;
                }
                let positive = [set.positive_score()];
                auc_sum += auc(&positive, &negatives)?;
                ap_sum += average_precision(&positive, &negatives)?;
                n += 1;
            }
            if n == 0 {
                return Err(Error::Data("no events with negatives to evaluate".into()));
            }
            Ok((auc_sum / n as f64, ap_sum / n as f64))
        }
    }
}

/// Builds the metric report for a scored run.
pub fn compute_report(
    scored: &[ScoredCandidateSet],
    config: MetricConfig,
    sampler_spec_hash: Option<String>,
) -> Result<MetricReport> {
    if scored.is_empty() {
        return Err(Error::Data("no scored events".into()));
    }
    let (overall_auc, overall_ap) = pooled_or_macro(scored, config, |set| {
        set.negative_scores().to_vec()
    })?;
    let ranks = compute_ranks(scored, config.tie_rule);
    let overall_mrr = mrr(&ranks)?;
    let negatives_total: usize = scored.iter().map(|s| s.candidates.negatives.len()).sum();

    // Distinct strategies present in the run, in label order.
    let mut strategies: BTreeMap<&'static str, Strategy> = BTreeMap::new();
    for set in scored {
        for negative in &set.candidates.negatives {
            strategies.insert(negative.strategy.label(), negative.strategy);
        }
    }

    let mut per_strategy = BTreeMap::new();
    for (label, strategy) in strategies {
        let select = |set: &ScoredCandidateSet| -> Vec<f64> {
            set.candidates
                .negatives
                .iter()
                .zip(set.negative_scores())
                .filter(|(n, _)| n.strategy == strategy)
                .map(|(_, &s)| s)
                .collect()
        };
        let with_any: Vec<ScoredCandidateSet> = scored
            .iter()
            .filter(|set| set.candidates.negatives.iter().any(|n| n.strategy == strategy))
            .cloned()
            .collect();
        let (s_auc, s_ap) = pooled_or_macro(&with_any, config, select)?;
        let s_ranks: Vec<RankRecord> = with_any
            .iter()
            .map(|set| {
                let negatives = select(set);
                RankRecord {
                    positive_ordinal: set.candidates.positive.ordinal,
                    rank: rank_of(set.positive_score(), &negatives, config.tie_rule),
                    k: negatives.len(),
                    best_label: String::new(),
                }
            })
            .collect();
        let s_negatives: usize = s_ranks.iter().map(|r| r.k).sum();
        per_strategy.insert(
            label.to_string(),
            StrategyMetrics {
                auc: s_auc,
                ap: s_ap,
                mrr: mrr(&s_ranks)?,
                events: with_any.len(),
                negatives: s_negatives,
            },
        );
    }

    Ok(MetricReport {
        auc: overall_auc,
        ap: overall_ap,
        mrr: overall_mrr,
        events: scored.len(),
        negatives: negatives_total,
        config,
        per_strategy,
        sampler_spec_hash,
    })
}
