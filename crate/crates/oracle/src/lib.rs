//! Brute-force reference implementations for the tgeval test suites.
//!
//! Everything in this crate recomputes results from first principles:
//! quadratic pair counting for AUC, per-threshold rescans for average
//! precision, full sorts for ranks, and from-scratch state rebuilds for
//! the streaming scorers. None of it shares code with the fast paths it
//! checks, and none of it is part of any release artifact — it is pulled
//! in only as a dev-dependency.
//!
//! Inputs are plain slices and `(source, destination, timestamp)` tuples
//! so the crate stays decoupled from the main data model.

/// A single fast-vs-oracle comparison, used by the acceptance suite to
/// report which instance diverged and by how much.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub metric: &'static str,
    pub fast: f64,
    pub oracle: f64,
    pub instance: String,
}

impl OracleReport {
    pub fn difference(&self) -> f64 {
        (self.fast - self.oracle).abs()
    }

    /// True when the fast value matches the oracle within `tol`.
    pub fn within(&self, tol: f64) -> bool {
        self.difference() <= tol
    }
}

impl std::fmt::Display for OracleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: fast={} oracle={} |diff|={:.3e} ({})",
            self.metric,
            self.fast,
            self.oracle,
            self.difference(),
            self.instance
        )
    }
}

/// Pooled AUC by explicit double loop: wins count 1, ties count 1/2.
///
/// Panics on empty input; callers are test harnesses that control sizes.
pub fn auc(positives: &[f64], negatives: &[f64]) -> f64 {
    assert!(
        !positives.is_empty() && !negatives.is_empty(),
        "oracle auc needs at least one score on each side"
    );
    let mut wins = 0u64;
    let mut ties = 0u64;
    for &p in positives {
        for &n in negatives {
            if p > n {
                wins += 1;
            } else if p == n {
                ties += 1;
            }
        }
    }
    let pairs = (positives.len() * negatives.len()) as f64;
    (wins as f64 + 0.5 * ties as f64) / pairs
}

/// Average precision of the pooled ranking, positives relevant.
///
/// Walks the distinct score thresholds in descending order and rescans
/// the full lists at every threshold, so ties are handled by construction:
/// each threshold admits its entire tied block at once.
pub fn average_precision(positives: &[f64], negatives: &[f64]) -> f64 {
    assert!(
        !positives.is_empty() && !negatives.is_empty(),
        "oracle ap needs at least one score on each side"
    );
    let mut thresholds: Vec<f64> = positives.iter().chain(negatives.iter()).copied().collect();
    thresholds.sort_by(|a, b| b.total_cmp(a));
    thresholds.dedup();

    let total_relevant = positives.len() as f64;
    let mut ap = 0.0;
    let mut prev_relevant = 0usize;
    for &th in &thresholds {
        let relevant = positives.iter().filter(|&&s| s >= th).count();
        let retrieved = relevant + negatives.iter().filter(|&&s| s >= th).count();
        let gained = relevant - prev_relevant;
        if gained > 0 {
            ap += (gained as f64 / total_relevant) * (relevant as f64 / retrieved as f64);
        }
        prev_relevant = relevant;
    }
    ap
}

/// Mean rank of the positive among its negatives via a full sort.
///
/// Rank 1 is best. Ties are averaged: the positive takes the midpoint of
/// the tied block it lands in.
pub fn mean_rank(positive: f64, negatives: &[f64]) -> f64 {
    let mut all: Vec<f64> = Vec::with_capacity(negatives.len() + 1);
    all.push(positive);
    all.extend_from_slice(negatives);
    all.sort_by(|a, b| b.total_cmp(a));
    let first = all.iter().position(|&s| s == positive).unwrap();
    let last = all.iter().rposition(|&s| s == positive).unwrap();
    (first + last) as f64 / 2.0 + 1.0
}

/// Mean reciprocal rank over per-event mean ranks.
pub fn mrr(ranks: &[f64]) -> f64 {
    assert!(!ranks.is_empty(), "oracle mrr needs at least one rank");
    ranks.iter().map(|r| 1.0 / r).sum::<f64>() / ranks.len() as f64
}

/// One timestamped interaction: (source, destination, timestamp).
pub type RawEvent = (u32, u32, f64);

fn canonical(u: u32, v: u32, symmetrize: bool) -> (u32, u32) {
    if symmetrize && v < u {
        (v, u)
    } else {
        (u, v)
    }
}

/// EdgeBank score recomputed from scratch: scan every event strictly
/// before `t` and remember the last time the queried pair was seen.
pub fn edgebank_replay(
    events: &[RawEvent],
    u: u32,
    v: u32,
    t: f64,
    symmetrize: bool,
    window: Option<f64>,
) -> f64 {
    let query = canonical(u, v, symmetrize);
    let mut last_seen: Option<f64> = None;
    for &(s, d, ts) in events {
        if ts >= t {
            continue;
        }
        if canonical(s, d, symmetrize) == query {
            last_seen = Some(match last_seen {
                Some(prev) if prev > ts => prev,
                _ => ts,
            });
        }
    }
    match (last_seen, window) {
        (None, _) => 0.0,
        (Some(_), None) => 1.0,
        (Some(seen), Some(w)) => {
            if seen >= t - w {
                1.0
            } else {
                0.0
            }
        }
    }
}

/// Preferential-attachment score recomputed from scratch.
///
/// Each event strictly before `t` adds one to both endpoint counters, so
/// a self-loop contributes two to its node.
pub fn pa_replay(events: &[RawEvent], u: u32, v: u32, t: f64) -> f64 {
    let mut deg_u = 0u64;
    let mut deg_v = 0u64;
    for &(s, d, ts) in events {
        if ts >= t {
            continue;
        }
        if s == u {
            deg_u += 1;
        }
        if d == u {
            deg_u += 1;
        }
        if s == v {
            deg_v += 1;
        }
        if d == v {
            deg_v += 1;
        }
    }
    (deg_u * deg_v) as f64
}

/// Count of events strictly before `t` touching `node` (a self-loop
/// counts once — it is one event).
pub fn temporal_degree_replay(events: &[RawEvent], node: u32, t: f64) -> u64 {
    events
        .iter()
        .filter(|&&(s, d, ts)| ts < t && (s == node || d == node))
        .count() as u64
}

/// Count of events strictly before `t` on exactly the directed pair.
pub fn edge_degree_replay(events: &[RawEvent], u: u32, v: u32, t: f64) -> u64 {
    events
        .iter()
        .filter(|&&(s, d, ts)| ts < t && s == u && d == v)
        .count() as u64
}

/// Node category derived by scanning the train and test slices directly.
pub fn node_category(train: &[RawEvent], test: &[RawEvent], node: u32) -> &'static str {
    let in_train = train.iter().any(|&(s, d, _)| s == node || d == node);
    let in_test = test.iter().any(|&(s, d, _)| s == node || d == node);
    match (in_train, in_test) {
        (true, false) => "historical",
        (false, true) => "inductive",
        (true, true) => "overlap",
        (false, false) => "absent",
    }
}

/// Directed-pair category derived by scanning the train and test slices.
pub fn edge_category(train: &[RawEvent], test: &[RawEvent], u: u32, v: u32) -> &'static str {
    let in_train = train.iter().any(|&(s, d, _)| s == u && d == v);
    let in_test = test.iter().any(|&(s, d, _)| s == u && d == v);
    match (in_train, in_test) {
        (true, false) => "historical",
        (false, true) => "inductive",
        (true, true) => "overlap",
        (false, false) => "never-observed",
    }
}
