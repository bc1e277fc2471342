//! Streaming score providers.
//!
//! EdgeBank scores 1 iff the queried pair has an interaction strictly
//! before the query time; preferential attachment scores the product of
//! the endpoints' strict-past temporal degrees. Both read from a single
//! forward-only [`ScorerState`] that is advanced with positives only —
//! negatives are phantom queries and never enter the state. Neural
//! model scores enter through [`ExternalScoreTable`] files instead.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::{Event, NodeId};
use crate::sampling::CandidateSet;
use crate::split::SplitHistory;

/// EdgeBank variant: unbounded memory by default, optionally a sliding
/// time window, optionally undirected pair identity.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EdgeBankConfig {
    /// When set, a pair only scores 1 if last seen within `window` time
    /// units before the query.
    pub window: Option<f64>,
    /// Treat (u,v) and (v,u) as the same pair.
    pub symmetrize: bool,
}

/// Forward-only streaming state shared by EdgeBank and PA.
#[derive(Debug, Clone)]
pub struct ScorerState {
    /// Directed (or canonicalized) pair -> last seen timestamp.
    seen: HashMap<(NodeId, NodeId), f64>,
    /// Per-node event participation counters; a self-loop adds two.
    degrees: Vec<u64>,
    /// Last processed (timestamp, ordinal); advances must stay past it.
    watermark: Option<(f64, usize)>,
    edgebank: EdgeBankConfig,
}

impl ScorerState {
    pub fn new(node_count: usize, edgebank: EdgeBankConfig) -> Self {
        ScorerState {
            seen: HashMap::new(),
            degrees: vec![0; node_count],
            watermark: None,
            edgebank,
        }
    }

    fn key(&self, u: NodeId, v: NodeId) -> (NodeId, NodeId) {
        if self.edgebank.symmetrize && v < u {
            (v, u)
        } else {
            (u, v)
        }
    }

    /// Folds one observed event into the state. Events must arrive in
    /// stream order; a stale ordinal is a contract violation.
    pub fn advance(&mut self, event: &Event) -> Result<()> {
        if let Some((_, watermark)) = self.watermark {
            if event.ordinal <= watermark {
                return Err(Error::OutOfOrder {
                    watermark,
                    ordinal: event.ordinal,
                });
            }
        }
        let key = self.key(event.source, event.destination);
        self.seen.insert(key, event.timestamp);
        self.degrees[event.source as usize] += 1;
        self.degrees[event.destination as usize] += 1;
        self.watermark = Some((event.timestamp, event.ordinal));
        Ok(())
    }

    /// EdgeBank: 1 iff the pair was seen strictly before `t` (and inside
    /// the window, when one is configured). Read-only.
    pub fn edgebank_score(&self, u: NodeId, v: NodeId, t: f64) -> f64 {
        match self.seen.get(&self.key(u, v)) {
            None => 0.0,
            Some(&last) => match self.edgebank.window {
                None => 1.0,
                Some(w) => {
                    if last >= t - w {
                        1.0
                    } else {
                        0.0
                    }
                }
            },
        }
    }

    /// Preferential attachment: product of the endpoints' streaming
    /// degree counters. Read-only.
    pub fn pa_score(&self, u: NodeId, v: NodeId) -> f64 {
        (self.degrees[u as usize] * self.degrees[v as usize]) as f64
    }

    pub fn watermark(&self) -> Option<(f64, usize)> {
        self.watermark
    }
}

/// Scores keyed by (positive ordinal, slot), slot 0 being the positive,
/// as produced by an external model over a sampled candidate file.
#[derive(Debug, Clone)]
pub struct ExternalScoreTable {
    scores: HashMap<(usize, usize), f64>,
    pub model: String,
    pub sampler_spec_hash: String,
}

/// Provenance sidecar accompanying a score file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScoreSidecar {
    pub model: String,
    pub sampler_spec_hash: String,
}

impl ExternalScoreTable {
    pub fn new(model: String, sampler_spec_hash: String) -> Self {
        ExternalScoreTable {
            scores: HashMap::new(),
            model,
            sampler_spec_hash,
        }
    }

    pub fn insert(&mut self, ordinal: usize, slot: usize, score: f64) {
        self.scores.insert((ordinal, slot), score);
    }

    pub fn get(&self, ordinal: usize, slot: usize) -> Result<f64> {
        self.scores
            .get(&(ordinal, slot))
            .copied()
            .ok_or(Error::MissingScore { ordinal, slot })
    }

    /// Loads `positive_ordinal,slot,score` CSV plus its JSON sidecar and
    /// verifies the sidecar's sampler hash against `expected_hash`.
    pub fn load(
        csv_path: impl AsRef<Path>,
        sidecar_path: impl AsRef<Path>,
        expected_hash: Option<&str>,
    ) -> Result<Self> {
        let sidecar_path = sidecar_path.as_ref();
        let sidecar_file = File::open(sidecar_path)
            .map_err(|e| Error::io(sidecar_path.display().to_string(), e))?;
        let sidecar: ScoreSidecar = serde_json::from_reader(BufReader::new(sidecar_file))
            .map_err(|e| Error::Data(format!("{}: {e}", sidecar_path.display())))?;
        if let Some(expected) = expected_hash {
            if sidecar.sampler_spec_hash != expected {
                return Err(Error::SpecHashMismatch {
                    expected: expected.to_string(),
                    found: sidecar.sampler_spec_hash,
                });
            }
        }

        let csv_path = csv_path.as_ref();
        let display = csv_path.display().to_string();
        let file = File::open(csv_path).map_err(|e| Error::io(&display, e))?;
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(BufReader::new(file));
        let mut table = ExternalScoreTable::new(sidecar.model, sidecar.sampler_spec_hash);
        for row in reader.records() {
            let row = row.map_err(|e| Error::Data(format!("{display}: {e}")))?;
            let line = row.position().map(|p| p.line()).unwrap_or(0);
            let parse = |msg: String| Error::Parse {
                path: display.clone(),
                line,
                message: msg,
            };
            if row.len() < 3 {
                return Err(parse("expected positive_ordinal,slot,score".into()));
            }
            let ordinal: usize = row[0]
                .trim()
                .parse()
                .map_err(|_| parse(format!("bad ordinal {:?}", &row[0])))?;
            let slot: usize = row[1]
                .trim()
                .parse()
                .map_err(|_| parse(format!("bad slot {:?}", &row[1])))?;
            let score: f64 = row[2]
                .trim()
                .parse()
                .map_err(|_| parse(format!("bad score {:?}", &row[2])))?;
            table.insert(ordinal, slot, score);
        }
        Ok(table)
    }

    /// Writes the table in the documented format with its sidecar.
    pub fn write(
        &self,
        csv_path: impl AsRef<Path>,
        sidecar_path: impl AsRef<Path>,
    ) -> Result<()> {
        let csv_path = csv_path.as_ref();
        let display = csv_path.display().to_string();
        let file = File::create(csv_path).map_err(|e| Error::io(&display, e))?;
        let mut out = BufWriter::new(file);
        writeln!(out, "positive_ordinal,slot,score").map_err(|e| Error::io(&display, e))?;
        let mut rows: Vec<_> = self.scores.iter().collect();
        rows.sort_by_key(|&(&key, _)| key);
        for (&(ordinal, slot), &score) in rows {
            writeln!(out, "{ordinal},{slot},{score}").map_err(|e| Error::io(&display, e))?;
        }
        out.flush().map_err(|e| Error::io(&display, e))?;

        let sidecar_path = sidecar_path.as_ref();
        let sidecar = ScoreSidecar {
            model: self.model.clone(),
            sampler_spec_hash: self.sampler_spec_hash.clone(),
        };
        let json = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
        std::fs::write(sidecar_path, json + "\n")
            .map_err(|e| Error::io(sidecar_path.display().to_string(), e))?;
        Ok(())
    }
}

/// Which provider scores a candidate stream.
#[derive(Debug, Clone)]
pub enum ScoreProvider {
    EdgeBank(EdgeBankConfig),
    PreferentialAttachment,
    External(ExternalScoreTable),
}

impl ScoreProvider {
    pub fn name(&self) -> &str {
        match self {
            ScoreProvider::EdgeBank(_) => "edgebank",
            ScoreProvider::PreferentialAttachment => "pa",
            ScoreProvider::External(table) => &table.model,
        }
    }
}

/// A candidate set with one score per slot; slot 0 is the positive.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredCandidateSet {
    pub candidates: CandidateSet,
    pub scores: Vec<f64>,
}

impl ScoredCandidateSet {
    pub fn positive_score(&self) -> f64 {
        self.scores[0]
    }

    pub fn negative_scores(&self) -> &[f64] {
        &self.scores[1..]
    }
}

/// Streams candidate sets through a provider.
///
/// For each positive, every event with ordinal < positive.ordinal and
/// timestamp < positive.timestamp is flushed into the state first; the
/// positive and its negatives are then scored against that identical
/// state. Same-timestamp events never see each other, and negatives are
/// never inserted.
pub struct CandidateScorer<'a> {
    provider: ScoreProvider,
    split: &'a SplitHistory,
    state: ScorerState,
    flushed: usize,
    last_ordinal: Option<usize>,
}

impl<'a> CandidateScorer<'a> {
    pub fn new(provider: ScoreProvider, split: &'a SplitHistory) -> Self {
        let edgebank = match &provider {
            ScoreProvider::EdgeBank(config) => *config,
            _ => EdgeBankConfig::default(),
        };
        let state = ScorerState::new(split.history().node_count(), edgebank);
        CandidateScorer {
            provider,
            split,
            state,
            flushed: 0,
            last_ordinal: None,
        }
    }

    fn score_one(&self, u: NodeId, v: NodeId, t: f64) -> f64 {
        match &self.provider {
            ScoreProvider::EdgeBank(_) => self.state.edgebank_score(u, v, t),
            ScoreProvider::PreferentialAttachment => self.state.pa_score(u, v),
            ScoreProvider::External(_) => unreachable!("external scores are table lookups"),
        }
    }

    /// Scores one candidate set. Sets must arrive in increasing positive
    /// ordinal order and match the split's event stream.
    pub fn score_set(&mut self, set: &CandidateSet) -> Result<ScoredCandidateSet> {
        let events = self.split.history().events();
        let positive = &set.positive;
        if positive.ordinal >= events.len()
            || events[positive.ordinal].pair() != positive.pair()
            || events[positive.ordinal].timestamp != positive.timestamp
        {
            return Err(Error::Data(format!(
                "candidate set for ordinal {} does not match the split's event stream",
                positive.ordinal
            )));
        }
        if let Some(last) = self.last_ordinal {
            if positive.ordinal <= last {
                return Err(Error::Data(format!(
                    "candidate stream out of order: ordinal {} after {}",
                    positive.ordinal, last
                )));
            }
        }
        self.last_ordinal = Some(positive.ordinal);

        let mut scores = Vec::with_capacity(set.negatives.len() + 1);
        match &self.provider {
            ScoreProvider::External(table) => {
                scores.push(table.get(positive.ordinal, 0)?);
                for slot in 1..=set.negatives.len() {
                    scores.push(table.get(positive.ordinal, slot)?);
                }
            }
            _ => {
                // Strict past: stop at the first event sharing the
                // positive's timestamp (sortedness makes ordinal < t's
                // block equivalent to timestamp < t).
                while self.flushed < positive.ordinal
                    && events[self.flushed].timestamp < positive.timestamp
                {
                    self.state.advance(&events[self.flushed])?;
                    self.flushed += 1;
                }
                scores.push(self.score_one(positive.source, positive.destination, positive.timestamp));
                for negative in &set.negatives {
                    scores.push(self.score_one(
                        negative.source,
                        negative.destination,
                        positive.timestamp,
                    ));
                }
            }
        }
        Ok(ScoredCandidateSet {
            candidates: set.clone(),
            scores,
        })
    }

    /// Scores a whole run in stream order.
    pub fn score_all(&mut self, sets: &[CandidateSet]) -> Result<Vec<ScoredCandidateSet>> {
        sets.iter().map(|set| self.score_set(set)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::History;
    use crate::sampling::{Negative, Strategy};
    use crate::split::{chronological_split, Fractions};

    fn event(source: NodeId, destination: NodeId, timestamp: f64, ordinal: usize) -> Event {
        Event {
            source,
            destination,
            timestamp,
            ordinal,
        }
    }

    #[test]
    fn edgebank_is_directed_by_default() {
        let mut state = ScorerState::new(4, EdgeBankConfig::default());
        state.advance(&event(0, 1, 1.0, 0)).unwrap();
        assert_eq!(state.edgebank_score(0, 1, 5.0), 1.0);
        assert_eq!(state.edgebank_score(1, 0, 5.0), 0.0);
        let mut sym = ScorerState::new(
            4,
            EdgeBankConfig {
                symmetrize: true,
                ..EdgeBankConfig::default()
            },
        );
        sym.advance(&event(0, 1, 1.0, 0)).unwrap();
        assert_eq!(sym.edgebank_score(1, 0, 5.0), 1.0);
    }

    #[test]
    fn empty_state_scores_zero() {
        let state = ScorerState::new(4, EdgeBankConfig::default());
        assert_eq!(state.edgebank_score(0, 1, 5.0), 0.0);
        assert_eq!(state.pa_score(0, 1), 0.0);
    }

    #[test]
    fn pa_is_a_degree_product() {
        let mut state = ScorerState::new(4, EdgeBankConfig::default());
        state.advance(&event(0, 1, 1.0, 0)).unwrap();
        state.advance(&event(0, 2, 2.0, 1)).unwrap();
        // deg(0)=2, deg(1)=1
        assert_eq!(state.pa_score(0, 1), 2.0);
        assert_eq!(state.pa_score(1, 2), 1.0);
        assert_eq!(state.pa_score(3, 0), 0.0);
    }

    #[test]
    fn repeated_pair_grows_degrees_not_bank() {
        let mut state = ScorerState::new(2, EdgeBankConfig::default());
        state.advance(&event(0, 1, 1.0, 0)).unwrap();
        state.advance(&event(0, 1, 2.0, 1)).unwrap();
        assert_eq!(state.seen.len(), 1);
        assert_eq!(state.pa_score(0, 1), 4.0);
    }

    #[test]
    fn stale_advance_is_rejected() {
        let mut state = ScorerState::new(2, EdgeBankConfig::default());
        state.advance(&event(0, 1, 1.0, 5)).unwrap();
        let err = state.advance(&event(0, 1, 2.0, 5)).unwrap_err();
        assert!(matches!(err, Error::OutOfOrder { .. }));
    }

    #[test]
    fn window_forgets_old_pairs() {
        let config = EdgeBankConfig {
            window: Some(3.0),
            symmetrize: false,
        };
        let mut state = ScorerState::new(2, config);
        state.advance(&event(0, 1, 1.0, 0)).unwrap();
        assert_eq!(state.edgebank_score(0, 1, 3.0, ), 1.0);
        assert_eq!(state.edgebank_score(0, 1, 10.0), 0.0);
    }

    /// train pair (0,1) repeats in test; same-timestamp positives in test
    /// must not see each other.
    #[test]
    fn streaming_scoring_uses_strict_past() {
        let records = vec![
            (0, 1, 0.0),
            (2, 3, 1.0),
            (0, 1, 2.0),
            (2, 3, 3.0),
            (0, 1, 4.0),
            (2, 3, 5.0),
            (0, 1, 6.0),
            (4, 5, 8.0),
            (0, 1, 9.0),
            (4, 6, 9.0),
        ];
        let h = History::from_dense(records, 7).unwrap();
        let fractions = Fractions {
            train: 0.7,
            val: 0.0,
            test: 0.3,
        };
        let split = chronological_split(h, fractions).unwrap();
        assert_eq!(split.val_end(), 7);
        let negative = |s, d| Negative {
            source: s,
            destination: d,
            strategy: Strategy::RandomDestination,
        };
        let sets: Vec<CandidateSet> = split
            .test_events()
            .iter()
            .map(|e| CandidateSet {
                positive: *e,
                negatives: vec![negative(0, 1), negative(4, 6)],
            })
            .collect();
        let mut scorer =
            CandidateScorer::new(ScoreProvider::EdgeBank(EdgeBankConfig::default()), &split);
        let scored = scorer.score_all(&sets).unwrap();
        // (4,5,8): positive unseen -> 0; negative (0,1) seen in train -> 1.
        assert_eq!(scored[0].scores, vec![0.0, 1.0, 0.0]);
        // (0,1,9): pair seen -> 1.
        assert_eq!(scored[1].positive_score(), 1.0);
        // (4,6,9): concurrent (0,1,9) is not flushed, but train (0,1) is.
        assert_eq!(scored[2].scores, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn external_table_lookup_and_missing_slot() {
        let records = vec![(0, 1, 0.0), (0, 1, 1.0), (0, 1, 2.0), (2, 3, 3.0)];
        let h = History::from_dense(records, 4).unwrap();
        let split = chronological_split(h, Fractions::DEFAULT).unwrap();
        let mut table = ExternalScoreTable::new("stub".into(), "hash".into());
        table.insert(3, 0, 0.9);
        let set = CandidateSet {
            positive: split.test_events()[0],
            negatives: vec![Negative {
                source: 0,
                destination: 1,
                strategy: Strategy::RandomDestination,
            }],
        };
        let mut scorer = CandidateScorer::new(ScoreProvider::External(table), &split);
        let err = scorer.score_set(&set).unwrap_err();
        match err {
            Error::MissingScore { ordinal, slot } => {
                assert_eq!((ordinal, slot), (3, 1));
            }
            other => panic!("expected MissingScore, got {other:?}"),
        }
    }

    #[test]
    fn mismatched_candidate_is_rejected() {
        let records = vec![(0, 1, 0.0), (0, 1, 1.0), (0, 1, 2.0), (2, 3, 3.0)];
        let h = History::from_dense(records, 4).unwrap();
        let split = chronological_split(h, Fractions::DEFAULT).unwrap();
        let set = CandidateSet {
            positive: event(2, 3, 99.0, 3),
            negatives: vec![],
        };
        let mut scorer =
            CandidateScorer::new(ScoreProvider::EdgeBank(EdgeBankConfig::default()), &split);
        assert!(scorer.score_set(&set).is_err());
    }
}
