//! Chronological train/validation/test splitting by event count, with
//! tie-block adjustment so no timestamp straddles a boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::{Event, History};

/// Split fractions for train/validation/test. Train and test must be
/// positive; validation may be zero. The three must sum to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fractions {
    pub train: f64,
    pub val: f64,
    pub test: f64,
}

impl Fractions {
    pub const DEFAULT: Fractions = Fractions {
        train: 0.70,
        val: 0.15,
        test: 0.15,
    };

    pub fn new(train: f64, val: f64, test: f64) -> Result<Self> {
        let f = Fractions { train, val, test };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.train > 0.0) || !(self.test > 0.0) || self.val < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "split fractions ({}, {}, {}) need positive train and test shares",
                self.train, self.val, self.test
            )));
        }
        let sum = self.train + self.val + self.test;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "split fractions sum to {sum}, expected 1"
            )));
        }
        Ok(())
    }
}

impl Default for Fractions {
    fn default() -> Self {
        Fractions::DEFAULT
    }
}

/// Which split boundary a tie adjustment moved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    TrainEnd,
    ValEnd,
}

/// A tie-block boundary adjustment applied during splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TieAdjustment {
    pub boundary: Boundary,
    pub from: usize,
    pub to: usize,
}

/// A history partitioned chronologically into train / validation / test.
///
/// `train_end` and `val_end` are exclusive ordinal boundaries. After the
/// tie adjustment, the maximum timestamp on either side of each boundary
/// is strictly below the minimum on the other, so `t_train` (the first
/// test timestamp) never occurs inside the training period.
#[derive(Debug, Clone)]
pub struct SplitHistory {
    history: History,
    fractions: Fractions,
    train_end: usize,
    val_end: usize,
    t_train: f64,
    adjustments: Vec<TieAdjustment>,
}

/// Moves a floor boundary forward past any tied timestamp block so the
/// boundary falls between two distinct timestamps.
fn advance_past_ties(events: &[Event], mut boundary: usize) -> usize {
    while boundary > 0
        && boundary < events.len()
        && events[boundary - 1].timestamp == events[boundary].timestamp
    {
        boundary += 1;
    }
    boundary
}

/// Splits a history by event-count proportions.
///
/// Boundaries start at `floor(train * M)` and `floor((train + val) * M)`
/// and are advanced past tied timestamp blocks; adjustments are recorded
/// for the split manifest. Errors if fewer than 3 events, if a boundary
/// adjustment empties the test split, or if the stream cannot be cut
/// between distinct timestamps at all.
pub fn chronological_split(history: History, fractions: Fractions) -> Result<SplitHistory> {
    fractions.validate()?;
    let m = history.len();
    if m < 3 {
        return Err(Error::Data(format!(
            "cannot split a stream of {m} events into train/val/test"
        )));
    }

    let events = history.events();
    let mut adjustments = Vec::new();

    let floor_train = (fractions.train * m as f64).floor() as usize;
    let floor_val = ((fractions.train + fractions.val) * m as f64).floor() as usize;

    let train_end = advance_past_ties(events, floor_train);
    if train_end != floor_train {
        adjustments.push(TieAdjustment {
            boundary: Boundary::TrainEnd,
            from: floor_train,
            to: train_end,
        });
    }

    let val_start = floor_val.max(train_end);
    let val_end = advance_past_ties(events, val_start);
    if val_end != floor_val {
        adjustments.push(TieAdjustment {
            boundary: Boundary::ValEnd,
            from: floor_val,
            to: val_end,
        });
    }

    if train_end == 0 {
        return Err(Error::Data("train split is empty".into()));
    }
    if val_end >= m {
        let reason = if events[0].timestamp == events[m - 1].timestamp {
            "a single timestamp spans the entire stream; no leak-free split exists"
        } else {
            "test split is empty"
        };
        return Err(Error::Data(reason.into()));
    }

    let t_train = events[val_end].timestamp;
    debug_assert!(events[val_end - 1].timestamp < t_train);

    Ok(SplitHistory {
        history,
        fractions,
        train_end,
        val_end,
        t_train,
        adjustments,
    })
}

impl SplitHistory {
    pub fn history(&self) -> &History {
        &self.history
    }

    pub fn fractions(&self) -> Fractions {
        self.fractions
    }

    /// Exclusive ordinal boundary of the train period.
    pub fn train_end(&self) -> usize {
        self.train_end
    }

    /// Exclusive ordinal boundary of the validation period; the first
    /// test ordinal.
    pub fn val_end(&self) -> usize {
        self.val_end
    }

    /// Timestamp of the first test event.
    pub fn t_train(&self) -> f64 {
        self.t_train
    }

    pub fn adjustments(&self) -> &[TieAdjustment] {
        &self.adjustments
    }

    pub fn train_events(&self) -> &[Event] {
        &self.history.events()[..self.train_end]
    }

    pub fn val_events(&self) -> &[Event] {
        &self.history.events()[self.train_end..self.val_end]
    }

    pub fn test_events(&self) -> &[Event] {
        &self.history.events()[self.val_end..]
    }

    /// The manifest record for this split.
    pub fn manifest(&self, train_includes_val: bool) -> SplitManifest {
        SplitManifest {
            fractions: self.fractions,
            event_count: self.history.len(),
            node_count: self.history.node_count(),
            train_end: self.train_end,
            val_end: self.val_end,
            t_train: self.t_train,
            tie_adjustments: self.adjustments.clone(),
            train_includes_val,
        }
    }
}

/// JSON-serializable record of how a stream was split.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplitManifest {
    pub fractions: Fractions,
    pub event_count: usize,
    pub node_count: usize,
    pub train_end: usize,
    pub val_end: usize,
    pub t_train: f64,
    pub tie_adjustments: Vec<TieAdjustment>,
    pub train_includes_val: bool,
}
