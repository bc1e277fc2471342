//! Lossless longitudinal layouts.
//!
//! A temporal node activity plot gives every node a row; each event
//! (u, v, t) contributes the two points (t, row(u)) and (t, row(v)). A
//! temporal edge activity plot gives every directed pair a row and each
//! event one point. Rows are ordered by (first arrival, last arrival,
//! entity id) ascending — the id tie-break keeps layouts deterministic
//! when both arrival times coincide.

use tgeval_core::error::{Error, Result};
use tgeval_core::event::{History, NodeId};
use tgeval_core::split::SplitHistory;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntityKind {
    Node,
    Edge,
}

/// One plotted point; `key` indexes into [`PlotLayout::keys`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotPoint {
    pub timestamp: f64,
    pub row: usize,
    /// Ordinal of the event this point belongs to, for overlays.
    pub ordinal: usize,
    pub key: u16,
}

/// A labeled vertical rule, typically a split boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMarker {
    pub t: f64,
    pub label: String,
}

/// Deterministic y-assignment plus the styled point cloud.
#[derive(Debug, Clone)]
pub struct PlotLayout {
    pub kind: EntityKind,
    /// Row index -> display label (raw node id, or "u->v" for edges).
    pub row_labels: Vec<String>,
    pub points: Vec<PlotPoint>,
    /// Interned style keys referenced by the points.
    pub keys: Vec<String>,
    pub t_range: (f64, f64),
    pub boundaries: Vec<BoundaryMarker>,
    /// Largest event ordinal covered by the point cloud.
    pub max_ordinal: usize,
}

impl PlotLayout {
    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn key_label(&self, key: u16) -> &str {
        &self.keys[key as usize]
    }

    /// Adds the validation and test boundary rules from a split.
    pub fn mark_split(&mut self, split: &SplitHistory) {
        let events = split.history().events();
        if split.train_end() < split.val_end() {
            self.boundaries.push(BoundaryMarker {
                t: events[split.train_end()].timestamp,
                label: "val".to_string(),
            });
        }
        self.boundaries.push(BoundaryMarker {
            t: split.t_train(),
            label: "test".to_string(),
        });
    }
}

struct KeyInterner {
    keys: Vec<String>,
    index: std::collections::HashMap<String, u16>,
}

impl KeyInterner {
    fn new() -> Self {
        KeyInterner {
            keys: Vec::new(),
            index: std::collections::HashMap::new(),
        }
    }

    fn intern(&mut self, key: &str) -> u16 {
        if let Some(&id) = self.index.get(key) {
            return id;
        }
        let id = self.keys.len() as u16;
        self.keys.push(key.to_string());
        self.index.insert(key.to_string(), id);
        id
    }
}

/// Style key for a plain activity point: the node's attribute label when
/// one was ingested, a single shared key otherwise.
const ACTIVITY_KEY: &str = "activity";

/// Rows ordered by the (first, last, id) law over `entities`, which maps
/// entity index -> (first, last). Returns row-of-entity.
fn assign_rows(arrivals: &[(f64, f64)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..arrivals.len()).collect();
    order.sort_by(|&a, &b| {
        arrivals[a]
            .0
            .total_cmp(&arrivals[b].0)
            .then(arrivals[a].1.total_cmp(&arrivals[b].1))
            .then(a.cmp(&b))
    });
    let mut row_of = vec![0usize; arrivals.len()];
    for (row, &entity) in order.iter().enumerate() {
        row_of[entity] = row;
    }
    row_of
}

/// Temporal node activity layout: two points per event.
pub fn node_layout(history: &History) -> Result<PlotLayout> {
    if history.is_empty() {
        return Err(Error::Data("cannot lay out an empty history".into()));
    }
    let n = history.node_count();
    let mut first = vec![f64::INFINITY; n];
    let mut last = vec![f64::NEG_INFINITY; n];
    for event in history.events() {
        for node in [event.source, event.destination] {
            let i = node as usize;
            first[i] = first[i].min(event.timestamp);
            last[i] = last[i].max(event.timestamp);
        }
    }

    // Only plotted (observed) nodes get rows.
    let observed: Vec<NodeId> = (0..n as NodeId)
        .filter(|&id| first[id as usize].is_finite())
        .collect();
    let arrivals: Vec<(f64, f64)> = observed
        .iter()
        .map(|&id| (first[id as usize], last[id as usize]))
        .collect();
    let row_of_observed = assign_rows(&arrivals);
    let mut row_of = vec![usize::MAX; n];
    for (i, &id) in observed.iter().enumerate() {
        row_of[id as usize] = row_of_observed[i];
    }
    let mut row_labels = vec![String::new(); observed.len()];
    for &id in &observed {
        row_labels[row_of[id as usize]] = history.raw_id(id).to_string();
    }

    let mut interner = KeyInterner::new();
    let mut points = Vec::with_capacity(history.len() * 2);
    for event in history.events() {
        for node in [event.source, event.destination] {
            let key = match history.node_attr(node) {
                Some(label) => interner.intern(label),
                None => interner.intern(ACTIVITY_KEY),
            };
            points.push(PlotPoint {
                timestamp: event.timestamp,
                row: row_of[node as usize],
                ordinal: event.ordinal,
                key,
            });
        }
    }

    Ok(PlotLayout {
        kind: EntityKind::Node,
        row_labels,
        points,
        keys: interner.keys,
        t_range: history.time_range(),
        boundaries: Vec::new(),
        max_ordinal: history.len() - 1,
    })
}

/// Temporal edge activity layout: one point per event.
pub fn edge_layout(history: &History) -> Result<PlotLayout> {
    if history.is_empty() {
        return Err(Error::Data("cannot lay out an empty history".into()));
    }
    let mut pairs: std::collections::BTreeMap<(NodeId, NodeId), (f64, f64)> =
        std::collections::BTreeMap::new();
    for event in history.events() {
        let entry = pairs
            .entry(event.pair())
            .or_insert((event.timestamp, event.timestamp));
        entry.0 = entry.0.min(event.timestamp);
        entry.1 = entry.1.max(event.timestamp);
    }
    // BTreeMap order doubles as the pair-id tie-break.
    let pair_list: Vec<(NodeId, NodeId)> = pairs.keys().copied().collect();
    let arrivals: Vec<(f64, f64)> = pairs.values().copied().collect();
    let row_of_pair = assign_rows(&arrivals);
    let pair_row: std::collections::HashMap<(NodeId, NodeId), usize> = pair_list
        .iter()
        .copied()
        .zip(row_of_pair.iter().copied())
        .collect();

    let mut row_labels = vec![String::new(); pair_list.len()];
    for (&pair, &row) in pair_list.iter().zip(row_of_pair.iter()) {
        row_labels[row] = format!(
            "{}->{}",
            history.raw_id(pair.0),
            history.raw_id(pair.1)
        );
    }

    let mut interner = KeyInterner::new();
    let points = history
        .events()
        .iter()
        .map(|event| PlotPoint {
            timestamp: event.timestamp,
            row: pair_row[&event.pair()],
            ordinal: event.ordinal,
            key: interner.intern(ACTIVITY_KEY),
        })
        .collect();

    Ok(PlotLayout {
        kind: EntityKind::Edge,
        row_labels,
        points,
        keys: interner.keys,
        t_range: history.time_range(),
        boundaries: Vec::new(),
        max_ordinal: history.len() - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_rows_follow_first_then_last_arrival() {
        // a and b both arrive at t=1; a is active again at t=2, so b
        // (earlier last arrival) takes row 0.
        let records = vec![(0, 1, 1.0), (2, 0, 2.0)]; // a=0, b=1, c=2
        let history = History::from_dense(records, 3).unwrap();
        let layout = node_layout(&history).unwrap();
        assert_eq!(layout.row_labels, vec!["1", "0", "2"]);
        assert_eq!(layout.points.len(), 4);
    }

    #[test]
    fn single_event_layout() {
        let history = History::from_dense(vec![(0, 1, 1.0)], 2).unwrap();
        let layout = node_layout(&history).unwrap();
        assert_eq!(layout.points.len(), 2);
        let rows: Vec<usize> = layout.points.iter().map(|p| p.row).collect();
        assert_eq!(rows, vec![0, 1]);
    }

    #[test]
    fn edge_rows_follow_first_interaction() {
        let records = vec![(0, 1, 1.0), (0, 1, 3.0), (2, 3, 2.0)];
        let history = History::from_dense(records, 4).unwrap();
        let layout = edge_layout(&history).unwrap();
        assert_eq!(layout.row_labels, vec!["0->1", "2->3"]);
        let coords: Vec<(f64, usize)> = layout
            .points
            .iter()
            .map(|p| (p.timestamp, p.row))
            .collect();
        assert_eq!(coords, vec![(1.0, 0), (2.0, 1), (3.0, 0)]);
    }

    #[test]
    fn one_edge_keeps_a_single_row() {
        let records = vec![(0, 1, 1.0), (0, 1, 2.0), (0, 1, 5.0)];
        let history = History::from_dense(records, 2).unwrap();
        let layout = edge_layout(&history).unwrap();
        assert!(layout.points.iter().all(|p| p.row == 0));
    }

    #[test]
    fn identical_arrivals_break_ties_by_id() {
        // Two pairs, both first=1 last=1 (one event each, tied time).
        let records = vec![(4, 5, 1.0), (2, 3, 1.0)];
        let history = History::from_dense(records, 6).unwrap();
        let layout = edge_layout(&history).unwrap();
        assert_eq!(layout.row_labels, vec!["2->3", "4->5"]);
    }

    #[test]
    fn node_attrs_become_style_keys() {
        let records = vec![(0, 1, 1.0)];
        let mut history = History::from_dense(records, 2).unwrap();
        history.set_node_attrs(vec![Some("red".into()), None]);
        let layout = node_layout(&history).unwrap();
        assert_eq!(layout.keys.len(), 2);
        assert_eq!(layout.key_label(layout.points[0].key), "red");
        assert_eq!(layout.key_label(layout.points[1].key), "activity");
    }
}
