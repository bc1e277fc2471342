//! The event-stream data model: timestamped interactions, the immutable
//! [`History`] they form, and strict-past prefix views.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node index. Raw dataset identifiers are remapped at ingestion;
/// the mapping lives on [`History`].
pub type NodeId = u32;

/// One timestamped directed interaction, the atom of a continuous-time
/// dynamic graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub source: NodeId,
    pub destination: NodeId,
    /// Non-negative time value in dataset units.
    pub timestamp: f64,
    /// Position in the global time-ordered stream, 0-based. Ties in
    /// timestamp are broken by input order, so ordinals are unique and
    /// strictly increasing along the stream.
    pub ordinal: usize,
}

impl Event {
    pub fn pair(&self) -> (NodeId, NodeId) {
        (self.source, self.destination)
    }
}

/// An immutable time-ordered event stream plus its node universe.
///
/// Events are sorted by `(timestamp, ordinal)` and `event[i].ordinal == i`.
/// Safe to share across concurrent readers once built.
#[derive(Debug, Clone)]
pub struct History {
    events: Vec<Event>,
    node_count: usize,
    /// Dense id -> raw dataset identifier.
    raw_ids: Vec<String>,
    /// Optional per-node label (dense id indexed), used for plot coloring.
    node_attrs: Option<Vec<Option<String>>>,
    /// Optional opaque per-event attribute strings, ordinal indexed.
    event_attrs: Option<Vec<String>>,
}

fn validate_timestamps<T>(records: &[T], timestamp: impl Fn(&T) -> f64) -> Result<()> {
    if records.is_empty() {
        return Err(Error::Data("event stream is empty".into()));
    }
    for (i, r) in records.iter().enumerate() {
        let t = timestamp(r);
        if !t.is_finite() || t < 0.0 {
            return Err(Error::Data(format!(
                "record {i} has invalid timestamp {t}; timestamps must be finite and non-negative"
            )));
        }
    }
    Ok(())
}

/// Stable time order: indices sorted by (timestamp, input position).
fn sorted_order<T>(records: &[T], timestamp: impl Fn(&T) -> f64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&a, &b| {
        timestamp(&records[a])
            .total_cmp(&timestamp(&records[b]))
            .then_with(|| a.cmp(&b))
    });
    order
}

impl History {
    /// Builds a history from `(raw_source, raw_destination, timestamp)`
    /// records in input order.
    ///
    /// Records are stably sorted by timestamp (input order breaks ties),
    /// ordinals are assigned along the sorted stream, and raw identifiers
    /// are mapped to dense indices in order of first appearance in the
    /// sorted stream. That ordering makes write-then-load a fixpoint.
    pub fn from_records(
        records: Vec<(String, String, f64)>,
        attrs: Option<Vec<String>>,
    ) -> Result<Self> {
        validate_timestamps(&records, |r| r.2)?;
        let order = sorted_order(&records, |r| r.2);

        let mut raw_ids: Vec<String> = Vec::new();
        let mut index: HashMap<String, NodeId> = HashMap::new();
        let mut events = Vec::with_capacity(records.len());
        let mut sorted_attrs = attrs.as_ref().map(|_| Vec::with_capacity(records.len()));
        for (ordinal, &i) in order.iter().enumerate() {
            let (ref src, ref dst, t) = records[i];
            let mut dense = |raw: &String| -> NodeId {
                *index.entry(raw.clone()).or_insert_with(|| {
                    raw_ids.push(raw.clone());
                    (raw_ids.len() - 1) as NodeId
                })
            };
            let source = dense(src);
            let destination = dense(dst);
            events.push(Event {
                source,
                destination,
                timestamp: t,
                ordinal,
            });
            if let (Some(out), Some(a)) = (sorted_attrs.as_mut(), attrs.as_ref()) {
                out.push(a[i].clone());
            }
        }

        let node_count = raw_ids.len();
        Ok(History {
            events,
            node_count,
            raw_ids,
            node_attrs: None,
            event_attrs: sorted_attrs,
        })
    }

    /// Builds a history directly from dense-id events, for generators and
    /// tests. Raw identifiers become the decimal form of the dense index,
    /// and `node_count` may exceed the largest observed id (absent nodes
    /// are legal in synthetic universes).
    pub fn from_dense(records: Vec<(NodeId, NodeId, f64)>, node_count: usize) -> Result<Self> {
        validate_timestamps(&records, |r| r.2)?;
        if let Some(max_id) = records.iter().map(|&(u, v, _)| u.max(v)).max() {
            if (max_id as usize) >= node_count {
                return Err(Error::Data(format!(
                    "node id {max_id} out of range for node_count {node_count}"
                )));
            }
        }
        let order = sorted_order(&records, |r| r.2);
        let events = order
            .iter()
            .enumerate()
            .map(|(ordinal, &i)| Event {
                source: records[i].0,
                destination: records[i].1,
                timestamp: records[i].2,
                ordinal,
            })
            .collect();
        Ok(History {
            events,
            node_count,
            raw_ids: (0..node_count).map(|i| i.to_string()).collect(),
            node_attrs: None,
            event_attrs: None,
        })
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Raw dataset identifier for a dense node id.
    pub fn raw_id(&self, node: NodeId) -> &str {
        &self.raw_ids[node as usize]
    }

    /// Dense id for a raw identifier, if the node was observed.
    pub fn dense_id(&self, raw: &str) -> Option<NodeId> {
        self.raw_ids
            .iter()
            .position(|r| r == raw)
            .map(|i| i as NodeId)
    }

    pub fn node_attr(&self, node: NodeId) -> Option<&str> {
        self.node_attrs
            .as_ref()
            .and_then(|attrs| attrs[node as usize].as_deref())
    }

    pub fn set_node_attrs(&mut self, attrs: Vec<Option<String>>) {
        debug_assert_eq!(attrs.len(), self.node_count);
        self.node_attrs = Some(attrs);
    }

    pub(crate) fn replace_raw_ids(&mut self, raw_ids: Vec<String>) {
        debug_assert_eq!(raw_ids.len(), self.node_count);
        self.raw_ids = raw_ids;
    }

    pub fn event_attr(&self, ordinal: usize) -> Option<&str> {
        self.event_attrs.as_ref().map(|a| a[ordinal].as_str())
    }

    pub fn has_event_attrs(&self) -> bool {
        self.event_attrs.is_some()
    }

    /// Strict-past view: exactly the events with timestamp < `t`. Events
    /// sharing timestamp `t` are excluded.
    pub fn prefix(&self, t: f64) -> &[Event] {
        self.prefix_bounded(t, usize::MAX)
    }

    /// Strict-past view additionally cut at an ordinal bound, for
    /// streaming scorers that must not see same-timestamp peers with a
    /// larger ordinal either.
    pub fn prefix_bounded(&self, t: f64, ordinal_bound: usize) -> &[Event] {
        let by_time = self.events.partition_point(|e| e.timestamp < t);
        &self.events[..by_time.min(ordinal_bound)]
    }

    /// Timestamp span `(min, max)` of the stream.
    pub fn time_range(&self) -> (f64, f64) {
        (
            self.events.first().map(|e| e.timestamp).unwrap_or(0.0),
            self.events.last().map(|e| e.timestamp).unwrap_or(0.0),
        )
    }
}
