//! Node, edge, and node-pair categories over a chronological split, and
//! the entity catalog the negative samplers draw from.
//!
//! An entity is *historical* when it occurs in the training history and
//! never in the test history, *inductive* when it occurs only in test,
//! and *overlap* when it occurs in both. Categories are global over the
//! split (an inductive node is inductive even when queried before its
//! first appearance), and membership is strict by default: historical
//! excludes overlap. The `historical_includes_overlap` compatibility
//! flag relaxes that to the prior-work reading where historical means
//! "seen during training".

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::event::NodeId;
use crate::split::SplitHistory;

/// Occupancy of a node across the train/test partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeCategory {
    Historical,
    Inductive,
    Overlap,
    /// Appears in neither side: possible for synthetic universes and, with
    /// a train-only observation scope, for validation-only nodes.
    Absent,
}

impl NodeCategory {
    pub fn label(self) -> &'static str {
        match self {
            NodeCategory::Historical => "historical",
            NodeCategory::Inductive => "inductive",
            NodeCategory::Overlap => "overlap",
            NodeCategory::Absent => "absent",
        }
    }
}

/// Occupancy of a directed pair across the train/test partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeCategory {
    /// The pair never appears in the visible history.
    NeverObserved,
    Historical,
    Inductive,
    Overlap,
}

impl EdgeCategory {
    pub fn label(self) -> &'static str {
        match self {
            EdgeCategory::NeverObserved => "never-observed",
            EdgeCategory::Historical => "historical",
            EdgeCategory::Inductive => "inductive",
            EdgeCategory::Overlap => "overlap",
        }
    }
}

/// The six unordered node-pair classes. Orientation is reimposed at
/// sampling time; `classify_pair` treats (historical, inductive) and
/// (inductive, historical) as the same class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    HistoricalHistorical,
    HistoricalInductive,
    InductiveInductive,
    OverlapOverlap,
    OverlapHistorical,
    OverlapInductive,
}

impl PairClass {
    pub const ALL: [PairClass; 6] = [
        PairClass::HistoricalHistorical,
        PairClass::HistoricalInductive,
        PairClass::InductiveInductive,
        PairClass::OverlapOverlap,
        PairClass::OverlapHistorical,
        PairClass::OverlapInductive,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PairClass::HistoricalHistorical => "historical-historical",
            PairClass::HistoricalInductive => "historical-inductive",
            PairClass::InductiveInductive => "inductive-inductive",
            PairClass::OverlapOverlap => "overlap-overlap",
            PairClass::OverlapHistorical => "overlap-historical",
            PairClass::OverlapInductive => "overlap-inductive",
        }
    }

    /// The two endpoint pools this class draws from.
    pub fn endpoint_categories(self) -> (NodeCategory, NodeCategory) {
        match self {
            PairClass::HistoricalHistorical => (NodeCategory::Historical, NodeCategory::Historical),
            PairClass::HistoricalInductive => (NodeCategory::Historical, NodeCategory::Inductive),
            PairClass::InductiveInductive => (NodeCategory::Inductive, NodeCategory::Inductive),
            PairClass::OverlapOverlap => (NodeCategory::Overlap, NodeCategory::Overlap),
            PairClass::OverlapHistorical => (NodeCategory::Overlap, NodeCategory::Historical),
            PairClass::OverlapInductive => (NodeCategory::Overlap, NodeCategory::Inductive),
        }
    }
}

/// Which events count as "observed before test" when categorizing.
///
/// Under `TrainOnly`, validation events are invisible to the taxonomy:
/// they belong to neither side, and entities occurring only there
/// classify as absent / never observed. Degree queries always see the
/// full stream regardless of scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObservationScope {
    TrainPlusVal,
    TrainOnly,
}

impl Default for ObservationScope {
    fn default() -> Self {
        ObservationScope::TrainPlusVal
    }
}

/// Flags controlling catalog construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CatalogConfig {
    pub scope: ObservationScope,
    /// Relaxed compatibility mode: historical membership admits entities
    /// that also reappear in test (the overlap class becomes empty).
    pub historical_includes_overlap: bool,
}

#[derive(Debug, Clone, Default)]
struct Occurrence {
    first_arrival: f64,
    last_arrival: f64,
    in_train: bool,
    in_test: bool,
    /// Event timestamps involving this entity, in stream order (hence
    /// sorted), over the full history.
    arrivals: Vec<f64>,
}

impl Occurrence {
    fn record(&mut self, t: f64, in_train: bool, in_test: bool) {
        if self.arrivals.is_empty() {
            self.first_arrival = t;
        }
        self.last_arrival = t;
        self.in_train |= in_train;
        self.in_test |= in_test;
        self.arrivals.push(t);
    }

    fn category(&self, relaxed: bool) -> NodeCategory {
        match (self.in_train, self.in_test) {
            (true, true) => {
                if relaxed {
                    NodeCategory::Historical
                } else {
                    NodeCategory::Overlap
                }
            }
            (true, false) => NodeCategory::Historical,
            (false, true) => NodeCategory::Inductive,
            (false, false) => NodeCategory::Absent,
        }
    }
}

/// Per-entity presence records and category indexes for one split.
///
/// Immutable after build; safe for concurrent readers.
#[derive(Debug, Clone)]
pub struct EntityCatalog {
    config: CatalogConfig,
    t_train: f64,
    node_count: usize,
    nodes: Vec<Option<Occurrence>>,
    edges: BTreeMap<(NodeId, NodeId), Occurrence>,
    node_pools: BTreeMap<NodeCategory, Vec<NodeId>>,
    edge_pools: BTreeMap<EdgeCategory, Vec<(NodeId, NodeId)>>,
}

/// One pass over the split to collect per-entity presence, then category
/// index construction. Requires non-empty train and test (guaranteed by
/// `chronological_split`).
pub fn build_catalog(split: &SplitHistory, config: CatalogConfig) -> Result<EntityCatalog> {
    if split.train_events().is_empty() || split.test_events().is_empty() {
        return Err(Error::Data(
            "catalog requires non-empty train and test splits".into(),
        ));
    }
    let history = split.history();
    let train_boundary = match config.scope {
        ObservationScope::TrainPlusVal => split.val_end(),
        ObservationScope::TrainOnly => split.train_end(),
    };
    let mut nodes: Vec<Option<Occurrence>> = vec![None; history.node_count()];
    let mut edges: BTreeMap<(NodeId, NodeId), Occurrence> = BTreeMap::new();

    for event in history.events() {
        let in_train = event.ordinal < train_boundary;
        let in_test = event.ordinal >= split.val_end();
        nodes[event.source as usize]
            .get_or_insert_with(Occurrence::default)
            .record(event.timestamp, in_train, in_test);
        // A self-loop is one event; count it once for its node.
        if event.destination != event.source {
            nodes[event.destination as usize]
                .get_or_insert_with(Occurrence::default)
                .record(event.timestamp, in_train, in_test);
        }
        edges
            .entry(event.pair())
            .or_default()
            .record(event.timestamp, in_train, in_test);
    }

    let relaxed = config.historical_includes_overlap;
    let mut node_pools: BTreeMap<NodeCategory, Vec<NodeId>> = BTreeMap::new();
    for cat in [
        NodeCategory::Historical,
        NodeCategory::Inductive,
        NodeCategory::Overlap,
    ] {
        node_pools.insert(cat, Vec::new());
    }
    for (id, occ) in nodes.iter().enumerate() {
        if let Some(occ) = occ {
            let cat = occ.category(relaxed);
            if cat != NodeCategory::Absent {
                node_pools.get_mut(&cat).unwrap().push(id as NodeId);
            }
        }
    }

    let mut edge_pools: BTreeMap<EdgeCategory, Vec<(NodeId, NodeId)>> = BTreeMap::new();
    for cat in [
        EdgeCategory::Historical,
        EdgeCategory::Inductive,
        EdgeCategory::Overlap,
    ] {
        edge_pools.insert(cat, Vec::new());
    }
    for (&pair, occ) in &edges {
        let cat = match occ.category(relaxed) {
            NodeCategory::Historical => EdgeCategory::Historical,
            NodeCategory::Inductive => EdgeCategory::Inductive,
            NodeCategory::Overlap => EdgeCategory::Overlap,
            NodeCategory::Absent => continue,
        };
        edge_pools.get_mut(&cat).unwrap().push(pair);
    }

    Ok(EntityCatalog {
        config,
        t_train: split.t_train(),
        node_count: history.node_count(),
        nodes,
        edges,
        node_pools,
        edge_pools,
    })
}

impl EntityCatalog {
    pub fn config(&self) -> CatalogConfig {
        self.config
    }

    pub fn t_train(&self) -> f64 {
        self.t_train
    }

    /// Size of the node universe, including absent ids.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn classify_node(&self, node: NodeId) -> NodeCategory {
        self.nodes
            .get(node as usize)
            .and_then(|occ| occ.as_ref())
            .map(|occ| occ.category(self.config.historical_includes_overlap))
            .unwrap_or(NodeCategory::Absent)
    }

    pub fn classify_edge(&self, u: NodeId, v: NodeId) -> EdgeCategory {
        self.edges
            .get(&(u, v))
            .map(|occ| {
                match occ.category(self.config.historical_includes_overlap) {
                    NodeCategory::Historical => EdgeCategory::Historical,
                    NodeCategory::Inductive => EdgeCategory::Inductive,
                    NodeCategory::Overlap => EdgeCategory::Overlap,
                    NodeCategory::Absent => EdgeCategory::NeverObserved,
                }
            })
            .unwrap_or(EdgeCategory::NeverObserved)
    }

    /// Unordered node-pair class, or None when either endpoint is absent.
    pub fn classify_pair(&self, u: NodeId, v: NodeId) -> Option<PairClass> {
        use NodeCategory::*;
        let pair = (self.classify_node(u), self.classify_node(v));
        match pair {
            (Historical, Historical) => Some(PairClass::HistoricalHistorical),
            (Historical, Inductive) | (Inductive, Historical) => {
                Some(PairClass::HistoricalInductive)
            }
            (Inductive, Inductive) => Some(PairClass::InductiveInductive),
            (Overlap, Overlap) => Some(PairClass::OverlapOverlap),
            (Overlap, Historical) | (Historical, Overlap) => Some(PairClass::OverlapHistorical),
            (Overlap, Inductive) | (Inductive, Overlap) => Some(PairClass::OverlapInductive),
            _ => None,
        }
    }

    /// Sorted members of a node category (absent has no pool).
    pub fn node_pool(&self, category: NodeCategory) -> &[NodeId] {
        self.node_pools
            .get(&category)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Sorted members of an edge category. The never-observed pool is the
    /// implicit complement and is not materialized.
    pub fn edge_pool(&self, category: EdgeCategory) -> &[(NodeId, NodeId)] {
        self.edge_pools
            .get(&category)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// True when the directed pair occurs anywhere in the full stream,
    /// validation included. Used by never-observed rejection sampling.
    pub fn is_observed_pair(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.contains_key(&(u, v))
    }

    /// Count of events strictly before `t` in which the node takes part
    /// (one per event; a self-loop counts once).
    pub fn temporal_degree(&self, node: NodeId, t: f64) -> usize {
        self.nodes
            .get(node as usize)
            .and_then(|occ| occ.as_ref())
            .map(|occ| occ.arrivals.partition_point(|&a| a < t))
            .unwrap_or(0)
    }

    /// Count of prior events on exactly the directed pair, strictly
    /// before `t`.
    pub fn edge_degree(&self, u: NodeId, v: NodeId, t: f64) -> usize {
        self.edges
            .get(&(u, v))
            .map(|occ| occ.arrivals.partition_point(|&a| a < t))
            .unwrap_or(0)
    }

    pub fn node_first_last(&self, node: NodeId) -> Option<(f64, f64)> {
        self.nodes
            .get(node as usize)
            .and_then(|occ| occ.as_ref())
            .map(|occ| (occ.first_arrival, occ.last_arrival))
    }

    pub fn edge_first_last(&self, u: NodeId, v: NodeId) -> Option<(f64, f64)> {
        self.edges
            .get(&(u, v))
            .map(|occ| (occ.first_arrival, occ.last_arrival))
    }

    /// Observed directed pairs in sorted order.
    pub fn observed_pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.keys().copied()
    }

    /// Category counts for the classification summary.
    pub fn summary(&self) -> CatalogSummary {
        let node_counts = self
            .node_pools
            .iter()
            .map(|(cat, members)| (cat.label().to_string(), members.len()))
            .collect();
        let edge_counts = self
            .edge_pools
            .iter()
            .map(|(cat, members)| (cat.label().to_string(), members.len()))
            .collect();
        CatalogSummary {
            scope: self.config.scope,
            historical_includes_overlap: self.config.historical_includes_overlap,
            t_train: self.t_train,
            node_counts,
            edge_counts,
        }
    }
}

/// JSON summary emitted by the classify stage.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogSummary {
    pub scope: ObservationScope,
    pub historical_includes_overlap: bool,
    pub t_train: f64,
    pub node_counts: BTreeMap<String, usize>,
    pub edge_counts: BTreeMap<String, usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::History;
    use crate::split::{chronological_split, Fractions};

    /// Four events so 70/15/15 puts the last one in test: train [(0,1)x2],
    /// val [(0,1)], test [(2,3)].
    fn split_two_pairs() -> SplitHistory {
        let records = vec![(0, 1, 0.0), (0, 1, 1.0), (0, 1, 2.0), (2, 3, 3.0)];
        let h = History::from_dense(records, 4).unwrap();
        chronological_split(h, Fractions::DEFAULT).unwrap()
    }

    #[test]
    fn disjoint_train_test_categories() {
        let split = split_two_pairs();
        let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();
        assert_eq!(catalog.classify_node(0), NodeCategory::Historical);
        assert_eq!(catalog.classify_node(1), NodeCategory::Historical);
        assert_eq!(catalog.classify_node(2), NodeCategory::Inductive);
        assert_eq!(catalog.classify_node(3), NodeCategory::Inductive);
        assert_eq!(catalog.classify_edge(0, 1), EdgeCategory::Historical);
        assert_eq!(catalog.classify_edge(2, 3), EdgeCategory::Inductive);
        assert_eq!(catalog.classify_edge(0, 3), EdgeCategory::NeverObserved);
    }

    #[test]
    fn overlap_when_pair_repeats_in_test() {
        let records = vec![(0, 1, 0.0), (0, 1, 1.0), (0, 1, 2.0), (0, 1, 3.0)];
        let h = History::from_dense(records, 2).unwrap();
        let split = chronological_split(h, Fractions::DEFAULT).unwrap();
        let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();
        assert_eq!(catalog.classify_node(0), NodeCategory::Overlap);
        assert_eq!(catalog.classify_edge(0, 1), EdgeCategory::Overlap);
    }

    #[test]
    fn relaxed_historical_absorbs_overlap() {
        let records = vec![(0, 1, 0.0), (0, 1, 1.0), (0, 1, 2.0), (0, 1, 3.0)];
        let h = History::from_dense(records, 2).unwrap();
        let split = chronological_split(h, Fractions::DEFAULT).unwrap();
        let config = CatalogConfig {
            historical_includes_overlap: true,
            ..CatalogConfig::default()
        };
        let catalog = build_catalog(&split, config).unwrap();
        assert_eq!(catalog.classify_node(0), NodeCategory::Historical);
        assert_eq!(catalog.classify_edge(0, 1), EdgeCategory::Historical);
        assert!(catalog.node_pool(NodeCategory::Overlap).is_empty());
    }

    #[test]
    fn pair_classification_is_unordered() {
        let split = split_two_pairs();
        let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();
        assert_eq!(
            catalog.classify_pair(0, 2),
            Some(PairClass::HistoricalInductive)
        );
        assert_eq!(
            catalog.classify_pair(2, 0),
            Some(PairClass::HistoricalInductive)
        );
        // absent endpoint -> sentinel
        let records = vec![(0, 1, 0.0), (0, 1, 1.0), (0, 1, 2.0), (2, 3, 3.0)];
        let h = History::from_dense(records, 10).unwrap();
        let split = chronological_split(h, Fractions::DEFAULT).unwrap();
        let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();
        assert_eq!(catalog.classify_pair(0, 9), None);
    }

    #[test]
    fn degrees_are_strict_past() {
        let records = vec![(0, 1, 1.0), (0, 2, 2.0), (0, 1, 5.0), (3, 4, 6.0)];
        let h = History::from_dense(records, 5).unwrap();
        let split = chronological_split(h, Fractions::DEFAULT).unwrap();
        let catalog = build_catalog(&split, CatalogConfig::default()).unwrap();
        assert_eq!(catalog.temporal_degree(0, 3.0), 2);
        assert_eq!(catalog.temporal_degree(0, 1.0), 0);
        assert_eq!(catalog.temporal_degree(9, 100.0), 0);
        assert_eq!(catalog.edge_degree(0, 1, 6.0), 2);
        assert_eq!(catalog.edge_degree(0, 1, 1.0), 0);
        assert_eq!(catalog.edge_degree(7, 8, 6.0), 0);
    }

    #[test]
    fn train_only_scope_hides_validation() {
        // val period holds the only appearance of node 4.
        let records = vec![
            (0, 1, 0.0),
            (0, 1, 1.0),
            (0, 1, 2.0),
            (0, 1, 3.0),
            (0, 1, 4.0),
            (0, 1, 5.0),
            (0, 1, 6.0),
            (4, 1, 7.0),
            (2, 3, 8.0),
            (2, 3, 9.0),
        ];
        let h = History::from_dense(records, 5).unwrap();
        let split = chronological_split(h, Fractions::DEFAULT).unwrap();
        assert_eq!(split.train_end(), 7);
        assert_eq!(split.val_end(), 8);
        let strict = build_catalog(
            &split,
            CatalogConfig {
                scope: ObservationScope::TrainOnly,
                ..CatalogConfig::default()
            },
        )
        .unwrap();
        assert_eq!(strict.classify_node(4), NodeCategory::Absent);
        let default = build_catalog(&split, CatalogConfig::default()).unwrap();
        assert_eq!(default.classify_node(4), NodeCategory::Historical);
    }
}
