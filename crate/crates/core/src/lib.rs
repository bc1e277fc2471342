//! Evaluation toolkit for dynamic link prediction on continuous-time
//! dynamic graphs.
//!
//! The pipeline runs in stages: ingest a time-ordered interaction stream
//! ([`io`], [`event`]), split it chronologically ([`split`]), classify
//! nodes and edges by their train/test occupancy ([`taxonomy`]), draw
//! negative candidates per positive under a taxonomy-driven strategy
//! ([`sampling`]), score candidates with streaming heuristics or an
//! external model's score table ([`scoring`]), and aggregate into AUC,
//! average precision, MRR, and per-event ranks ([`metrics`]). The
//! [`synth`] module generates seeded streams with controlled category
//! mixes for testing.

pub mod error;
pub mod event;
pub mod io;
pub mod metrics;
pub mod sampling;
pub mod scoring;
pub mod split;
pub mod synth;
pub mod taxonomy;

pub use error::{Error, Result};
pub use event::{Event, History, NodeId};
pub use split::{chronological_split, Fractions, SplitHistory};
