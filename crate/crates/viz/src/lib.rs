//! SVG visualization of dynamic link prediction performance on
//! continuous-time dynamic graphs: lossless temporal node/edge activity
//! plots with label or rank overlays, and degree-vs-rank scatters.
//! Every render also exports the plotted tuples as CSV.

pub mod layout;
pub mod scatter;
pub mod style;
pub mod svg;

pub use layout::{edge_layout, node_layout, BoundaryMarker, EntityKind, PlotLayout};
pub use scatter::{degree_scatter, DegreeMode, ScatterStats};
pub use style::{StyleConfig, StyleMap};
pub use svg::{render, Overlay, RenderStats};
