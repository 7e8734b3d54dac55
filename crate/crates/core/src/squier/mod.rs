//! Derivation graphs, the maps between them, and homotopy bases.

pub mod base;
pub mod canonical;
pub mod graph;
pub mod phi;
pub mod search;

pub use graph::{arrow_down, arrow_up, compose, edge_endpoints, square, DGEdge, DGPath};
pub use phi::{phi_edge, phi_path};
pub use search::{path_search, PathCaps};
