//! spanlab-core: exact weighted-girth machinery, high-girth base graphs,
//! and weighted lower-bound instances for light spanners.
//!
//! The crate is organized around a small number of exact primitives:
//!
//! - [`graph`]: an undirected multigraph with positive rational weights;
//! - [`girth`]: exact weighted girth (one capped Dijkstra per edge) and
//!   BFS unweighted girth;
//! - [`girth_graphs`]: certified high-girth base graphs (biclique,
//!   projective-plane incidence, randomized alteration) plus the
//!   bipartize/regularize preprocessing;
//! - [`construction`]: the cluster/spacer spanning-cycle instance with
//!   random embedding, light-cycle pruning, and a recomputed girth
//!   certificate;
//! - [`spanner`]: greedy t-spanners and stretch verification.
//!
//! All weights are exact rationals, so the certificates carry no
//! floating-point tolerance.

pub mod construction;
pub mod cycles;
pub mod error;
pub mod girth;
pub mod girth_graphs;
pub mod graph;
pub mod io;
pub mod mst;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod paths;
pub mod spanner;
pub mod weight;

pub use cycles::{normalized_weight, Cycle};
pub use error::{Error, Result};
pub use girth::{unweighted_girth, weighted_girth, GirthCertificate, GirthValue};
pub use graph::{Edge, EdgeId, NodeId, WeightedGraph};
pub use mst::{lightness, mst_weight};
pub use paths::shortest_path_distance;
pub use weight::Weight;
