//! Exact engine for ice-quiver mutation and the combinatorics of ordered
//! exchange graphs: framed quivers, green/red colouring, exchange-graph
//! enumeration, maximal green sequences, cluster seeds with principal
//! coefficients, c-/g-matrices and Ginzburg quivers of quivers with potential.

pub mod cluster;
pub mod exchange;
pub mod formats;
pub mod laurent;
pub mod matrix;
pub mod potential;
pub mod quiver;
pub mod tropical;

pub use cluster::{ClusterError, GVector, Seed};
pub use exchange::{GreenSequenceReport, OrientedExchangeGraph};
pub use laurent::{LaurentPoly, LaurentRing};
pub use matrix::IntMatrix;
pub use quiver::{CanonicalKey, ExtMatrix, Permutation, QuiverError, VertexColor};
pub use tropical::{CMatrix, GMatrix};

