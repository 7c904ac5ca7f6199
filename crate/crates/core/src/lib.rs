//! Exactly uniform generation of simple graphs and simple bipartite graphs
//! with a prescribed degree sequence.
//!
//! A uniformly random pairing is projected to a multigraph; pairings with
//! too many loops or double edges are rejected outright, and the remaining
//! loops and double edges are removed by switchings whose rejection
//! probabilities are computed by incremental relaxation, so that the output
//! is uniform over all simple graphs with the requested degrees.

pub mod bipartite;
pub mod degree;
pub mod driver;
pub mod error;
pub mod format;
pub mod multigraph;
pub mod pairing;
pub mod relaxation;
pub mod switching;
pub mod verification;

pub use bipartite::{inc_bipartite, BipartiteGenerator, SimpleBipartiteGraph};
pub use degree::{BipartiteDegreeSequence, DegreeSequence};
pub use driver::{inc_gen, GenerationStats, Generator, SimpleGraph, DEFAULT_MAX_RESTARTS};
pub use error::{Error, Result};
pub use multigraph::{Multigraph, MultiplicityProfile, Vertex};
pub use pairing::{
    generate_bipartite_pairing, generate_pairing, phi0_thresholds, Pairing, Phi0Thresholds,
};
pub use switching::{phase_bounds, Anchor, LowerBounds, PhaseBounds, SwitchingKind};
