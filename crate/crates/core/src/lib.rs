//! Tournament automorphism groups and isomorphism from an asymmetry oracle.
//!
//! The pipeline runs bottom-up: an [`oracles::AsymmetryOracle`] answers
//! uncolored asymmetry queries, [`suborbits::AutomorphismSampler`] turns
//! those answers into random automorphisms, [`sampling`] extracts a
//! characteristic set of vertex pairs from them, and [`autgroup`] recurses
//! on the resulting invariant suborbits to produce generators of `Aut(T)`.

pub mod autgroup;
pub mod generators;
pub mod oracles;
pub mod partition;
pub mod perm;
pub mod rng;
pub mod sampling;
pub mod suborbits;
pub mod tournament;

pub use partition::VertexPartition;
pub use perm::{PermGroup, Permutation};
pub use tournament::{IndividualizationTrace, Tournament, TournamentError};
