//! Asymmetry oracles, the adapters built on top of them, and brute-force
//! reference answers.

mod brute;
mod external;
pub(crate) mod refine;
mod stack;

use thiserror::Error;

use crate::tournament::TournamentError;

pub use brute::{brute_aut, brute_is_asymmetric, brute_isomorphism, brute_nontrivial_automorphism};
pub use external::{serve, ExecOracle};
pub use stack::{aut_to_iso, AsymmetryOracle, BruteForceOracle, OracleCounts, OracleStack};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("asymmetry oracle expects an uncolored tournament")]
    ColoredInput,
    #[error("isomorphism witness failed verification; an input was not asymmetric")]
    WitnessCheckFailed,
    #[error("external oracle timed out after {0} ms")]
    Timeout(u64),
    #[error("external oracle I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("external oracle protocol: {0}")]
    Protocol(String),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}
