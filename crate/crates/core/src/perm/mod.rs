//! Permutations and permutation groups on `0..n`.

mod group;
mod intersect;
mod permutation;

use thiserror::Error;

pub use group::PermGroup;
pub use intersect::intersect_with_aut;
pub use permutation::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("image list is not a bijection")]
    NotABijection,
    #[error("{0}")]
    Parse(String),
}
