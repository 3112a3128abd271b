//! Combinatorics of weighted KLRW algebras of types A₂ₑ⁽²⁾ and Dₑ₊₁⁽²⁾.
//!
//! The crate builds the data of the homogeneous (affine) sandwich cellular
//! basis of these algebras and turns it into executable counting:
//!
//! - [`cartan`]: quiver families, symmetrizers, Cartan matrices, Q-polynomials
//!   and the local degree table.
//! - [`coords`]: exact infinitesimal coordinates, residues, contents and
//!   the affine charge.
//! - [`partitions`]: (shifted) multipartitions, reading order, enumeration,
//!   dominance.
//! - [`diagrams`]: straight-line diagrams, (dotted) idempotents, closeness,
//!   degrees, left justification and the Young classifier.
//! - [`tableaux`]: semistandard and standard tableaux with their permutation
//!   diagrams and degrees.
//! - [`cellbasis`]: sandwich slots, basis enumeration and graded dimensions.
//! - [`relations`]: the defining and derived relation catalog with a
//!   homogeneity verifier.
//! - [`cli`]: the command-line front end.

pub mod cartan;
pub mod cellbasis;
pub mod cli;
pub mod coords;
pub mod diagrams;
pub mod laurent;
pub mod partitions;
pub mod relations;
pub mod tableaux;

pub use cartan::{CartanData, Family, QuiverType};
pub use coords::{Context, InfCoord};
pub use laurent::Laurent;
pub use partitions::MultiPartition;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid multipartition: {0}")]
    InvalidPartition(String),
    #[error("node ({0},{1},{2}) is not in the multipartition")]
    NodeNotFound(usize, usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
