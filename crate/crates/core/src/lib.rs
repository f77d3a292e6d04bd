//! Exact-arithmetic toolkit for deciding rainbow regularity of rational
//! matrices and exploring the combinatorics around it.
//!
//! A rational matrix `A` is *rainbow partition k-regular* if for every `n`,
//! every equinumerous k-coloring of `[kn]` admits a vector in `ker(A)` whose
//! entries receive pairwise distinct colors. The crate decides the "for all
//! sufficiently large k" version of this property through two equivalent
//! finite tests (a two-column-deletion rank test and a pairwise kernel-minor
//! test), produces machine-checkable certificates either way, and computes
//! the robustness constant `C = sqrt(nu / C(d,2))` from the Ehrhart
//! quasi-polynomial of the kernel polytope `[0,1]^d ∩ ker(A)`.
//!
//! Everything is computed over exact rationals (`num-rational` backed by
//! `num-bigint`); there is no floating point in any decision path.
//!
//! Module map:
//! - [`linalg`]: rationals, matrices, RREF, rank, kernel bases, solving.
//! - [`regularity`]: the regularity verdict, certificates, robust constant.
//! - [`coloring`]: colorings of `[N]`, multiplicative partitions, greedy
//!   anti-rainbow colorings, equinumerous enumeration, bounded sampling.
//! - [`lattice`]: kernel lattice points in boxes, kernel polytope vertices,
//!   dilation counts, Ehrhart quasi-polynomials, reciprocity.
//! - [`search`]: rainbow searches over colored boxes and the robust
//!   coloring experiment.
//! - [`rainbow_number`]: desk-scale rainbow number estimation and the
//!   Fibonacci matrix family.
//! - [`graph`]: oriented multigraphs, incidence matrices, edge connectivity
//!   and nowhere-zero flow search.
//! - [`acceptance`]: the self-test suite run by `rainbow selftest`.

pub mod acceptance;
pub mod coloring;
pub mod graph;
pub mod lattice;
pub mod linalg;
pub mod rainbow_number;
pub mod regularity;
pub mod search;

mod simplex;

pub use linalg::{Int, IntVector, KernelBasis, Rational, RationalMatrix};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A text input failed to parse; positions are 1-based.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    /// A precondition on an operation's arguments was violated.
    #[error("invalid argument: {0}")]
    Invalid(String),
    /// The operation requires a rainbow regular matrix.
    #[error("matrix is not rainbow regular: {0}")]
    NotRainbowRegular(String),
    /// Requested experiment parameters admit no valid coloring.
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    /// An internal cross-check failed; this signals a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
