//! Symmetry-reduced semidefinite programming bounds for Lee codes.
//!
//! This crate generates solver-ready SDP relaxations of `A_q^L(n, d)`, the
//! maximum size of a code in `(Z_q)^n` with minimum Lee distance `d`, and of
//! the independence number of strong powers of circular graphs (minimum
//! Lee-infinity distance).  The relaxation is the third level of a
//! moment-style hierarchy: variables are indexed by codes of size at most
//! three, and the positive-semidefiniteness constraints are block
//! diagonalized under the full symmetry group of the Lee metric, the wreath
//! product `D_q^n ⋊ S_n` of dihedral groups with the coordinate-permutation
//! group.
//!
//! The pipeline is organized like the underlying mathematics:
//!
//! * [`words`] — words, codes, the two circular metrics, and brute-force
//!   oracles for exact optima at small parameters;
//! * [`symmetry`] — canonical forms of codes under `D_q^n ⋊ S_n`, column
//!   classes, and orbit enumeration;
//! * [`tableaux`] — partitions and semistandard Young tableaux indexing the
//!   representative sets;
//! * [`repsets`] — symbolic expansion of reduced block entries into orbit
//!   variables;
//! * [`sdp`] — assembly of the reduced programs and SDPA-format emission;
//! * [`verify`] — independent oracles that rebuild everything from explicit
//!   tensors and certify each reduction step.
//!
//! Every reduction is checked against a brute-force counterpart at small
//! scale; see [`verify::check_block_coefficients`] and
//! [`verify::reduction_soundness`].

pub mod clique;
mod layered;
pub mod repsets;
pub mod sdp;
pub mod symmetry;
pub mod tableaux;
pub mod verify;
pub mod words;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mismatched parameters: {0}")]
    Mismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search space of size {size} exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u128 },

    #[error("integer coefficient overflow during expansion")]
    Overflow,

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("could not parse solver output: {0}")]
    SolverOutput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
