//! Residual finiteness growth of finitely generated virtually abelian groups.
//!
//! A virtually abelian group is described here by an integral representation
//! `φ: H → GL(m, Z)` of a finite group, given by its generator matrices. The
//! growth is `log^k` where `k` is the largest dimension of an irreducible
//! complex constituent of `φ`. This crate computes `k` three ways and checks
//! them against each other:
//!
//! * splitting `φ` modulo a prime `p ≡ 1 (mod |H|)` ([`repdecomp::exponent_k`]),
//! * character inner products against a supplied character table
//!   ([`repdecomp::k_from_character_table`]),
//! * brute-force divisibility functions over enumerated sublattices
//!   ([`rfgrowth::rf_profile`]).
//!
//! It also builds the explicit objects behind the bounds: invariant
//! sublattices of index `p^d` omitting a given vector
//! ([`lattice::upper_bound_witness`]) and integer certificates for matrices
//! commuting with a rationally irreducible representation
//! ([`repdecomp::commutant_certificate`]).
//!
//! Everything is exact: integers are arbitrary precision, rationals are
//! reduced fractions and prime-field arithmetic is done on residues.

pub mod cli;
pub mod config;
pub mod error;
pub mod exactalg;
pub mod grouprep;
pub mod lattice;
pub mod repdecomp;
pub mod rfgrowth;

pub use config::Config;
pub use error::{Error, Result};
