//! Exact arithmetic substrate: integer and field matrices, integer and
//! prime-field polynomials, factorization, and Hermite/Smith normal forms.

pub mod field;
pub mod fppoly;
pub mod hnf;
pub mod intmatrix;
pub mod poly;
pub mod zfactor;

pub use field::{Field, FieldMatrix, FpMatrix, PrimeField, RatMatrix, Rationals};
pub use fppoly::{factor_over_prime_field, FpFactorization, FpPoly};
pub use hnf::{hnf, hnf_with_transform, lattice_from_generators, saturate, snf, zspan_basis, Lattice};
pub use intmatrix::IntMatrix;
pub use poly::IntPoly;
pub use zfactor::{factor_over_integers, IntFactorization};
