//! Divisibility functions, residual finiteness profiles and the arithmetic
//! behind the `log^k` bounds.

mod lowerbound;
pub mod primes;
mod profile;

pub use crate::lattice::{divisibility, scalar_upper_bound, FamilyCache};
pub use lowerbound::{lower_bound_certificate, LowerBoundReport, LowerBoundStep};
pub use primes::{chebyshev_psi, fit_prime_bound, lcm_upto, smallest_valid_prime, PrimeBoundFit};
pub use profile::{exponent_fit, rf_profile, sphere, ExponentFit, RFEntry, RFProfile, FIT_MIN_RADIUS};
