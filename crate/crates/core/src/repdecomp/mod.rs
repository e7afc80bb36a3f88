//! Decompositions of integral representations and the exponent `k`.

mod certificate;
mod character;
mod modp;
mod module;
mod qsplit;

pub use certificate::{
    commutant_basis, commutant_certificate, conjugate_rep, is_abelian_image, is_perfect_square, sample_commutant,
    Certificate, CertificateContext, CommutantBasis,
};
pub use character::{inner_product, k_from_character_table, CharacterDecomposition, CharacterTable};
pub use modp::{
    exponent_k, exponent_k_report, split_mod_p, splitting_primes, Constituent, Constituents, ExponentReport, FieldTag,
};
pub use qsplit::{q_split, QConstituent, QSplit};
