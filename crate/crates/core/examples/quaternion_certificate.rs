//! Integer certificate for a matrix commuting with the quaternion group:
//! its characteristic polynomial is a k-th power, det B = x^k, and x·Z^m
//! lies in its image.

use vabgrowth::grouprep::catalog_entry;
use vabgrowth::lattice::lattice_from_matrix;
use vabgrowth::repdecomp::{commutant_basis, sample_commutant, CertificateContext, FieldTag};
use vabgrowth::Config;

fn main() -> vabgrowth::Result<()> {
    let config = Config::default();
    let entry = catalog_entry("quaternion_paper", config.element_bound)?;
    let ctx = CertificateContext::new(&entry.rep, &config)?;
    let b = &entry.commutant_examples[0];
    println!("B =\n{b}");
    let cert = ctx.certify(b)?;
    println!("{cert}");
    println!("Im B has index {}", lattice_from_matrix(b)?.index());

    // a few random elements of the commutant, certified the same way
    let basis = commutant_basis(&entry.rep, FieldTag::Rationals)?;
    let mut rng = config.rng();
    for b in sample_commutant(&basis, 3, 5, &mut rng) {
        let c = ctx.certify(&b)?;
        println!("f = {}, x = {}, det = {}", c.f, c.x, c.det);
    }
    Ok(())
}
