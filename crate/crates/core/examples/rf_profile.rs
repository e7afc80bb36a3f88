//! Residual finiteness profiles for Z, Z^2 and the invariant family of the
//! dihedral representation, with the fitted log-power exponent.

use vabgrowth::grouprep::catalog_rep;
use vabgrowth::lattice::FamilySpec;
use vabgrowth::rfgrowth::{exponent_fit, rf_profile};

fn main() -> vabgrowth::Result<()> {
    let z = rf_profile(&FamilySpec::AllFiniteIndex, 1, 12, 1_000)?;
    print!("{z}");

    let z2 = rf_profile(&FamilySpec::AllFiniteIndex, 2, 6, 1_000)?;
    print!("{z2}");

    let rep = catalog_rep("d4_paper", 100)?;
    let d4 = rf_profile(&FamilySpec::Invariant(rep), 3, 120, 10_000)?;
    println!("d4 RF(120) = {:?}", d4.rf(120));
    match exponent_fit(&d4) {
        Ok(fit) => println!("{fit}"),
        Err(e) => println!("no fit: {e}"),
    }
    Ok(())
}
