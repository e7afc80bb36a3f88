//! An invariant sublattice of index p^d, d ≤ k, omitting a given vector.

use num_bigint::BigInt;
use vabgrowth::grouprep::catalog_rep;
use vabgrowth::lattice::{divisibility, upper_bound_witness, FamilySpec};
use vabgrowth::Config;

fn main() -> vabgrowth::Result<()> {
    let config = Config::default();
    let rep = catalog_rep("d4_paper", config.element_bound)?;
    for v in [[1i64, 0, 0], [6, 6, 0], [17, 0, 0], [2, -4, 8]] {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let w = upper_bound_witness(&rep, &big, &config)?;
        let d = divisibility(&v, &FamilySpec::Invariant(rep.clone()), &config)?;
        println!("v = {v:?}: D(v) = {d}");
        println!("{w}\n");
    }
    Ok(())
}
