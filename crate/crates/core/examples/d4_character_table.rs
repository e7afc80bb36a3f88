//! Exponent of the dihedral group of order 8 acting on Z^3, by splitting
//! modulo primes and by decomposing its character against the table.

use vabgrowth::grouprep::{catalog_entry, character_of_rep};
use vabgrowth::repdecomp::{exponent_k_report, k_from_character_table};
use vabgrowth::Config;

fn main() -> vabgrowth::Result<()> {
    let config = Config::default();
    let entry = catalog_entry("d4_paper", config.element_bound)?;
    let rep = &entry.rep;
    println!("{} of degree {}, |H| = {}", rep.name(), rep.degree(), rep.order());

    let chi = character_of_rep(rep)?;
    for (class, value) in rep.classes().classes().iter().zip(chi.values()) {
        println!("  class of size {}: χ = {value}", class.size());
    }

    let table = entry.table.as_ref().expect("d4_paper ships a character table");
    let d = k_from_character_table(rep, table)?;
    println!("χ in table order {:?}", d.chi);
    println!("multiplicities {:?}, k = {}", d.multiplicities, d.k);

    print!("{}", exponent_k_report(rep, &config)?);
    Ok(())
}
