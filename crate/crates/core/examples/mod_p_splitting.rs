//! Constituent dimensions of permutation representations modulo the
//! splitting primes, and the exponent k of the standard representations.

use vabgrowth::grouprep::catalog_rep;
use vabgrowth::repdecomp::{exponent_k, split_mod_p, splitting_primes};
use vabgrowth::Config;

fn main() -> vabgrowth::Result<()> {
    let config = Config::default();
    for n in 2..=5 {
        let perm = catalog_rep(&format!("perm_sym({n})"), config.element_bound)?;
        for p in splitting_primes(&perm, &config)? {
            let split = split_mod_p(&perm, p, &config)?;
            println!("perm_sym({n}) mod {p}: dimensions {:?}", split.dimension_multiset());
        }
        let std = catalog_rep(&format!("std_sym({n})"), config.element_bound)?;
        println!("k(std_sym({n})) = {}", exponent_k(&std, &config)?);
    }
    Ok(())
}
