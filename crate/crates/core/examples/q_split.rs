//! Decomposition over Q into rationally irreducible blocks K_i, each with
//! its own action and commutant dimension.

use vabgrowth::grouprep::catalog_rep;
use vabgrowth::repdecomp::q_split;
use vabgrowth::Config;

fn main() -> vabgrowth::Result<()> {
    let config = Config::default();
    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "product(std_sym(3),rot(4))".to_string());
    let rep = catalog_rep(&name, config.element_bound)?;
    let split = q_split(&rep, &config)?;
    println!("{name}: degrees {:?}", split.degrees());
    print!("{split}");
    Ok(())
}
