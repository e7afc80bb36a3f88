//! Lower-bound checks at v_s = lcm(1..s)·e_1 for the quaternion group.

use vabgrowth::grouprep::catalog_rep;
use vabgrowth::rfgrowth::lower_bound_certificate;
use vabgrowth::Config;

fn main() -> vabgrowth::Result<()> {
    let config = Config::default();
    let rep = catalog_rep("quaternion_paper", config.element_bound)?;
    let report = lower_bound_certificate(&rep, 6, 50, 2, &config)?;
    println!("{report}");
    Ok(())
}
