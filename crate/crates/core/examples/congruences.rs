//! The congruences of AOP_4 from the constructive description, checked
//! against the brute-force lattice.

use altmon::congruence::{congruence_lattice_oracle, enumerate_congruences_constructive, lattice_dot};
use altmon::engine::enumerate;
use altmon::green::green_classes;
use altmon::{ChainSize, MonoidKind};

fn main() -> altmon::Result<()> {
    let m = enumerate(MonoidKind::AOPn, ChainSize::new(4)?)?;
    let g = green_classes(&m);
    let built = enumerate_congruences_constructive(&m, &g)?;
    let oracle = congruence_lattice_oracle(&m)?;
    assert!(built.iter().map(|(_, c)| c).eq(oracle.iter()));
    for (spec, c) in &built {
        println!("{:<40} {} blocks", spec.to_string(), c.block_count());
    }
    let named: Vec<_> = built.into_iter().map(|(s, c)| (Some(s), c)).collect();
    println!("{}", lattice_dot(&named));
    Ok(())
}
