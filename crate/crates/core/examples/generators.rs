//! Named generating sets of AOP, AOR and AO for a range of sizes.

use altmon::gens::{g1_identity_holds, named_generating_set, verify_generating};
use altmon::{ChainSize, MonoidKind};

fn main() -> altmon::Result<()> {
    for n in 4..=7 {
        let size = ChainSize::new(n)?;
        for kind in [MonoidKind::AOPn, MonoidKind::AORn, MonoidKind::AOn] {
            let specs = named_generating_set(kind, size)?;
            let r = verify_generating(kind, size, &specs)?;
            let names: Vec<String> = specs.iter().map(ToString::to_string).collect();
            println!("{:<6} {{{}}} -> {} of {}", kind.name(n), names.join(", "), r.closure_size, r.monoid_size);
        }
        println!("  g1 = h gn^(n-2) h: {}", g1_identity_holds(size)?);
    }
    Ok(())
}
