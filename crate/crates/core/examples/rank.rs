//! Rank lower bounds and exhaustive subset sweeps.

use altmon::engine::enumerate;
use altmon::gens::{exhaustive_rank_check_of, rank_lower_bound_of};
use altmon::{ChainSize, MonoidKind};

fn main() -> altmon::Result<()> {
    for (kind, n) in [(MonoidKind::AOPn, 4), (MonoidKind::AOPn, 5), (MonoidKind::AORn, 6), (MonoidKind::AORn, 7)] {
        let m = enumerate(kind, ChainSize::new(n)?)?;
        let b = rank_lower_bound_of(&m)?;
        println!("{}: rank >= {} ({} unit generators + {} maximal classes)", kind.name(n), b.bound, b.unit_generators, b.maximal_classes);
        if let Some(s) = &b.anchored_sweep {
            let found = if s.holds() { "none generates" } else { "a generating pair exists" };
            println!("  {} pairs with a fixed unit generator: {found}", s.subsets);
        }
        let c = exhaustive_rank_check_of(&m, b.bound - 1)?;
        println!("  no {}-subset generates: {} ({} subsets, {:?})", c.r, c.holds(), c.subsets, c.strategy);
    }
    Ok(())
}
