//! Tilde maps of every non-zero J-class of AOR_5 and their laws.

use altmon::congruence::tilde_map;
use altmon::engine::enumerate;
use altmon::green::green_classes;
use altmon::{ChainSize, MonoidKind};

fn main() -> altmon::Result<()> {
    let m = enumerate(MonoidKind::AORn, ChainSize::new(5)?)?;
    let g = green_classes(&m);
    for (c, class) in g.j_classes().iter().enumerate().skip(1) {
        let t = tilde_map(&m, &g, c)?;
        let rep = t.check_laws(&m, &g);
        println!(
            "{:<5} anchor {:<22} group {:<3} products {:>7}  {}",
            class.label(),
            m.element(t.anchor_idempotent).to_string(),
            t.anchor.members.len(),
            rep.product_pairs,
            if rep.passed() { "ok" } else { "FAILED" }
        );
    }
    Ok(())
}
