//! Maximal subgroups and their normal subgroups.

use altmon::congruence::group_congruences;
use altmon::engine::enumerate;
use altmon::green::green_classes;
use altmon::{ChainSize, MonoidKind};

fn main() -> altmon::Result<()> {
    for (kind, n) in [(MonoidKind::AORn, 4), (MonoidKind::AORn, 6), (MonoidKind::AOPn, 7)] {
        let m = enumerate(kind, ChainSize::new(n)?)?;
        let g = green_classes(&m);
        println!("{}", kind.name(n));
        for (c, class) in g.j_classes().iter().enumerate() {
            let Some(e) = class.members.iter().copied().find(|&x| m.element(x).is_idempotent()) else {
                continue;
            };
            let h = g.group_of(&m, e)?;
            let ty = h.group.identify();
            let normals: Vec<usize> = group_congruences(&h).iter().map(|r| r.normal_order()).collect();
            println!("  {:<5} {ty:<14} normal subgroup orders {normals:?} (predicted count {:?})", g.j_classes()[c].label(), ty.expected_congruence_count());
        }
    }
    Ok(())
}
