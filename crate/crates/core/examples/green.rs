//! Green's classes of AOP_6 and AOR_6, and the J-poset as DOT.

use altmon::engine::enumerate;
use altmon::green::green_classes;
use altmon::{ChainSize, MonoidKind};

fn main() -> altmon::Result<()> {
    for kind in [MonoidKind::AOPn, MonoidKind::AORn] {
        let m = enumerate(kind, ChainSize::new(6)?)?;
        let g = green_classes(&m);
        println!("{} ({} elements)", kind.name(6), m.len());
        print!("{}", g.stats_table(&m));
        println!("{}", g.j_poset_dot());
    }
    Ok(())
}
