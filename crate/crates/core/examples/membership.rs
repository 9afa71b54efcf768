//! Classify a few partial permutations and test membership in AOP and AOR.

use altmon::classify::{member_fast, member_oracle, orient_flags};
use altmon::{ChainSize, MonoidKind, PartialPerm};

fn main() -> altmon::Result<()> {
    let n = ChainSize::new(5)?;
    for text in ["1->2,2->3,3->4,4->5,5->1", "1->4,2->5,3->1", "1->3,2->2,3->1", "2->1,3->5,4->4"] {
        let a = PartialPerm::parse(n, text)?;
        let flags = orient_flags(&a);
        println!("{a}  rank {}  flags {flags:?}", a.rank());
        for kind in [MonoidKind::AOPn, MonoidKind::AORn] {
            let fast = member_fast(&a, kind)?;
            assert_eq!(fast, member_oracle(&a, kind));
            println!("  in {}: {fast}", kind.name(5));
        }
    }
    Ok(())
}
