//! Closed-form sizes against direct enumeration.

use altmon::engine::{cardinality_formula, enumerate};
use altmon::{ChainSize, MonoidKind};

fn main() -> altmon::Result<()> {
    println!("{:>3} {:>10} {:>10}", "n", "AOP", "AOR");
    for n in 3..=8 {
        let size = ChainSize::new(n)?;
        let aop = enumerate(MonoidKind::AOPn, size)?.len();
        let aor = enumerate(MonoidKind::AORn, size)?.len();
        assert_eq!(cardinality_formula(MonoidKind::AOPn, size)?, aop.into());
        assert_eq!(cardinality_formula(MonoidKind::AORn, size)?, aor.into());
        println!("{n:>3} {aop:>10} {aor:>10}");
    }
    // formulas keep going where enumeration stops
    let big = ChainSize::new(20)?;
    println!(" 20 {:>10} {:>10}", cardinality_formula(MonoidKind::AOPn, big)?, cardinality_formula(MonoidKind::AORn, big)?);
    Ok(())
}
