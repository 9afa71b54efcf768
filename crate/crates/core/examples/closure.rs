//! Generate a monoid from partial permutations and dump it as JSON lines.

use altmon::engine::closure;
use altmon::gens::{realize, GenSpec};
use altmon::ChainSize;

fn main() -> altmon::Result<()> {
    let n = ChainSize::new(4)?;
    let gens = [realize(GenSpec::G2, n)?, realize(GenSpec::G1, n)?, realize(GenSpec::Gn, n)?];
    let m = closure(n, &gens)?;
    println!("closure of g^2, g1, gn has {} elements", m.len());
    for k in 0..=4 {
        println!("  rank {k}: {}", m.ids_of_rank(k).len());
    }
    let mut out = Vec::new();
    m.write_jsonl(&mut out).expect("in-memory write");
    let text = String::from_utf8(out).expect("utf-8");
    for line in text.lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
