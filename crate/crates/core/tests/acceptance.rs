//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use altmon::acceptance::{run_criterion, Options};

fn main() {
    // honor `cargo test -- --list` and name filters the way libtest would
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        for id in 1..=8 {
            println!("criterion_{id}: test");
        }
        return;
    }
    let filters: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    let opts = Options::default();
    let mut failed = 0;
    let mut ran = 0;
    for id in 1..=8 {
        let name = format!("criterion_{id}");
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let report = run_criterion(id, opts);
        println!("{}", report.line());
        ran += 1;
        if !report.passed() {
            failed += 1;
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
