//! Drive the command-line front end in-process.

fn main() {
    let runs: [&[&str]; 4] = [
        &["card", "--kind", "aop", "--n", "4"],
        &["member", "--kind", "aor", "--n", "4", "--elt", "1->3,2->2,3->1"],
        &["congruences", "--kind", "aor", "--n", "4", "--list"],
        &["rank", "--kind", "aor", "--n", "6", "--verify-named-set"],
    ];
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    for args in runs {
        println!("$ altmon {}", args.join(" "));
        let code = altmon::cli::run(std::iter::once("altmon").chain(args.iter().copied()), &mut out, &mut err);
        println!("(exit {code})\n");
    }
}
