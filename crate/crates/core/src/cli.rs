//! Command-line front end. [`run`] is what the `altmon` binary calls; it
//! takes the argument list and output streams so it can be tested in-process.
//!
//! Exit codes: 0 when every checked property holds, 1 when one fails, 2 for
//! usage errors, 3 when a size cap is hit.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::acceptance::{run_criterion, Options};
use crate::classify::{member_fast, member_oracle, MonoidKind};
use crate::congruence::{
    congruence_lattice_oracle_with_cap, enumerate_congruences_constructive, lattice_dot,
    Congruence, CongruenceSpec, ORACLE_CAP,
};
use crate::engine::{cardinality_formula, closure, enumerate_with_cap, MonoidSet, ENUMERATION_CAP};
use crate::error::Error;
use crate::gens::{
    exhaustive_rank_check_of, named_generating_set, rank_lower_bound_of, realize_all,
    verify_generating, GenSpec,
};
use crate::green::green_classes;
use crate::pperm::{ChainSize, PartialPerm, MAX_POINTS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "altmon", version, about = "Alternating orientation-preserving partial permutation monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// in, ai, poi, ao, popi, pori, aop or aor
    #[arg(long)]
    kind: MonoidKind,
    #[arg(long)]
    n: usize,
    /// lift the size caps on enumeration and the congruence oracle
    #[arg(long)]
    unsafe_cap: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cardinality by formula and by enumeration
    Card {
        #[command(flatten)]
        target: Target,
        /// also count the closure of the named generating set
        #[arg(long)]
        closure: bool,
        #[arg(long)]
        json: bool,
    },
    /// Stream the elements as JSON lines
    Enum {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership of one element, fast path against the oracle
    Member {
        #[arg(long)]
        kind: MonoidKind,
        #[arg(long)]
        n: usize,
        /// e.g. "1->3,2->2,3->1"
        #[arg(long)]
        elt: String,
        #[arg(long)]
        json: bool,
    },
    /// Green's classes and the J-class poset
    Green {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Congruence lattice, constructive description against brute force
    Congruences {
        #[command(flatten)]
        target: Target,
        #[arg(long, group = "mode")]
        count: bool,
        #[arg(long, group = "mode")]
        list: bool,
        #[arg(long, group = "mode", value_name = "FILE")]
        lattice_dot: Option<PathBuf>,
    },
    /// Generating sets and rank bounds
    Rank {
        #[command(flatten)]
        target: Target,
        /// check the named minimum generating set
        #[arg(long, group = "rmode")]
        verify_named_set: bool,
        /// show that no subset of this size generates
        #[arg(long, group = "rmode", value_name = "R")]
        exhaustive: Option<usize>,
        /// generators to test instead, e.g. "g,gn2"
        #[arg(long, group = "rmode", value_delimiter = ',')]
        gens: Option<Vec<String>>,
    },
    /// Run the acceptance criteria
    Selftest {
        #[arg(long, default_value_t = Options::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = Options::default().random_samples)]
        samples: usize,
        /// run only these criteria, e.g. "1,3"
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<usize>>,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => EXIT_RESOURCE,
            Error::ChainSize(_)
            | Error::Parse { .. }
            | Error::Parameter(_)
            | Error::InvalidElement(_)
            | Error::Unsupported(_)
            | Error::UndefinedGenerator { .. }
            | Error::Rank { .. }
            | Error::SizeMismatch { .. } => EXIT_USAGE,
            _ => EXIT_FAILED,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_FAILED,
            msg: format!("i/o error: {e}"),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Card {
            target,
            closure,
            json,
        } => card(&target, closure, json, out),
        Command::Enum { target, out: file } => {
            let m = load(&target)?;
            match file {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(&path)?);
                    m.write_jsonl(&mut w)?;
                    w.flush()?;
                    writeln!(out, "wrote {} elements to {}", m.len(), path.display())?;
                }
                None => m.write_jsonl(out)?,
            }
            Ok(EXIT_OK)
        }
        Command::Member { kind, n, elt, json } => member(kind, n, &elt, json, out),
        Command::Green { target, dot, json } => {
            let m = load(&target)?;
            let g = green_classes(&m);
            if json {
                writeln!(out, "{}", g.summary_json(&m))?;
            } else {
                write!(out, "{}", g.stats_table(&m))?;
            }
            if let Some(path) = dot {
                std::fs::write(&path, g.j_poset_dot())?;
                writeln!(
                    out,
                    "wrote {} nodes, {} edges to {}",
                    g.j_classes().len(),
                    g.hasse_edges().len(),
                    path.display()
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Congruences {
            target,
            list,
            lattice_dot,
            ..
        } => congruences(&target, list, lattice_dot, out),
        Command::Rank {
            target,
            verify_named_set,
            exhaustive,
            gens,
        } => rank(&target, verify_named_set, exhaustive, gens, out),
        Command::Selftest {
            seed,
            samples,
            only,
        } => {
            let opts = Options {
                seed,
                random_samples: samples,
            };
            let ids = only.unwrap_or_else(|| (1..=8).collect());
            let mut ok = true;
            for id in ids {
                let r = run_criterion(id, opts);
                writeln!(out, "{}", r.line())?;
                ok &= r.passed();
            }
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn chain(n: usize) -> std::result::Result<ChainSize, Failure> {
    Ok(ChainSize::new(n)?)
}

fn load(t: &Target) -> std::result::Result<MonoidSet, Failure> {
    let cap = if t.unsafe_cap { MAX_POINTS } else { ENUMERATION_CAP };
    Ok(enumerate_with_cap(t.kind, chain(t.n)?, cap)?)
}

fn verdict(same: bool) -> &'static str {
    if same {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

fn card(t: &Target, with_closure: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let n = chain(t.n)?;
    let formula = match cardinality_formula(t.kind, n) {
        Ok(v) => Some(v),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let cap = if t.unsafe_cap { MAX_POINTS } else { ENUMERATION_CAP };
    let enumerated = match enumerate_with_cap(t.kind, n, cap) {
        Ok(m) => Some(m.len()),
        Err(Error::Resource(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let generated = if with_closure {
        let gens = realize_all(&named_generating_set(t.kind, n)?, n)?;
        Some(closure(n, &gens)?.len())
    } else {
        None
    };
    let mut counts: Vec<String> = Vec::new();
    if let Some(e) = enumerated {
        counts.push(e.to_string());
    }
    if let Some(g) = generated {
        counts.push(g.to_string());
    }
    let agree = match &formula {
        Some(f) => counts.iter().all(|c| *c == f.to_string()),
        None => counts.windows(2).all(|w| w[0] == w[1]),
    };
    let show = |v: Option<String>| v.unwrap_or_else(|| "n/a".into());
    if json {
        let v = serde_json::json!({
            "kind": t.kind,
            "n": t.n,
            "formula": formula.as_ref().map(|f| f.to_string()),
            "enumerated": enumerated,
            "generated": generated,
            "match": agree,
        });
        writeln!(out, "{v}")?;
    } else {
        let mut line = format!(
            "formula={} enumerated={}",
            show(formula.as_ref().map(|f| f.to_string())),
            show(enumerated.map(|e| e.to_string()))
        );
        if let Some(g) = generated {
            line.push_str(&format!(" generated={g}"));
        }
        if counts.len() + usize::from(formula.is_some()) >= 2 {
            line.push(' ');
            line.push_str(verdict(agree));
        }
        writeln!(out, "{line}")?;
    }
    Ok(if agree { EXIT_OK } else { EXIT_FAILED })
}

fn member(kind: MonoidKind, n: usize, elt: &str, json: bool, out: &mut dyn Write) -> Outcome {
    let a = PartialPerm::parse(chain(n)?, elt)?;
    let oracle = member_oracle(&a, kind);
    let fast = match member_fast(&a, kind) {
        Ok(f) => Some(f),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let agree = fast.is_none_or(|f| f == oracle);
    let word = if agree { "AGREEMENT" } else { "DISAGREEMENT" };
    if json {
        let v = serde_json::json!({
            "element": a.to_string(),
            "kind": kind,
            "fast": fast,
            "oracle": oracle,
            "agree": agree,
        });
        writeln!(out, "{v}")?;
    } else {
        let f = fast.map_or_else(|| "n/a".to_string(), |f| f.to_string());
        writeln!(out, "fast={f} oracle={oracle} {word}")?;
    }
    Ok(if agree { EXIT_OK } else { EXIT_FAILED })
}

fn congruences(
    t: &Target,
    list: bool,
    dot: Option<PathBuf>,
    out: &mut dyn Write,
) -> Outcome {
    let m = load(t)?;
    let cap = if t.unsafe_cap { usize::MAX } else { ORACLE_CAP };
    let oracle = congruence_lattice_oracle_with_cap(&m, cap)?;
    let described = matches!(t.kind, MonoidKind::AOPn | MonoidKind::AORn);
    let mut named: Vec<(Option<CongruenceSpec>, Congruence)> =
        oracle.iter().map(|c| (None, c.clone())).collect();
    let mut agree = true;
    if described {
        let g = green_classes(&m);
        let built = enumerate_congruences_constructive(&m, &g)?;
        let built_len = built.len();
        agree = built_len == oracle.len() && built.iter().zip(&oracle).all(|(b, o)| &b.1 == o);
        if agree {
            named = built.into_iter().map(|(s, c)| (Some(s), c)).collect();
        }
        writeln!(
            out,
            "congruences={} constructive={built_len} {}",
            oracle.len(),
            verdict(agree)
        )?;
    } else {
        writeln!(out, "congruences={}", oracle.len())?;
    }
    if list {
        for (spec, c) in &named {
            let name = spec.as_ref().map_or_else(|| "anon".to_string(), |s| s.to_string());
            writeln!(out, "{name}\tblocks={}", c.block_count())?;
        }
    }
    if let Some(path) = dot {
        std::fs::write(&path, lattice_dot(&named))?;
        writeln!(out, "wrote lattice to {}", path.display())?;
    }
    Ok(if agree { EXIT_OK } else { EXIT_FAILED })
}

fn rank(
    t: &Target,
    verify: bool,
    exhaustive: Option<usize>,
    gens: Option<Vec<String>>,
    out: &mut dyn Write,
) -> Outcome {
    let n = chain(t.n)?;
    if verify || gens.is_some() {
        let specs: Vec<GenSpec> = match gens {
            Some(names) => names
                .iter()
                .map(|s| s.trim().parse())
                .collect::<crate::error::Result<_>>()?,
            None => named_generating_set(t.kind, n)?,
        };
        let r = verify_generating(t.kind, n, &specs)?;
        let names: Vec<String> = specs.iter().map(|s| s.to_string()).collect();
        writeln!(
            out,
            "{{{}}} generates={} closure={} size={}",
            names.join(","),
            r.generates,
            r.closure_size,
            r.monoid_size
        )?;
        return Ok(if r.generates || !verify { EXIT_OK } else { EXIT_FAILED });
    }
    let m = load(t)?;
    if let Some(r) = exhaustive {
        let c = exhaustive_rank_check_of(&m, r)?;
        let strategy = serde_json::to_value(c.strategy).map_err(|e| Failure {
            code: EXIT_FAILED,
            msg: e.to_string(),
        })?;
        writeln!(
            out,
            "no {r}-subset generates: {} ({} subsets, {})",
            c.holds(),
            c.subsets,
            strategy.as_str().unwrap_or("")
        )?;
        if let Some(w) = &c.witness {
            let shown: Vec<String> = w.iter().map(|&x| m.element(x).to_string()).collect();
            writeln!(out, "generating subset: {}", shown.join(" ; "))?;
        }
        return Ok(if c.holds() { EXIT_OK } else { EXIT_FAILED });
    }
    let b = rank_lower_bound_of(&m)?;
    write!(
        out,
        "rank >= {} (unit generators {}, maximal classes {}",
        b.bound, b.unit_generators, b.maximal_classes
    )?;
    if let Some(s) = &b.anchored_sweep {
        write!(out, ", anchored pairs {} none generating: {}", s.subsets, s.holds())?;
    }
    writeln!(out, ")")?;
    Ok(EXIT_OK)
}
