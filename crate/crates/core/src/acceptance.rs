//! The end-to-end checks run by `altmon selftest` and the acceptance test
//! target. Each criterion returns a report instead of panicking so that a
//! failure in one does not hide the others.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::classify::{member_fast, member_oracle, MonoidKind};
use crate::congruence::{
    build_pi, build_theta, congruence_lattice_oracle, enumerate_congruences_constructive, eq_gn,
    group_congruences, lemma_d2n, lemma_pori, rees, tilde_map, Congruence,
};
use crate::engine::{
    cardinality_formula, closure, elements_of_rank, enumerate, ideals, product_set,
    random_partial_perm, MonoidSet,
};
use crate::error::Result;
use crate::gens::{
    exhaustive_rank_check, g1_identity_holds, hngn_square_check, named_generating_set,
    rank_lower_bound, realize, realize_all, GenSpec,
};
use crate::green::{green_classes, GreenStructure};
use crate::group::GroupType;
use crate::pperm::{ChainSize, PartialPerm};

/// Knobs for the randomized parts.
#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub random_samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0x5eed,
            random_samples: 100_000,
        }
    }
}

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One summary line.
    pub fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {}: {verdict} {} [{:.1}s]",
            self.id,
            self.title,
            self.elapsed.as_secs_f64()
        );
        if !self.notes.is_empty() {
            s.push_str(" -- ");
            s.push_str(&self.notes.join("; "));
        }
        for f in self.failures.iter().take(5) {
            s.push_str("\n    ");
            s.push_str(f);
        }
        s
    }
}

/// Titles of the eight criteria.
pub const TITLES: [&str; 8] = [
    "cardinalities",
    "membership fast path vs oracle",
    "Green's structure",
    "congruence lattices",
    "tilde-map laws",
    "product-set identities",
    "generating sets and ranks",
    "separation lemmas",
];

#[derive(Default)]
struct Log {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Log {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn absorb<T>(&mut self, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(e.to_string());
                None
            }
        }
    }
}

fn cs(n: usize) -> ChainSize {
    ChainSize::new(n).expect("chain size in range")
}

/// Runs criterion `id` (1 to 8).
pub fn run_criterion(id: usize, opts: Options) -> CriterionReport {
    let start = Instant::now();
    let mut log = Log::default();
    match id {
        1 => cardinalities(&mut log),
        2 => membership(&mut log, opts),
        3 => green_structure(&mut log),
        4 => congruences(&mut log),
        5 => tilde_laws(&mut log),
        6 => product_sets(&mut log),
        7 => ranks(&mut log),
        8 => lemmas(&mut log),
        _ => log.failures.push(format!("no criterion {id}")),
    }
    CriterionReport {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        failures: log.failures,
        notes: log.notes,
        elapsed: start.elapsed(),
    }
}

/// Runs all eight criteria in order.
pub fn run_all(opts: Options) -> Vec<CriterionReport> {
    (1..=8).map(|id| run_criterion(id, opts)).collect()
}

fn cardinalities(log: &mut Log) {
    let expected = [
        (MonoidKind::AOPn, 3, 22u64),
        (MonoidKind::AOPn, 4, 115),
        (MonoidKind::AOPn, 5, 581),
        (MonoidKind::AOPn, 6, 2680),
        (MonoidKind::AORn, 4, 141),
        (MonoidKind::AORn, 5, 936),
        (MonoidKind::AORn, 6, 4873),
    ];
    for (kind, n, want) in expected {
        let name = kind.name(n);
        let Some(formula) = log.absorb(cardinality_formula(kind, cs(n))) else {
            continue;
        };
        let Some(m) = log.absorb(enumerate(kind, cs(n))) else {
            continue;
        };
        let generated = named_generating_set(kind, cs(n))
            .and_then(|s| realize_all(&s, cs(n)))
            .and_then(|gens| closure(cs(n), &gens));
        let Some(c) = log.absorb(generated) else {
            continue;
        };
        let agree = formula == want.into() && m.len() as u64 == want && c.len() as u64 == want;
        log.check(agree, || {
            format!(
                "{name}: formula {formula}, enumerated {}, generated {}, expected {want}",
                m.len(),
                c.len()
            )
        });
    }
    log.notes.push("7 sizes by formula, enumeration and closure".into());
}

fn membership(log: &mut Log, opts: Options) {
    let kinds = [MonoidKind::AOPn, MonoidKind::AORn];
    let mut exhaustive = 0usize;
    for n in 4..=8 {
        for k in [n - 1, n] {
            for a in elements_of_rank(MonoidKind::PORIn, cs(n), k) {
                for kind in kinds {
                    exhaustive += 1;
                    match member_fast(&a, kind) {
                        Ok(f) => log.check(f == member_oracle(&a, kind), || {
                            format!("{a} in {}: fast {f}", kind.name(n))
                        }),
                        Err(e) => log.failures.push(format!("{a}: {e}")),
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_samples {
        let n = rng.random_range(4..=8);
        let rank = rng.random_range(0..=n - 2);
        let a = random_partial_perm(cs(n), rank, &mut rng);
        for kind in kinds {
            match member_fast(&a, kind) {
                Ok(f) => log.check(f == member_oracle(&a, kind), || {
                    format!("{a} in {}: fast {f}", kind.name(n))
                }),
                Err(e) => log.failures.push(format!("{a}: {e}")),
            }
        }
    }
    log.notes.push(format!(
        "{exhaustive} exhaustive and {} random comparisons",
        2 * opts.random_samples
    ));
}

fn split_top(kind: MonoidKind, n: usize) -> bool {
    crate::congruence::has_split_top(kind, n)
}

// expected (class count, L count, H size, group) at rank n − 1
fn top_level_table(kind: MonoidKind, n: usize) -> (usize, usize, usize, GroupType) {
    match kind {
        MonoidKind::AOPn if n % 2 == 1 => (1, n, (n - 1) / 2, GroupType::Cyclic((n - 1) / 2)),
        MonoidKind::AOPn => (2, n / 2, n - 1, GroupType::Cyclic(n - 1)),
        _ => match n % 4 {
            0 => (1, n, n - 1, GroupType::Cyclic(n - 1)),
            2 => (2, n / 2, 2 * n - 2, GroupType::Dihedral(2 * n - 2)),
            _ => (1, n, n - 1, GroupType::Dihedral(n - 1)),
        },
    }
}

fn unit_group_type(kind: MonoidKind, n: usize) -> GroupType {
    match kind {
        MonoidKind::AOPn if n % 2 == 1 => GroupType::Cyclic(n),
        MonoidKind::AOPn => GroupType::Cyclic(n / 2),
        _ => match n % 4 {
            0 | 2 => GroupType::Dihedral(n),
            1 => GroupType::Dihedral(2 * n),
            _ => GroupType::Cyclic(n),
        },
    }
}

// A dihedral group of order 4 is the Klein group.
fn same_group(found: GroupType, want: GroupType) -> bool {
    found == want || (found == GroupType::Klein && want == GroupType::Dihedral(4))
}

fn green_structure(log: &mut Log) {
    let mut checked = 0;
    for kind in [MonoidKind::AOPn, MonoidKind::AORn] {
        for n in 4..=7 {
            let name = kind.name(n);
            let Some(m) = log.absorb(enumerate(kind, cs(n))) else {
                continue;
            };
            let g = green_classes(&m);
            checked += 1;
            check_poset_shape(log, &g, kind, n);
            // every rank below n − 1 is a single class
            for k in 0..n - 1 {
                log.check(g.classes_of_rank(k).len() == 1, || {
                    format!("{name}: rank {k} is not one J-class")
                });
            }
            let (classes, lr, h, group) = top_level_table(kind, n);
            let top = g.classes_of_rank(n - 1);
            log.check(top.len() == classes, || {
                format!("{name}: {} classes of rank {}", top.len(), n - 1)
            });
            let level = m.ids_of_rank(n - 1).len();
            for &c in &top {
                let j = &g.j_classes()[c];
                log.check(j.n_l == lr && j.n_r == lr && j.h_size == h, || {
                    format!(
                        "{name} {}: L {} R {} H {}, expected {lr}/{lr}/{h}",
                        j.label(),
                        j.n_l,
                        j.n_r,
                        j.h_size
                    )
                });
                log.check(j.size * classes == level, || {
                    format!("{name} {}: size {} of level {level}", j.label(), j.size)
                });
                // J at rank n − 1 is decided by the parity of the domain gap
                let parities: FxHashSet<usize> = j
                    .members
                    .iter()
                    .map(|&x| m.element(x).gaps().map_or(2, |gap| gap.d % 2))
                    .collect();
                log.check(classes == 1 || parities.len() == 1, || {
                    format!("{name} {}: mixed gap parities", j.label())
                });
                match g.class_group_type(&m, c) {
                    Ok(t) => log.check(same_group(t, group), || {
                        format!("{name} {}: group {t}, expected {group}", j.label())
                    }),
                    Err(e) => log.failures.push(e.to_string()),
                }
            }
            let want = unit_group_type(kind, n);
            match g.class_group_type(&m, g.unit_class(&m)) {
                Ok(t) => log.check(same_group(t, want), || {
                    format!("{name}: unit group {t}, expected {want}")
                }),
                Err(e) => log.failures.push(e.to_string()),
            }
        }
    }
    log.notes.push(format!("{checked} monoids, n = 4..7"));
}

fn check_poset_shape(log: &mut Log, g: &GreenStructure, kind: MonoidKind, n: usize) {
    let mut want: Vec<(usize, usize)> = Vec::new();
    if split_top(kind, n) {
        // chain up to rank n − 2, then a diamond
        want.extend((0..n - 2).map(|k| (k, k + 1)));
        want.extend([(n - 2, n - 1), (n - 2, n), (n - 1, n + 1), (n, n + 1)]);
    } else {
        want.extend((0..n).map(|k| (k, k + 1)));
    }
    let mut got = g.hasse_edges().to_vec();
    got.sort_unstable();
    want.sort_unstable();
    log.check(got == want, || {
        format!("{}: Hasse edges {got:?}, expected {want:?}", kind.name(n))
    });
}

fn congruences(log: &mut Log) {
    let mut counts = Vec::new();
    let expected = [
        (MonoidKind::AOPn, 3, Some(5)),
        (MonoidKind::AOPn, 4, Some(14)),
        (MonoidKind::AOPn, 5, None),
        (MonoidKind::AORn, 4, Some(11)),
        (MonoidKind::AORn, 5, None),
    ];
    for (kind, n, want) in expected {
        let name = kind.name(n);
        let Some(m) = log.absorb(enumerate(kind, cs(n))) else {
            continue;
        };
        let g = green_classes(&m);
        let Some(built) = log.absorb(enumerate_congruences_constructive(&m, &g)) else {
            continue;
        };
        let Some(oracle) = log.absorb(congruence_lattice_oracle(&m)) else {
            continue;
        };
        let built: Vec<Congruence> = built.into_iter().map(|(_, c)| c).collect();
        log.check(built == oracle, || {
            format!(
                "{name}: constructive {} vs oracle {} congruences",
                built.len(),
                oracle.len()
            )
        });
        if let Some(w) = want {
            log.check(oracle.len() == w, || format!("{name}: {} congruences, expected {w}", oracle.len()));
        }
        counts.push(format!("{name}={}", oracle.len()));
    }
    for n in 4..=5 {
        let Some(m) = log.absorb(enumerate(MonoidKind::AOn, cs(n))) else {
            continue;
        };
        let Some(oracle) = log.absorb(congruence_lattice_oracle(&m)) else {
            continue;
        };
        let Some(ids) = log.absorb(ideals(&m)) else {
            continue;
        };
        let mut from_ideals: Vec<Congruence> = ids.iter().filter_map(|i| rees(&m, i).ok()).collect();
        from_ideals.sort();
        log.check(oracle.len() == n + 3 && oracle == from_ideals, || {
            format!("AO_{n}: {} congruences, expected {} Rees", oracle.len(), n + 3)
        });
        counts.push(format!("AO_{n}={}", oracle.len()));
    }
    log.notes.push(counts.join(" "));
}

fn tilde_laws(log: &mut Log) {
    let mut classes = 0;
    let mut pairs = 0;
    let mut params = 0;
    for kind in [MonoidKind::AOPn, MonoidKind::AORn] {
        for n in 4..=7 {
            let name = kind.name(n);
            let Some(m) = log.absorb(enumerate(kind, cs(n))) else {
                continue;
            };
            let g = green_classes(&m);
            for c in 0..g.j_classes().len() {
                if g.j_classes()[c].rank == 0 {
                    continue;
                }
                let label = g.j_classes()[c].label();
                let Some(t) = log.absorb(tilde_map(&m, &g, c)) else {
                    continue;
                };
                let rep = t.check_laws(&m, &g);
                classes += 1;
                pairs += rep.product_pairs;
                for f in rep.failures.iter().take(3) {
                    log.failures.push(format!("{name} {label}: {f}"));
                }
                for rho in group_congruences(&t.anchor) {
                    params += 1;
                    let pi = build_pi(&m, &g, &t, &rho);
                    let theta = build_theta(&m, &g, &t, &rho);
                    match (pi, theta) {
                        (Ok(pi), Ok(theta)) => {
                            log.check(theta.refines(&pi), || {
                                format!("{name} {label} N{}: theta not inside pi", rho.normal_order())
                            });
                            log.check(pi.is_compatible(&m) && theta.is_compatible(&m), || {
                                format!("{name} {label} N{}: not a congruence", rho.normal_order())
                            });
                        }
                        (Err(e), _) | (_, Err(e)) => log.failures.push(e.to_string()),
                    }
                }
            }
        }
    }
    log.notes.push(format!(
        "{classes} classes, {pairs} in-class products, {params} (class, normal subgroup) pairs"
    ));
}

fn cyclic_powers(a: &PartialPerm) -> Vec<PartialPerm> {
    let mut out = vec![a.clone()];
    loop {
        let next = out.last().expect("non-empty") * a;
        if out.contains(&next) {
            return out;
        }
        out.push(next);
    }
}

fn as_set(v: Vec<PartialPerm>) -> FxHashSet<PartialPerm> {
    v.into_iter().collect()
}

fn class_set(m: &MonoidSet, g: &GreenStructure, label: &str) -> Option<FxHashSet<PartialPerm>> {
    let c = g.class_by_label(label)?;
    Some(g.j_classes()[c].members.iter().map(|&x| m.element(x).clone()).collect())
}

fn product_sets(log: &mut Log) {
    for n in [5, 7, 4, 6] {
        let name = MonoidKind::AOPn.name(n);
        let Some(m) = log.absorb(enumerate(MonoidKind::AOPn, cs(n))) else {
            continue;
        };
        let g = green_classes(&m);
        let units: Vec<PartialPerm> = m.ids_of_rank(n).iter().map(|&x| m.element(x).clone()).collect();
        let cases: Vec<(String, GenSpec)> = if n % 2 == 1 {
            vec![(format!("J{}", n - 1), GenSpec::Gn2)]
        } else {
            vec![
                (format!("J{}o", n - 1), GenSpec::G1),
                (format!("J{}e", n - 1), GenSpec::Gn),
            ]
        };
        for (label, spec) in cases {
            let Some(gen) = log.absorb(realize(spec, cs(n))) else {
                continue;
            };
            let powers = cyclic_powers(&gen);
            let product = as_set(product_set(&[&units, &powers, &units]));
            match class_set(&m, &g, &label) {
                Some(class) => log.check(product == class, || {
                    format!("{name}: units·<{spec}>·units has {} elements, {label} has {}", product.len(), class.len())
                }),
                None => log.failures.push(format!("{name}: no class {label}")),
            }
        }
    }
    log.notes.push("AOP_5, AOP_7 single top class; AOP_4, AOP_6 both halves".into());
}

fn ranks(log: &mut Log) {
    let sets = [
        (MonoidKind::AOPn, 5),
        (MonoidKind::AOPn, 7),
        (MonoidKind::AOPn, 4),
        (MonoidKind::AOPn, 6),
        (MonoidKind::AORn, 4),
        (MonoidKind::AORn, 8),
        (MonoidKind::AORn, 5),
        (MonoidKind::AORn, 6),
        (MonoidKind::AORn, 7),
        (MonoidKind::AOn, 4),
        (MonoidKind::AOn, 5),
    ];
    for (kind, n) in sets {
        let report = named_generating_set(kind, cs(n))
            .and_then(|s| crate::gens::verify_generating(kind, cs(n), &s));
        if let Some(r) = log.absorb(report) {
            log.check(r.generates, || {
                format!("{}: named set generates {} of {}", kind.name(n), r.closure_size, r.monoid_size)
            });
        }
    }
    for n in 3..=9 {
        log.check(g1_identity_holds(cs(n)).unwrap_or(false), || format!("g1 identity fails at n={n}"));
    }
    if let Some((checked, failures)) = log.absorb(hngn_square_check(cs(7))) {
        log.check(checked > 0 && failures.is_empty(), || {
            format!("hngn square identity: {failures:?}")
        });
    }
    let bounds = [
        (MonoidKind::AOPn, 5, 2),
        (MonoidKind::AOPn, 7, 2),
        (MonoidKind::AOPn, 4, 3),
        (MonoidKind::AOPn, 6, 3),
        (MonoidKind::AORn, 4, 3),
        (MonoidKind::AORn, 5, 3),
        (MonoidKind::AORn, 6, 4),
        (MonoidKind::AORn, 7, 3),
    ];
    for (kind, n, want) in bounds {
        if let Some(b) = log.absorb(rank_lower_bound(kind, cs(n))) {
            log.check(b.bound == want, || {
                format!("{}: rank bound {}, expected {want}", kind.name(n), b.bound)
            });
        }
    }
    let sweeps = [
        (MonoidKind::AOPn, 4, 2),
        (MonoidKind::AOPn, 5, 1),
        (MonoidKind::AORn, 4, 2),
        (MonoidKind::AORn, 7, 2),
    ];
    let mut swept = Vec::new();
    for (kind, n, r) in sweeps {
        if let Some(c) = log.absorb(exhaustive_rank_check(kind, cs(n), r)) {
            log.check(c.holds(), || format!("{}: a {r}-subset generates", kind.name(n)));
            swept.push(format!("{}/r={r}: {} subsets", kind.name(n), c.subsets));
        }
    }
    log.notes.push(swept.join(", "));
}

fn lemmas(log: &mut Log) {
    let mut checked = 0;
    for n in 4..=6 {
        let rep = lemma_pori(cs(n));
        checked += rep.checked;
        log.failures.extend(rep.counterexamples.into_iter().map(|c| format!("pori n={n}: {c}")));
    }
    for n in 5..=8 {
        if let Some(rep) = log.absorb(lemma_d2n(cs(n))) {
            checked += rep.checked;
            log.failures.extend(rep.counterexamples.into_iter().map(|c| format!("dihedral n={n}: {c}")));
        }
    }
    for n in 2..=8 {
        if let Some(rep) = log.absorb(eq_gn(n)) {
            checked += rep.checked;
            log.failures.extend(rep.counterexamples.into_iter().map(|c| format!("rotation n={n}: {c}")));
        }
    }
    log.notes.push(format!("{checked} cases"));
}
