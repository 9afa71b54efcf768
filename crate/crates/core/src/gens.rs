//! Named generators, generating sets and rank checks.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{member, reversal, rotation, MonoidKind};
use crate::engine::{closure, elements_of_rank, enumerate, ElementId, MonoidSet};
use crate::error::{Error, Result};
use crate::green::{green_classes, GreenStructure};
use crate::pperm::{point_bit, ChainSize, PartialPerm};

/// A named generator, realized at a given chain size by [`realize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenSpec {
    /// the cycle (1 2 … n)
    G,
    G2,
    /// (2 … n) → (3 … n 2)
    G1,
    /// (1 … n−1) → (2 … n−1 1)
    Gn,
    Gn2,
    /// the reversal i ↦ n+1−i
    H,
    Hg,
    /// the reversal of {1, …, n−1}
    Hn,
    Hngn,
    /// the order-preserving map Ω∖{i} → Ω∖{i−2}, with the two wrap-around cases
    X(usize),
}

impl GenSpec {
    pub fn name(self) -> String {
        match self {
            GenSpec::G => "g".into(),
            GenSpec::G2 => "g2".into(),
            GenSpec::G1 => "g1".into(),
            GenSpec::Gn => "gn".into(),
            GenSpec::Gn2 => "gn2".into(),
            GenSpec::H => "h".into(),
            GenSpec::Hg => "hg".into(),
            GenSpec::Hn => "hn".into(),
            GenSpec::Hngn => "hngn".into(),
            GenSpec::X(i) => format!("x{i}"),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for GenSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "g" => GenSpec::G,
            "g2" => GenSpec::G2,
            "g1" => GenSpec::G1,
            "gn" => GenSpec::Gn,
            "gn2" => GenSpec::Gn2,
            "h" => GenSpec::H,
            "hg" => GenSpec::Hg,
            "hn" => GenSpec::Hn,
            "hngn" => GenSpec::Hngn,
            _ => match s.strip_prefix('x').and_then(|i| i.parse().ok()) {
                Some(i) => GenSpec::X(i),
                None => return Err(Error::Parameter(format!("unknown generator {s:?}"))),
            },
        })
    }
}

fn all_but(n: ChainSize, i: usize) -> u32 {
    n.full_mask() & !point_bit(i)
}

/// The partial permutation named by `spec` on the chain of size `n`.
pub fn realize(spec: GenSpec, n: ChainSize) -> Result<PartialPerm> {
    let size = n.get();
    let shift = |from: std::ops::RangeInclusive<usize>, last: (usize, usize)| {
        PartialPerm::from_pairs(n, from.map(|i| (i, i + 1)).chain([last]))
    };
    match spec {
        GenSpec::G => Ok(rotation(n, 1).into_partial()),
        GenSpec::G2 => Ok(rotation(n, 2).into_partial()),
        GenSpec::G1 => shift(2..=size - 1, (size, 2)),
        GenSpec::Gn => shift(1..=size - 2, (size - 1, 1)),
        GenSpec::Gn2 => realize(GenSpec::Gn, n)?.power(2),
        GenSpec::H => Ok(reversal(n).into_partial()),
        GenSpec::Hg => Ok(reversal(n).compose(&rotation(n, 1))?.into_partial()),
        GenSpec::Hn => PartialPerm::from_pairs(n, (1..size).map(|i| (i, size - i))),
        GenSpec::Hngn => realize(GenSpec::Hn, n)?.compose(&realize(GenSpec::Gn, n)?),
        GenSpec::X(i) => {
            let odd = size % 2 == 1;
            let target = match i {
                1 if odd => size,
                1 => size - 1,
                2 if odd => size - 1,
                2 => size,
                i if (3..=size).contains(&i) => i - 2,
                _ => {
                    return Err(Error::UndefinedGenerator {
                        name: spec.name(),
                        n: size,
                    })
                }
            };
            PartialPerm::monotone_bijection(n, all_but(n, i), all_but(n, target))
        }
    }
}

/// Realizes a list of generators.
pub fn realize_all(specs: &[GenSpec], n: ChainSize) -> Result<Vec<PartialPerm>> {
    specs.iter().map(|&s| realize(s, n)).collect()
}

/// The known minimum generating set of AOP, AOR or AO.
pub fn named_generating_set(kind: MonoidKind, n: ChainSize) -> Result<Vec<GenSpec>> {
    use GenSpec::*;
    let size = n.get();
    Ok(match kind {
        MonoidKind::AOPn if size % 2 == 1 => vec![G, Gn2],
        MonoidKind::AOPn => vec![G2, G1, Gn],
        MonoidKind::AORn => match size % 4 {
            0 => vec![G2, H, Gn],
            1 => vec![G, H, Gn2],
            2 => vec![G2, Hg, G1, Gn],
            _ => vec![G, Gn2, Hngn],
        },
        MonoidKind::AOn => (1..=size).map(X).collect(),
        other => {
            return Err(Error::Unsupported(format!(
                "no named generating set for {other}"
            )))
        }
    })
}

/// Result of comparing a generated submonoid with the whole monoid.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratingReport {
    pub generates: bool,
    pub closure_size: usize,
    pub monoid_size: usize,
}

/// Does `specs` generate the monoid `kind` at size `n`?
pub fn verify_generating(kind: MonoidKind, n: ChainSize, specs: &[GenSpec]) -> Result<GeneratingReport> {
    let full = enumerate(kind, n)?;
    let sub = closure(n, &realize_all(specs, n)?)?;
    let inside = sub.elements().iter().all(|a| full.contains(a));
    Ok(GeneratingReport {
        generates: inside && sub.len() == full.len(),
        closure_size: sub.len(),
        monoid_size: full.len(),
    })
}

/// g₁ = h·gₙ^{n−2}·h.
pub fn g1_identity_holds(n: ChainSize) -> Result<bool> {
    let h = realize(GenSpec::H, n)?;
    let gn = realize(GenSpec::Gn, n)?;
    let rhs = h.compose(&gn.power(n.get() - 2)?)?.compose(&h)?;
    Ok(rhs == realize(GenSpec::G1, n)?)
}

/// Checks, for every a in AOR∖AOP of rank below n and every k outside
/// Dom(a), that (hₙgₙ)²·gᵏ·a = gᵏ·a and hₙgₙ·gᵏ·a lies in AOP.
/// Returns the number of cases checked and the failures.
pub fn hngn_square_check(n: ChainSize) -> Result<(usize, Vec<String>)> {
    let hngn = realize(GenSpec::Hngn, n)?;
    let sq = hngn.power(2)?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for k in 0..n.get() {
        for a in elements_of_rank(MonoidKind::AORn, n, k) {
            if member(&a, MonoidKind::AOPn) {
                continue;
            }
            for p in (1..=n.get()).filter(|&p| a.apply(p).is_none()) {
                let gka = rotation(n, p).as_partial().compose(&a)?;
                checked += 1;
                if sq.compose(&gka)? != gka {
                    failures.push(format!("square fails for a={a}, k={p}"));
                }
                if !member(&hngn.compose(&gka)?, MonoidKind::AOPn) {
                    failures.push(format!("hngn·g^{p}·a leaves AOP for a={a}"));
                }
            }
        }
    }
    Ok((checked, failures))
}

// Closure of the identity under right multiplication by the given columns,
// stopping early once `target` elements are reached.
fn right_closure_size(columns: &[&[u32]], identity: ElementId, len: usize, target: usize) -> usize {
    let mut seen = vec![false; len];
    let mut queue = vec![identity as u32];
    seen[identity] = true;
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head] as usize;
        head += 1;
        for col in columns {
            let y = col[x];
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push(y);
                if queue.len() == target {
                    return target;
                }
            }
        }
    }
    queue.len()
}

fn right_column(m: &MonoidSet, y: ElementId) -> Vec<u32> {
    (0..m.len()).map(|x| m.mul(x, y) as u32).collect()
}

/// Lower bound on the rank from the J-order, optionally raised by a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct RankBound {
    /// least number of units generating the unit group
    pub unit_generators: usize,
    /// J-classes directly below the units
    pub maximal_classes: usize,
    pub structural: usize,
    /// set when the structural bound is 2 with a cyclic unit group: every
    /// pair {u, a} with u generating the units was tried
    pub anchored_sweep: Option<RankCheck>,
    pub bound: usize,
}

fn unit_generator_count(m: &MonoidSet, g: &GreenStructure) -> usize {
    let units = g.j_classes()[g.unit_class(m)].members.clone();
    if units.len() == 1 {
        return 0;
    }
    let columns: Vec<Vec<u32>> = units.iter().map(|&u| right_column(m, u)).collect();
    for r in 1..=units.len() {
        for pick in (0..units.len()).combinations(r) {
            let cols: Vec<&[u32]> = pick.iter().map(|&i| columns[i].as_slice()).collect();
            if right_closure_size(&cols, m.identity(), m.len(), units.len()) == units.len() {
                return r;
            }
        }
    }
    unreachable!("the unit group generates itself")
}

/// Structural rank bound of an enumerated monoid, raised by one when no
/// pair {u, a} generates.
pub fn rank_lower_bound_of(m: &MonoidSet) -> Result<RankBound> {
    let g = green_classes(m);
    let unit_generators = unit_generator_count(m, &g);
    let maximal = g.maximal_non_unit_classes(m);
    let structural = unit_generators + maximal.len();
    let mut bound = RankBound {
        unit_generators,
        maximal_classes: maximal.len(),
        structural,
        anchored_sweep: None,
        bound: structural,
    };
    if unit_generators == 1 && maximal.len() == 1 {
        let check = anchored_sweep(m, &g)?;
        if check.holds() {
            bound.bound = structural + 1;
        }
        bound.anchored_sweep = Some(check);
    }
    Ok(bound)
}

/// [`rank_lower_bound_of`] for AOP or AOR.
pub fn rank_lower_bound(kind: MonoidKind, n: ChainSize) -> Result<RankBound> {
    if !matches!(kind, MonoidKind::AOPn | MonoidKind::AORn) {
        return Err(Error::Unsupported(format!("rank bounds cover aop and aor, not {kind}")));
    }
    rank_lower_bound_of(&enumerate(kind, n)?)
}

/// How a rank check chose its candidate subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// every r-subset
    Blind,
    /// one unit and one element of each maximal non-unit J-class
    Screened,
    /// a fixed unit generating the unit group plus one element of the
    /// single maximal non-unit J-class
    Anchored,
}

/// Outcome of an attempt to show that no r-subset generates.
#[derive(Clone, Debug, Serialize)]
pub struct RankCheck {
    pub r: usize,
    pub strategy: Strategy,
    pub subsets: usize,
    /// a generating subset, if one was found
    pub witness: Option<Vec<ElementId>>,
}

impl RankCheck {
    /// True when no candidate subset generates.
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Largest number of subsets swept one by one.
pub const SWEEP_BUDGET: usize = 250_000;

fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn sweep(m: &MonoidSet, candidates: Vec<Vec<ElementId>>) -> Option<Vec<ElementId>> {
    let mut pool: Vec<ElementId> = candidates.iter().flatten().copied().collect();
    pool.sort_unstable();
    pool.dedup();
    let mut column_of = vec![usize::MAX; m.len()];
    let columns: Vec<Vec<u32>> = pool.par_iter().map(|&y| right_column(m, y)).collect();
    for (i, &y) in pool.iter().enumerate() {
        column_of[y] = i;
    }
    candidates.into_par_iter().find_any(|subset| {
        let cols: Vec<&[u32]> = subset.iter().map(|&y| columns[column_of[y]].as_slice()).collect();
        right_closure_size(&cols, m.identity(), m.len(), m.len()) == m.len()
    })
}

/// Checks that no r-element subset of `m` generates it. Sweeps all subsets
/// when there are at most [`SWEEP_BUDGET`] of them; otherwise only subsets
/// with a unit and an element of each maximal non-unit J-class, which any
/// generating set needs.
pub fn exhaustive_rank_check_of(m: &MonoidSet, r: usize) -> Result<RankCheck> {
    let blind = binomial(m.len(), r);
    if blind <= SWEEP_BUDGET {
        let subsets: Vec<Vec<ElementId>> = (0..m.len()).combinations(r).collect();
        return Ok(RankCheck {
            r,
            strategy: Strategy::Blind,
            subsets: subsets.len(),
            witness: sweep(m, subsets),
        });
    }
    let g = green_classes(m);
    let maximal = g.maximal_non_unit_classes(m);
    let required = 1 + maximal.len();
    if required > r {
        return Ok(RankCheck {
            r,
            strategy: Strategy::Screened,
            subsets: 0,
            witness: None,
        });
    }
    if required < r {
        return Err(Error::Resource(format!(
            "{blind} subsets of size {r} exceed the budget and the screen leaves free slots"
        )));
    }
    let pools: Vec<Vec<ElementId>> = std::iter::once(g.unit_class(m))
        .chain(maximal)
        .map(|c| g.j_classes()[c].members.clone())
        .collect();
    let count: usize = pools.iter().map(Vec::len).product();
    if count > SWEEP_BUDGET {
        return Err(Error::Resource(format!("{count} screened subsets exceed the budget")));
    }
    let subsets: Vec<Vec<ElementId>> = pools.into_iter().multi_cartesian_product().collect();
    Ok(RankCheck {
        r,
        strategy: Strategy::Screened,
        subsets: subsets.len(),
        witness: sweep(m, subsets),
    })
}

/// [`exhaustive_rank_check_of`] on the enumerated monoid.
pub fn exhaustive_rank_check(kind: MonoidKind, n: ChainSize, r: usize) -> Result<RankCheck> {
    exhaustive_rank_check_of(&enumerate(kind, n)?, r)
}

/// Pairs {u, a} where u is a fixed unit generating the unit group and a runs
/// over the single maximal non-unit J-class. Any generating pair can be
/// brought to this shape, since a generating pair needs a unit that alone
/// generates the units.
pub fn anchored_sweep(m: &MonoidSet, g: &GreenStructure) -> Result<RankCheck> {
    let maximal = g.maximal_non_unit_classes(m);
    let [top] = maximal.as_slice() else {
        return Err(Error::Precondition(format!(
            "anchored sweep needs one maximal non-unit class, found {}",
            maximal.len()
        )));
    };
    let units = &g.j_classes()[g.unit_class(m)].members;
    let anchor = units
        .iter()
        .copied()
        .find(|&u| {
            let col = right_column(m, u);
            right_closure_size(&[&col], m.identity(), m.len(), units.len()) == units.len()
        })
        .ok_or_else(|| Error::Precondition("the unit group is not cyclic".into()))?;
    let subsets: Vec<Vec<ElementId>> = g.j_classes()[*top]
        .members
        .iter()
        .map(|&a| vec![anchor, a])
        .collect();
    Ok(RankCheck {
        r: 2,
        strategy: Strategy::Anchored,
        subsets: subsets.len(),
        witness: sweep(m, subsets),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: usize) -> ChainSize {
        ChainSize::new(k).unwrap()
    }

    fn pp(k: usize, s: &str) -> PartialPerm {
        PartialPerm::parse(n(k), s).unwrap()
    }

    #[test]
    fn realizations() {
        assert_eq!(realize(GenSpec::G, n(4)).unwrap(), pp(4, "1->2,2->3,3->4,4->1"));
        assert_eq!(realize(GenSpec::Gn, n(5)).unwrap(), pp(5, "1->2,2->3,3->4,4->1"));
        assert_eq!(realize(GenSpec::G1, n(4)).unwrap(), pp(4, "2->3,3->4,4->2"));
        assert_eq!(realize(GenSpec::H, n(4)).unwrap(), pp(4, "1->4,2->3,3->2,4->1"));
        assert_eq!(realize(GenSpec::Hn, n(4)).unwrap(), pp(4, "1->3,2->2,3->1"));
        assert_eq!(realize(GenSpec::Hg, n(4)).unwrap(), pp(4, "1->1,2->4,3->3,4->2"));
        assert_eq!(realize(GenSpec::X(3), n(5)).unwrap(), pp(5, "1->2,2->3,4->4,5->5"));
        assert_eq!(realize(GenSpec::X(1), n(5)).unwrap(), pp(5, "2->1,3->2,4->3,5->4"));
        assert_eq!(realize(GenSpec::X(1), n(4)).unwrap(), pp(4, "2->1,3->2,4->4"));
        assert_eq!(realize(GenSpec::X(2), n(5)).unwrap(), pp(5, "1->1,3->2,4->3,5->5"));
        assert_eq!(realize(GenSpec::X(2), n(4)).unwrap(), pp(4, "1->1,3->2,4->3"));
        assert!(matches!(
            realize(GenSpec::X(6), n(5)),
            Err(Error::UndefinedGenerator { .. })
        ));
        assert!(realize(GenSpec::X(0), n(5)).is_err());
    }

    #[test]
    fn hngn_squares_to_partial_identity() {
        let sq = realize(GenSpec::Hngn, n(7)).unwrap().power(2).unwrap();
        assert_eq!(sq, PartialPerm::partial_identity(n(7), n(7).full_mask() >> 1));
    }

    #[test]
    fn names_round_trip() {
        for s in ["g", "g2", "g1", "gn", "gn2", "h", "hg", "hn", "hngn", "x4"] {
            assert_eq!(s.parse::<GenSpec>().unwrap().to_string(), s);
        }
        assert!("y".parse::<GenSpec>().is_err());
    }

    #[test]
    fn generating_sets() {
        let r = verify_generating(MonoidKind::AOPn, n(5), &[GenSpec::G, GenSpec::Gn2]).unwrap();
        assert!(r.generates);
        assert_eq!(r.closure_size, 581);
        let r = verify_generating(MonoidKind::AOPn, n(5), &[GenSpec::G]).unwrap();
        assert!(!r.generates);
        assert_eq!(r.closure_size, 5);
        for k in 3..=6 {
            for kind in [MonoidKind::AOPn, MonoidKind::AORn, MonoidKind::AOn] {
                let specs = named_generating_set(kind, n(k)).unwrap();
                assert!(verify_generating(kind, n(k), &specs).unwrap().generates, "{kind} {k}");
            }
        }
    }

    #[test]
    fn g1_identity() {
        for k in 3..=9 {
            assert!(g1_identity_holds(n(k)).unwrap());
        }
    }

    #[test]
    fn hngn_square_identity() {
        let (checked, failures) = hngn_square_check(n(7)).unwrap();
        assert!(checked > 0);
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn rank_bounds() {
        assert_eq!(rank_lower_bound(MonoidKind::AOPn, n(5)).unwrap().bound, 2);
        assert_eq!(rank_lower_bound(MonoidKind::AOPn, n(4)).unwrap().bound, 3);
        assert_eq!(rank_lower_bound(MonoidKind::AORn, n(4)).unwrap().bound, 3);
        assert_eq!(rank_lower_bound(MonoidKind::AORn, n(5)).unwrap().bound, 3);
        let b = rank_lower_bound(MonoidKind::AORn, n(6)).unwrap();
        assert_eq!((b.unit_generators, b.maximal_classes, b.bound), (2, 2, 4));
    }

    #[test]
    fn small_sweeps() {
        let c = exhaustive_rank_check(MonoidKind::AOPn, n(4), 2).unwrap();
        assert!(c.holds());
        assert_eq!((c.strategy, c.subsets), (Strategy::Blind, 6555));
        assert!(exhaustive_rank_check(MonoidKind::AOPn, n(5), 1).unwrap().holds());
        assert!(exhaustive_rank_check(MonoidKind::AORn, n(4), 2).unwrap().holds());
        // AOP_3 has rank 2
        assert!(!exhaustive_rank_check(MonoidKind::AOPn, n(3), 2).unwrap().holds());
        let c = exhaustive_rank_check(MonoidKind::AOPn, n(4), 3).unwrap();
        assert!(!c.holds());
    }
}
