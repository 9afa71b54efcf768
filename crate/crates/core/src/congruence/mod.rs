//! Congruences of a [`MonoidSet`]: the constructive description through
//! Rees ideals, group congruences and tilde maps, and a brute-force lattice
//! oracle to compare it against.

mod lemmas;
mod oracle;
mod tilde;
mod union_find;

use std::fmt;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::classify::MonoidKind;
use crate::engine::{ElementId, Ideal, IdealLabel, MonoidSet};
use crate::error::{Error, Result};
use crate::green::{GreenStructure, HGroup};

pub use lemmas::{eq_gn, lemma_d2n, lemma_pori, LemmaReport};
pub use oracle::{
    congruence_lattice_oracle, congruence_lattice_oracle_with_cap, principal_congruence,
    ORACLE_CAP,
};
pub use tilde::{tilde_map, TildeEntry, TildeLawReport, TildeMap};
pub use union_find::UnionFind;

/// A partition of the element ids, stored as block labels numbered by
/// first occurrence, so equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    labels: Vec<u32>,
    blocks: usize,
}

impl Congruence {
    /// Canonicalizes arbitrary block keys.
    pub fn from_keys<K: std::hash::Hash + Eq>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut seen: FxHashMap<K, u32> = FxHashMap::default();
        let labels: Vec<u32> = keys
            .into_iter()
            .map(|k| {
                let next = seen.len() as u32;
                *seen.entry(k).or_insert(next)
            })
            .collect();
        Congruence {
            blocks: seen.len(),
            labels,
        }
    }

    pub fn from_union_find(uf: &mut UnionFind) -> Self {
        let labels = uf.labels();
        let blocks = labels.iter().max().map_or(0, |&m| m as usize + 1);
        Congruence { labels, blocks }
    }

    pub fn identity(len: usize) -> Self {
        Congruence {
            labels: (0..len as u32).collect(),
            blocks: len,
        }
    }

    pub fn universal(len: usize) -> Self {
        Congruence {
            labels: vec![0; len],
            blocks: usize::from(len > 0),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn related(&self, x: ElementId, y: ElementId) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn blocks(&self) -> Vec<Vec<ElementId>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (x, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(x);
        }
        out
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut image = vec![u32::MAX; self.blocks];
        self.labels.iter().zip(&other.labels).all(|(&a, &b)| {
            let slot = &mut image[a as usize];
            if *slot == u32::MAX {
                *slot = b;
            }
            *slot == b
        })
    }

    /// Compatibility with multiplication, checked on generators on both sides.
    pub fn is_compatible(&self, m: &MonoidSet) -> bool {
        (0..m.generators().len()).all(|j| {
            [m.right_table(j), m.left_table(j)].into_iter().all(|table| {
                let mut image = vec![u32::MAX; self.blocks];
                (0..self.len()).all(|x| {
                    let target = self.labels[table[x]];
                    let slot = &mut image[self.labels[x] as usize];
                    if *slot == u32::MAX {
                        *slot = target;
                    }
                    *slot == target
                })
            })
        })
    }

    /// Smallest congruence containing both.
    pub fn join(&self, other: &Congruence, m: &MonoidSet) -> Congruence {
        let mut uf = UnionFind::new(self.len());
        let mut seeds = Vec::new();
        for c in [self, other] {
            let mut first = vec![usize::MAX; c.blocks];
            for x in 0..c.len() {
                let slot = &mut first[c.labels[x] as usize];
                if *slot == usize::MAX {
                    *slot = x;
                } else {
                    seeds.push((*slot, x));
                }
            }
        }
        oracle::saturate(m, &mut uf, seeds);
        Congruence::from_union_find(&mut uf)
    }
}

/// Rees congruence: the ideal collapses to one block.
pub fn rees(m: &MonoidSet, ideal: &Ideal) -> Result<Congruence> {
    if ideal.mask.len() != m.len() {
        return Err(Error::Parameter("ideal mask has the wrong length".into()));
    }
    if ideal.is_empty() || !ideal.is_absorbing(m) {
        return Err(Error::NotAnIdeal(ideal.label.to_string()));
    }
    Ok(Congruence::from_keys(
        (0..m.len()).map(|x| if ideal.mask[x] { usize::MAX } else { x }),
    ))
}

/// A congruence of a group H-class, given by a normal subgroup.
#[derive(Clone, Debug)]
pub struct GroupCongruence {
    /// Normal subgroup as a mask over positions in the group.
    pub normal: u64,
    /// Coset label of each group position.
    pub cosets: Vec<usize>,
}

impl GroupCongruence {
    pub fn normal_order(&self) -> usize {
        self.normal.count_ones() as usize
    }
}

/// One congruence per normal subgroup of the group, smallest first.
pub fn group_congruences(h: &HGroup) -> Vec<GroupCongruence> {
    h.group
        .normal_subgroups()
        .into_iter()
        .map(|normal| GroupCongruence {
            normal,
            cosets: h.group.coset_labels(normal),
        })
        .collect()
}

/// Symbolic description of a congruence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CongruenceSpec {
    Identity,
    Universal,
    Rees(IdealLabel),
    /// Collapses everything not above the class; the field `normal` is the
    /// order of the normal subgroup.
    Pi { class: String, normal: usize },
    /// Collapses everything strictly below the class.
    Theta { class: String, normal: usize },
    ThetaUnion {
        odd: String,
        odd_normal: usize,
        even: String,
        even_normal: usize,
    },
}

impl fmt::Display for CongruenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceSpec::Identity => f.write_str("id"),
            CongruenceSpec::Universal => f.write_str("omega"),
            CongruenceSpec::Rees(l) => write!(f, "rees({l})"),
            CongruenceSpec::Pi { class, normal } => write!(f, "pi({class}, N{normal})"),
            CongruenceSpec::Theta { class, normal } => write!(f, "theta({class}, N{normal})"),
            CongruenceSpec::ThetaUnion {
                odd,
                odd_normal,
                even,
                even_normal,
            } => write!(f, "theta({odd}, N{odd_normal}) u theta({even}, N{even_normal})"),
        }
    }
}

fn class_keyed(
    m: &MonoidSet,
    g: &GreenStructure,
    collapse: &[bool],
    parts: &[(&TildeMap, &GroupCongruence)],
) -> Congruence {
    // keys: 0 = collapsed block, 1 + x = singleton, or (class, h-class, coset)
    #[derive(Hash, PartialEq, Eq)]
    enum Key {
        Collapsed,
        Single(usize),
        Refined(usize, usize, usize),
    }
    let mut in_part = vec![usize::MAX; m.len()];
    for (p, (t, _)) in parts.iter().enumerate() {
        for e in &t.entries {
            in_part[e.element] = p;
        }
    }
    Congruence::from_keys((0..m.len()).map(|x| {
        if collapse[x] {
            Key::Collapsed
        } else if in_part[x] != usize::MAX {
            let (t, rho) = parts[in_part[x]];
            let pos = t.anchor_position(x);
            Key::Refined(in_part[x], g.h_class(x), rho.cosets[pos])
        } else {
            Key::Single(x)
        }
    }))
}

fn check_rho(t: &TildeMap, rho: &GroupCongruence) -> Result<()> {
    if rho.cosets.len() != t.anchor.members.len() {
        return Err(Error::Parameter(
            "group congruence is not over the anchor group".into(),
        ));
    }
    Ok(())
}

/// Collapses the elements whose class is not above `J`, and refines `J`
/// by H and the group congruence read through the tilde map.
pub fn build_pi(
    m: &MonoidSet,
    g: &GreenStructure,
    t: &TildeMap,
    rho: &GroupCongruence,
) -> Result<Congruence> {
    check_rho(t, rho)?;
    Ok(class_keyed(m, g, &g.not_above(t.class), &[(t, rho)]))
}

/// As [`build_pi`] but collapsing only the elements strictly below `J`.
pub fn build_theta(
    m: &MonoidSet,
    g: &GreenStructure,
    t: &TildeMap,
    rho: &GroupCongruence,
) -> Result<Congruence> {
    check_rho(t, rho)?;
    Ok(class_keyed(m, g, &g.below(t.class), &[(t, rho)]))
}

/// Union of two theta congruences over classes with the same lower ideal.
pub fn build_theta_union(
    m: &MonoidSet,
    g: &GreenStructure,
    t1: &TildeMap,
    rho1: &GroupCongruence,
    t2: &TildeMap,
    rho2: &GroupCongruence,
) -> Result<Congruence> {
    check_rho(t1, rho1)?;
    check_rho(t2, rho2)?;
    let below = g.below(t1.class);
    if below != g.below(t2.class) {
        return Err(Error::Precondition(
            "the two classes have different lower ideals".into(),
        ));
    }
    Ok(class_keyed(m, g, &below, &[(t1, rho1), (t2, rho2)]))
}

/// Whether the kind/size pair has the split rank `n - 1` level.
pub fn has_split_top(kind: MonoidKind, n: usize) -> bool {
    match kind {
        MonoidKind::AOPn => n % 2 == 0,
        MonoidKind::AORn => n % 4 == 2,
        _ => false,
    }
}

/// Every congruence described by the classification: the universal one and
/// the pi congruences of every non-zero class, plus the theta unions at a
/// split top level. Deduplicated by partition, sorted by partition.
pub fn enumerate_congruences_constructive(
    m: &MonoidSet,
    g: &GreenStructure,
) -> Result<Vec<(CongruenceSpec, Congruence)>> {
    let kind = m.kind().ok_or_else(|| {
        Error::Unsupported("constructive congruences need an enumerated AOP or AOR".into())
    })?;
    if !matches!(kind, MonoidKind::AOPn | MonoidKind::AORn) {
        return Err(Error::Unsupported(format!(
            "no constructive congruence description for {kind}"
        )));
    }
    let n = m.n();
    let mut out: Vec<(CongruenceSpec, Congruence)> =
        vec![(CongruenceSpec::Universal, Congruence::universal(m.len()))];
    let mut maps = Vec::new();
    for c in 0..g.j_classes().len() {
        if g.j_classes()[c].rank == 0 {
            continue;
        }
        let t = tilde_map(m, g, c)?;
        let rhos = group_congruences(&t.anchor);
        for rho in &rhos {
            let spec = CongruenceSpec::Pi {
                class: g.j_classes()[c].label(),
                normal: rho.normal_order(),
            };
            out.push((spec, build_pi(m, g, &t, rho)?));
        }
        maps.push((c, t, rhos));
    }
    if has_split_top(kind, n) {
        let top: Vec<_> = maps
            .iter()
            .filter(|(c, _, _)| g.j_classes()[*c].rank + 1 == n)
            .collect();
        if top.len() != 2 {
            return Err(Error::Precondition(format!(
                "expected two classes of rank {}, found {}",
                n - 1,
                top.len()
            )));
        }
        let (odd, even) = if g.j_classes()[top[0].0].tag.as_deref() == Some("o") {
            (top[0], top[1])
        } else {
            (top[1], top[0])
        };
        for r1 in &odd.2 {
            for r2 in &even.2 {
                let spec = CongruenceSpec::ThetaUnion {
                    odd: g.j_classes()[odd.0].label(),
                    odd_normal: r1.normal_order(),
                    even: g.j_classes()[even.0].label(),
                    even_normal: r2.normal_order(),
                };
                out.push((spec, build_theta_union(m, g, &odd.1, r1, &even.1, r2)?));
            }
        }
    }
    Ok(dedup_by_partition(out))
}

/// Keeps the first spec for each distinct partition, and sorts by partition.
pub fn dedup_by_partition(
    items: Vec<(CongruenceSpec, Congruence)>,
) -> Vec<(CongruenceSpec, Congruence)> {
    let mut seen: FxHashMap<Congruence, usize> = FxHashMap::default();
    let mut out: Vec<(CongruenceSpec, Congruence)> = Vec::new();
    for (spec, c) in items {
        if let Some(&i) = seen.get(&c) {
            // prefer the plainest name for the partition
            if spec_weight(&spec) < spec_weight(&out[i].0) {
                out[i].0 = spec;
            }
            continue;
        }
        seen.insert(c.clone(), out.len());
        let spec = if c.block_count() == c.len() {
            CongruenceSpec::Identity
        } else {
            spec
        };
        out.push((spec, c));
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

fn spec_weight(s: &CongruenceSpec) -> usize {
    match s {
        CongruenceSpec::Identity => 0,
        CongruenceSpec::Universal => 1,
        CongruenceSpec::Rees(_) => 2,
        CongruenceSpec::Pi { .. } => 3,
        CongruenceSpec::Theta { .. } => 4,
        CongruenceSpec::ThetaUnion { .. } => 5,
    }
}

/// DOT rendering of a congruence lattice ordered by refinement, finer
/// congruences at the bottom.
pub fn lattice_dot(items: &[(Option<CongruenceSpec>, Congruence)]) -> String {
    use std::fmt::Write as _;
    let mut s = String::from("digraph Con {\n  rankdir=BT;\n");
    for (i, (spec, c)) in items.iter().enumerate() {
        let name = spec.as_ref().map_or_else(|| "anon".to_string(), |sp| sp.to_string());
        let _ = writeln!(s, "  k{i} [label=\"{name} / {}\"];", c.block_count());
    }
    let k = items.len();
    let below = |a: usize, b: usize| a != b && items[a].1.refines(&items[b].1);
    for a in 0..k {
        for b in 0..k {
            if below(a, b) && !(0..k).any(|c| below(a, c) && below(c, b)) {
                let _ = writeln!(s, "  k{a} -> k{b};");
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{enumerate, ideals_from};
    use crate::green::green_classes;
    use crate::pperm::ChainSize;

    fn setup(kind: MonoidKind, k: usize) -> (MonoidSet, GreenStructure) {
        let m = enumerate(kind, ChainSize::new(k).unwrap()).unwrap();
        let g = green_classes(&m);
        (m, g)
    }

    #[test]
    fn refinement_and_compatibility() {
        let (m, _) = setup(MonoidKind::AOPn, 3);
        let id = Congruence::identity(m.len());
        let all = Congruence::universal(m.len());
        assert!(id.refines(&all) && !all.refines(&id));
        assert!(id.is_compatible(&m) && all.is_compatible(&m));
        let bad = Congruence::from_keys((0..m.len()).map(|x| x == m.identity() || x == 1));
        assert!(!bad.is_compatible(&m));
    }

    #[test]
    fn rees_extremes() {
        let (m, g) = setup(MonoidKind::AOPn, 4);
        let ids = ideals_from(&m, &g).unwrap();
        let zero = ids.iter().find(|i| i.label == IdealLabel::Rank(0)).unwrap();
        assert_eq!(rees(&m, zero).unwrap(), Congruence::identity(m.len()));
        let all = ids.iter().find(|i| i.label == IdealLabel::Rank(4)).unwrap();
        assert_eq!(rees(&m, all).unwrap(), Congruence::universal(m.len()));
        let mut fake = zero.clone();
        fake.mask[m.identity()] = true;
        assert!(rees(&m, &fake).is_err());
    }

    #[test]
    fn pi_and_theta_examples() {
        let (m, g) = setup(MonoidKind::AOPn, 4);
        let ids = ideals_from(&m, &g).unwrap();
        let rees_of = |l: IdealLabel| rees(&m, ids.iter().find(|i| i.label == l).unwrap()).unwrap();
        let j1 = g.classes_of_rank(1)[0];
        let t = tilde_map(&m, &g, j1).unwrap();
        let triv = &group_congruences(&t.anchor)[0];
        assert_eq!(build_pi(&m, &g, &t, triv).unwrap(), Congruence::identity(m.len()));
        let units = g.unit_class(&m);
        let t = tilde_map(&m, &g, units).unwrap();
        let triv = &group_congruences(&t.anchor)[0];
        assert_eq!(build_pi(&m, &g, &t, triv).unwrap(), rees_of(IdealLabel::Rank(3)));
        let o = g.class_by_label("J3o").unwrap();
        let e = g.class_by_label("J3e").unwrap();
        let (to, te) = (tilde_map(&m, &g, o).unwrap(), tilde_map(&m, &g, e).unwrap());
        let ro = group_congruences(&to.anchor);
        let re = group_congruences(&te.anchor);
        let u = build_theta_union(&m, &g, &to, &ro[0], &te, &re[0]).unwrap();
        assert_eq!(u, rees_of(IdealLabel::Rank(2)));
        for r2 in &re {
            let u = build_theta_union(&m, &g, &to, &ro[0], &te, r2).unwrap();
            assert_eq!(u, build_theta(&m, &g, &te, r2).unwrap());
            assert!(u.is_compatible(&m));
        }
        let full = build_theta_union(&m, &g, &to, ro.last().unwrap(), &te, re.last().unwrap()).unwrap();
        assert!(full.is_compatible(&m));
        assert!(build_theta_union(&m, &g, &to, &ro[0], &t, &group_congruences(&t.anchor)[0]).is_err());
    }

    #[test]
    fn group_congruence_counts() {
        let (m, g) = setup(MonoidKind::AORn, 4);
        let units = g.group_of(&m, m.identity()).unwrap();
        assert_eq!(group_congruences(&units).len(), 5);
    }

    #[test]
    fn constructive_counts_small() {
        let (m, g) = setup(MonoidKind::AOPn, 3);
        assert_eq!(enumerate_congruences_constructive(&m, &g).unwrap().len(), 5);
        let (m, g) = setup(MonoidKind::AOPn, 4);
        let all = enumerate_congruences_constructive(&m, &g).unwrap();
        assert_eq!(all.len(), 14);
        assert!(all.iter().all(|(_, c)| c.is_compatible(&m)));
        let (m, g) = setup(MonoidKind::AORn, 4);
        assert_eq!(enumerate_congruences_constructive(&m, &g).unwrap().len(), 11);
    }

    #[test]
    fn lattice_dot_has_cover_edges() {
        let (m, g) = setup(MonoidKind::AOPn, 3);
        let items: Vec<_> = enumerate_congruences_constructive(&m, &g)
            .unwrap()
            .into_iter()
            .map(|(s, c)| (Some(s), c))
            .collect();
        let dot = lattice_dot(&items);
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("omega / 1"));
    }
}
