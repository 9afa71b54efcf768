//! Brute-force congruence lattice: principal congruences of all pairs,
//! closed under joins.

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use super::union_find::UnionFind;
use super::Congruence;
use crate::engine::{ElementId, MonoidSet};
use crate::error::{Error, Result};

/// Default size cap for the lattice oracle.
pub const ORACLE_CAP: usize = 5000;

/// Closes the union-find under the seeds, multiplication by generators on
/// both sides and transitivity.
pub(crate) fn saturate(m: &MonoidSet, uf: &mut UnionFind, seeds: Vec<(ElementId, ElementId)>) {
    let gens = m.generators().len();
    let rights: Vec<&[ElementId]> = (0..gens).map(|j| m.right_table(j)).collect();
    let lefts: Vec<&[ElementId]> = (0..gens).map(|j| m.left_table(j)).collect();
    let mut stack = seeds;
    while let Some((p, q)) = stack.pop() {
        if uf.union(p, q) {
            for j in 0..gens {
                stack.push((rights[j][p], rights[j][q]));
                stack.push((lefts[j][p], lefts[j][q]));
            }
        }
    }
}

/// The least congruence relating `a` and `b`.
pub fn principal_congruence(m: &MonoidSet, a: ElementId, b: ElementId) -> Congruence {
    let mut uf = UnionFind::new(m.len());
    saturate(m, &mut uf, vec![(a, b)]);
    Congruence::from_union_find(&mut uf)
}

/// All congruences of `m`, sorted by partition. Fails above [`ORACLE_CAP`] elements.
pub fn congruence_lattice_oracle(m: &MonoidSet) -> Result<Vec<Congruence>> {
    congruence_lattice_oracle_with_cap(m, ORACLE_CAP)
}

/// As [`congruence_lattice_oracle`] with an explicit cap.
pub fn congruence_lattice_oracle_with_cap(m: &MonoidSet, cap: usize) -> Result<Vec<Congruence>> {
    let len = m.len();
    if len > cap {
        return Err(Error::Resource(format!(
            "congruence oracle on {len} elements exceeds the cap {cap}"
        )));
    }
    // force the generator tables before going parallel
    let _ = m.generators();
    let principals: FxHashSet<Congruence> = (0..len)
        .into_par_iter()
        .fold(
            || (UnionFind::new(len), FxHashSet::default()),
            |(mut uf, mut found), a| {
                for b in a + 1..len {
                    uf.reset();
                    saturate(m, &mut uf, vec![(a, b)]);
                    found.insert(Congruence::from_union_find(&mut uf));
                }
                (uf, found)
            },
        )
        .map(|(_, found)| found)
        .reduce(FxHashSet::default, |mut x, y| {
            x.extend(y);
            x
        });
    let mut lattice: Vec<Congruence> = principals.into_iter().collect();
    lattice.push(Congruence::identity(len));
    lattice.sort();
    lattice.dedup();
    let mut known: FxHashSet<Congruence> = lattice.iter().cloned().collect();
    let mut frontier = lattice.clone();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for a in &frontier {
            for b in &lattice {
                let j = a.join(b, m);
                if known.insert(j.clone()) {
                    fresh.push(j);
                }
            }
        }
        lattice.extend(fresh.iter().cloned());
        frontier = fresh;
    }
    lattice.sort();
    Ok(lattice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::MonoidKind;
    use crate::engine::{enumerate, ideals};
    use crate::pperm::ChainSize;

    #[test]
    fn ao4_has_only_rees_congruences() {
        let m = enumerate(MonoidKind::AOn, ChainSize::new(4).unwrap()).unwrap();
        let lattice = congruence_lattice_oracle(&m).unwrap();
        assert_eq!(lattice.len(), 7);
        let mut rees: Vec<Congruence> = ideals(&m)
            .unwrap()
            .iter()
            .map(|i| super::super::rees(&m, i).unwrap())
            .collect();
        rees.sort();
        assert_eq!(lattice, rees);
    }

    #[test]
    fn lattice_axioms() {
        let m = enumerate(MonoidKind::AOPn, ChainSize::new(3).unwrap()).unwrap();
        let lattice = congruence_lattice_oracle(&m).unwrap();
        assert_eq!(lattice.len(), 5);
        assert!(lattice.contains(&Congruence::identity(m.len())));
        assert!(lattice.contains(&Congruence::universal(m.len())));
        for a in &lattice {
            assert!(a.is_compatible(&m));
            for b in &lattice {
                assert!(lattice.contains(&a.join(b, &m)));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let m = enumerate(MonoidKind::AOPn, ChainSize::new(4).unwrap()).unwrap();
        assert!(matches!(
            congruence_lattice_oracle_with_cap(&m, 100),
            Err(Error::Resource(_))
        ));
    }
}
