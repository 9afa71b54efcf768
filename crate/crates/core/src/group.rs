//! Small finite groups given by multiplication tables: element orders,
//! identification, subgroups and normal subgroups.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest group handled; subgroups are stored as 64-bit masks.
pub const MAX_ORDER: usize = 64;

/// Isomorphism type of a group H-class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "String")]
pub enum GroupType {
    Trivial,
    Cyclic(usize),
    /// Dihedral group; the field is the order `2m`.
    Dihedral(usize),
    Klein,
    Other(usize),
}

impl GroupType {
    pub fn order(self) -> usize {
        match self {
            GroupType::Trivial => 1,
            GroupType::Cyclic(m) | GroupType::Dihedral(m) | GroupType::Other(m) => m,
            GroupType::Klein => 4,
        }
    }

    /// Number of congruences (equivalently normal subgroups) predicted by
    /// the classification of cyclic and dihedral groups.
    pub fn expected_congruence_count(self) -> Option<usize> {
        let divisors = |m: usize| (1..=m).filter(|d| m % d == 0).count();
        match self {
            GroupType::Trivial => Some(1),
            GroupType::Cyclic(m) => Some(divisors(m)),
            GroupType::Klein => Some(5),
            GroupType::Dihedral(order) => {
                let m = order / 2;
                if m < 3 {
                    None
                } else if m % 2 == 1 {
                    Some(divisors(m) + 1)
                } else {
                    Some(divisors(m) + 3)
                }
            }
            GroupType::Other(_) => None,
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::Trivial => f.write_str("trivial"),
            GroupType::Cyclic(m) => write!(f, "cyclic({m})"),
            GroupType::Dihedral(m) => write!(f, "dihedral({m})"),
            GroupType::Klein => f.write_str("klein"),
            GroupType::Other(m) => write!(f, "other({m})"),
        }
    }
}

impl From<GroupType> for String {
    fn from(t: GroupType) -> String {
        t.to_string()
    }
}

/// A group on `0..order` given by its Cayley table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table: closure, a two-sided identity, inverses and
    /// associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 || order > MAX_ORDER {
            return Err(Error::NotAGroup(format!("order {order} is out of range")));
        }
        if table.iter().any(|row| row.len() != order || row.iter().any(|&v| v >= order)) {
            return Err(Error::NotAGroup("table is not square or not closed".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let mut inverse = vec![0; order];
        for x in 0..order {
            inverse[x] = (0..order)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {x} has no inverse")))?;
        }
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::NotAGroup("not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != self.identity {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|x| (0..self.order()).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Identifies the group from element orders and the dihedral relations.
    pub fn identify(&self) -> GroupType {
        let order = self.order();
        if order == 1 {
            return GroupType::Trivial;
        }
        if (0..order).any(|x| self.element_order(x) == order) {
            return GroupType::Cyclic(order);
        }
        if order == 4 {
            return GroupType::Klein;
        }
        if order % 2 == 0 {
            let m = order / 2;
            for r in (0..order).filter(|&r| self.element_order(r) == m) {
                let rot = self.closure(1u64 << r);
                let flips_invert = (0..order)
                    .filter(|&s| rot & (1u64 << s) == 0)
                    .all(|s| {
                        self.element_order(s) == 2
                            && self.mul(self.mul(s, r), s) == self.inv(r)
                    });
                if flips_invert {
                    return GroupType::Dihedral(order);
                }
            }
        }
        GroupType::Other(order)
    }

    /// Subgroup generated by the elements of `mask`.
    pub fn closure(&self, mask: u64) -> u64 {
        let mut set = mask | (1u64 << self.identity);
        loop {
            let mut next = set;
            for x in bits(set) {
                for y in bits(set) {
                    next |= 1u64 << self.mul(x, y);
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    }

    /// All subgroups as element masks, sorted by size then mask.
    pub fn subgroups(&self) -> Vec<u64> {
        let mut subs: Vec<u64> = (0..self.order()).map(|x| self.closure(1u64 << x)).collect();
        subs.sort_unstable();
        subs.dedup();
        let mut frontier = subs.clone();
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for &a in &frontier {
                for &b in &subs {
                    let c = self.closure(a | b);
                    if !subs.contains(&c) && !fresh.contains(&c) {
                        fresh.push(c);
                    }
                }
            }
            subs.extend(fresh.iter().copied());
            frontier = fresh;
        }
        subs.sort_by_key(|&s| (s.count_ones(), s));
        subs
    }

    pub fn is_normal(&self, sub: u64) -> bool {
        (0..self.order()).all(|g| {
            bits(sub).all(|h| {
                let conj = self.mul(self.mul(g, h), self.inv(g));
                sub & (1u64 << conj) != 0
            })
        })
    }

    pub fn normal_subgroups(&self) -> Vec<u64> {
        self.subgroups()
            .into_iter()
            .filter(|&s| self.is_normal(s))
            .collect()
    }

    /// Coset labels of a normal subgroup: `x` and `y` share a label iff
    /// `x y^-1` lies in the subgroup. Labels are numbered by first occurrence.
    pub fn coset_labels(&self, normal: u64) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.order()];
        let mut next = 0;
        for x in 0..self.order() {
            if label[x] != usize::MAX {
                continue;
            }
            for h in bits(normal) {
                label[self.mul(h, x)] = next;
            }
            next += 1;
        }
        label
    }
}

/// Set bits of a mask, as indices.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(b)
        }
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn cyclic(m: usize) -> FiniteGroup {
        let table = (0..m).map(|x| (0..m).map(|y| (x + y) % m).collect()).collect();
        FiniteGroup::from_table(table).unwrap()
    }

    // element (k, s) encoded as k + m*s, meaning r^k t^s
    pub fn dihedral(m: usize) -> FiniteGroup {
        let enc = |k: usize, s: usize| k % m + m * s;
        let table = (0..2 * m)
            .map(|x| {
                let (k1, s1) = (x % m, x / m);
                (0..2 * m)
                    .map(|y| {
                        let (k2, s2) = (y % m, y / m);
                        if s1 == 0 {
                            enc(k1 + k2, s2)
                        } else {
                            enc(k1 + m - k2, 1 - s2)
                        }
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table).unwrap()
    }

    #[test]
    fn identification() {
        assert_eq!(cyclic(1).identify(), GroupType::Trivial);
        assert_eq!(cyclic(6).identify(), GroupType::Cyclic(6));
        assert_eq!(dihedral(5).identify(), GroupType::Dihedral(10));
        assert_eq!(dihedral(3).identify(), GroupType::Dihedral(6));
        assert_eq!(dihedral(2).identify(), GroupType::Klein);
        assert_eq!(dihedral(4).identify(), GroupType::Dihedral(8));
    }

    #[test]
    fn normal_subgroup_counts_follow_the_classification() {
        for m in 1..=12 {
            let g = cyclic(m);
            assert_eq!(
                Some(g.normal_subgroups().len()),
                g.identify().expected_congruence_count()
            );
        }
        for m in 3..=10 {
            let g = dihedral(m);
            assert_eq!(
                Some(g.normal_subgroups().len()),
                g.identify().expected_congruence_count(),
                "m = {m}"
            );
        }
        assert_eq!(dihedral(2).normal_subgroups().len(), 5);
    }

    #[test]
    fn subgroups_of_s3() {
        let g = dihedral(3);
        assert_eq!(g.subgroups().len(), 6);
        assert_eq!(g.normal_subgroups().len(), 3);
    }

    #[test]
    fn cosets() {
        let g = cyclic(6);
        let sub = g.closure(1 << 2);
        let labels = g.coset_labels(sub);
        assert_eq!(labels, vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteGroup::from_table(vec![]).is_err());
    }
}
