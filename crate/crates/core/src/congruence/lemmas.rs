//! Exhaustive checks of the small separation facts used when pinning down
//! congruences: H-classes of PORI, the dihedral group and rotations of a
//! point-deleted chain.

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::classify::{reversal, rotation, MonoidKind};
use crate::engine::elements_of_rank;
use crate::error::{Error, Result};
use crate::pperm::{point_bit, points, ChainSize, PartialPerm};

/// Number of cases looked at and the ones that broke the claim.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn without_endpoint(a: &PartialPerm, max: bool) -> u32 {
    let dom = a.dom_mask();
    let p = if max {
        31 - dom.leading_zeros()
    } else {
        dom.trailing_zeros()
    };
    dom & !(1 << p)
}

/// Distinct H-related elements of PORI of rank at least 2 are told apart by
/// the images of the restrictions dropping the least or the greatest point
/// of the domain.
pub fn lemma_pori(n: ChainSize) -> LemmaReport {
    let mut rep = LemmaReport::default();
    for k in 2..=n.get() {
        let mut by_h: FxHashMap<(u32, u32), Vec<PartialPerm>> = FxHashMap::default();
        for a in elements_of_rank(MonoidKind::PORIn, n, k) {
            by_h.entry((a.dom_mask(), a.img_mask())).or_default().push(a);
        }
        for class in by_h.values() {
            for (i, a) in class.iter().enumerate() {
                let lo = without_endpoint(a, false);
                let hi = without_endpoint(a, true);
                for b in &class[i + 1..] {
                    rep.checked += 1;
                    let same_lo = a.restrict(lo).img_mask() == b.restrict(lo).img_mask();
                    let same_hi = a.restrict(hi).img_mask() == b.restrict(hi).img_mask();
                    if same_lo && same_hi {
                        rep.counterexamples.push(format!("{a} and {b}"));
                    }
                }
            }
        }
    }
    rep
}

/// Every non-identity symmetry of the n-gon moves one of the sets
/// Ω∖{1}, Ω∖{3} and one of Ω∖{2}, Ω∖{n}. Needs n ≥ 5.
pub fn lemma_d2n(n: ChainSize) -> Result<LemmaReport> {
    let size = n.get();
    if size < 5 {
        return Err(Error::Parameter(format!("needs n >= 5, got {size}")));
    }
    let full = n.full_mask();
    let h = reversal(n);
    let mut rep = LemmaReport::default();
    for k in 0..size {
        let r = rotation(n, k);
        for sigma in [r.clone(), h.compose(&r).expect("same chain")] {
            if sigma.as_partial().is_idempotent() {
                continue;
            }
            rep.checked += 1;
            let fixes = |i: usize| {
                let x = full & !point_bit(i);
                sigma.as_partial().restrict(x).img_mask() == x
            };
            if fixes(1) && fixes(3) {
                rep.counterexamples.push(format!("{sigma} fixes both Ω∖{{1}} and Ω∖{{3}}"));
            }
            if fixes(2) && fixes(size) {
                rep.counterexamples.push(format!("{sigma} fixes both Ω∖{{2}} and Ω∖{{{size}}}"));
            }
        }
    }
    Ok(rep)
}

/// Rotating Ω∖{i} by k steps returns Ω∖{i} only for k = 0. Works on raw
/// masks so that n = 2 is covered.
pub fn eq_gn(n: usize) -> Result<LemmaReport> {
    if !(2..=crate::pperm::MAX_POINTS).contains(&n) {
        return Err(Error::Parameter(format!("needs 2 <= n <= 32, got {n}")));
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut rep = LemmaReport::default();
    for i in 1..=n {
        let x = full & !point_bit(i);
        for k in 0..n {
            rep.checked += 1;
            let image = points(x).fold(0u32, |acc, p| acc | point_bit((p - 1 + k) % n + 1));
            if (image == x) != (k == 0) {
                rep.counterexamples.push(format!("i={i} k={k}"));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pori_separation() {
        for n in 4..=6 {
            let rep = lemma_pori(ChainSize::new(n).unwrap());
            assert!(rep.passed(), "{:?}", rep.counterexamples);
            assert!(rep.checked > 0);
        }
    }

    #[test]
    fn dihedral_separation() {
        for n in 5..=8 {
            let rep = lemma_d2n(ChainSize::new(n).unwrap()).unwrap();
            assert!(rep.passed(), "{:?}", rep.counterexamples);
            assert_eq!(rep.checked, 2 * n - 1);
        }
        assert!(lemma_d2n(ChainSize::new(4).unwrap()).is_err());
    }

    #[test]
    fn dihedral_separation_fails_at_four() {
        // h·g fixes 1 and maps 3 to n−1 = 3 when n = 4, so the bound is sharp
        let n = ChainSize::new(4).unwrap();
        let hg = reversal(n).compose(&rotation(n, 1)).unwrap();
        let x1 = n.full_mask() & !point_bit(1);
        let x3 = n.full_mask() & !point_bit(3);
        assert_eq!(hg.as_partial().restrict(x1).img_mask(), x1);
        assert_eq!(hg.as_partial().restrict(x3).img_mask(), x3);
    }

    #[test]
    fn rotations_of_deleted_chain() {
        for n in 2..=8 {
            let rep = eq_gn(n).unwrap();
            assert!(rep.passed(), "{:?}", rep.counterexamples);
            assert_eq!(rep.checked, n * n);
        }
        assert!(eq_gn(1).is_err());
    }
}
