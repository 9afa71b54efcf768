//! Order and orientation predicates, membership tests and unit groups.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pperm::{low_mask, ChainSize, PartialPerm, Permutation};

/// The monoids handled by the toolkit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonoidKind {
    /// All partial permutations.
    #[serde(rename = "in")]
    In,
    /// Restrictions of even permutations.
    #[serde(rename = "ai")]
    AIn,
    /// Order-preserving partial permutations.
    #[serde(rename = "poi")]
    POIn,
    /// Order-preserving alternating partial permutations.
    #[serde(rename = "ao")]
    AOn,
    /// Orientation-preserving partial permutations.
    #[serde(rename = "popi")]
    POPIn,
    /// Oriented partial permutations.
    #[serde(rename = "pori")]
    PORIn,
    /// Orientation-preserving alternating partial permutations.
    #[serde(rename = "aop")]
    AOPn,
    /// Oriented alternating partial permutations.
    #[serde(rename = "aor")]
    AORn,
}

impl MonoidKind {
    pub const ALL: [MonoidKind; 8] = [
        MonoidKind::In,
        MonoidKind::AIn,
        MonoidKind::POIn,
        MonoidKind::AOn,
        MonoidKind::POPIn,
        MonoidKind::PORIn,
        MonoidKind::AOPn,
        MonoidKind::AORn,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            MonoidKind::In => "in",
            MonoidKind::AIn => "ai",
            MonoidKind::POIn => "poi",
            MonoidKind::AOn => "ao",
            MonoidKind::POPIn => "popi",
            MonoidKind::PORIn => "pori",
            MonoidKind::AOPn => "aop",
            MonoidKind::AORn => "aor",
        }
    }

    /// Display name such as `AOP_5`.
    pub fn name(self, n: usize) -> String {
        let stem = match self {
            MonoidKind::In => "I",
            MonoidKind::AIn => "AI",
            MonoidKind::POIn => "POI",
            MonoidKind::AOn => "AO",
            MonoidKind::POPIn => "POPI",
            MonoidKind::PORIn => "PORI",
            MonoidKind::AOPn => "AOP",
            MonoidKind::AORn => "AOR",
        };
        format!("{stem}_{n}")
    }

    /// Whether every element lies in the alternating monoid.
    pub fn is_alternating(self) -> bool {
        matches!(
            self,
            MonoidKind::AIn | MonoidKind::AOn | MonoidKind::AOPn | MonoidKind::AORn
        )
    }
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for MonoidKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MonoidKind::ALL
            .into_iter()
            .find(|k| k.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parameter(format!("unknown monoid kind {s:?}")))
    }
}

/// Order and orientation flags of one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrientFlags {
    pub order_preserving: bool,
    pub order_reversing: bool,
    pub orientation_preserving: bool,
    pub orientation_reversing: bool,
}

impl OrientFlags {
    pub fn oriented(self) -> bool {
        self.orientation_preserving || self.orientation_reversing
    }

    /// Orientation-reversing but not orientation-preserving.
    pub fn strictly_reversing(self) -> bool {
        self.orientation_reversing && !self.orientation_preserving
    }
}

/// Counts descents and ascents of the image sequence, read over the
/// increasing domain. Sequences of length at most one have no pairs at all.
pub fn orient_flags(a: &PartialPerm) -> OrientFlags {
    let seq = a.img_seq();
    let t = seq.len();
    let (mut desc, mut asc) = (0usize, 0usize);
    for w in seq.windows(2) {
        if w[0] > w[1] {
            desc += 1;
        } else {
            asc += 1;
        }
    }
    let (mut cdesc, mut casc) = (desc, asc);
    if t >= 2 {
        if seq[t - 1] > seq[0] {
            cdesc += 1;
        } else {
            casc += 1;
        }
    }
    OrientFlags {
        order_preserving: desc == 0,
        order_reversing: asc == 0,
        orientation_preserving: cdesc <= 1,
        orientation_reversing: casc <= 1,
    }
}

/// Whether `a` is the restriction of an even permutation.
pub fn is_alternating(a: &PartialPerm) -> bool {
    let n = a.n();
    match a.rank() {
        r if r + 2 <= n => true,
        r if r + 1 == n => a.completion().expect("rank n-1").is_even(),
        _ => Permutation::try_from(a.clone())
            .expect("total")
            .is_even(),
    }
}

/// Definition-level membership test, used as ground truth.
pub fn member_oracle(a: &PartialPerm, kind: MonoidKind) -> bool {
    let flags = || orient_flags(a);
    match kind {
        MonoidKind::In => true,
        MonoidKind::AIn => is_alternating(a),
        MonoidKind::POIn => flags().order_preserving,
        MonoidKind::AOn => flags().order_preserving && is_alternating(a),
        MonoidKind::POPIn => flags().orientation_preserving,
        MonoidKind::PORIn => flags().oriented(),
        MonoidKind::AOPn => flags().orientation_preserving && is_alternating(a),
        MonoidKind::AORn => flags().oriented() && is_alternating(a),
    }
}

/// The order-preserving flanks of a rank `n - 1` element: `a_L` maps
/// `{1..n-1}` onto the domain, `a_R` maps the image onto `{1..n-1}`.
pub fn flank_maps(a: &PartialPerm) -> Result<(PartialPerm, PartialPerm)> {
    let n = a.chain();
    a.expect_rank(n.get() - 1)?;
    let base = low_mask(n.get() - 1);
    let left = PartialPerm::monotone_bijection(n, base, a.dom_mask())?;
    let right = PartialPerm::monotone_bijection(n, a.img_mask(), base)?;
    Ok((left, right))
}

/// `a_L a a_R`, a map with domain and image `{1..n-1}`.
pub fn hat(a: &PartialPerm) -> Result<PartialPerm> {
    let (left, right) = flank_maps(a)?;
    Ok(&(&left * a) * &right)
}

fn one_hat_is_odd(a: &PartialPerm) -> bool {
    let h = hat(a).expect("caller checked the rank");
    h.apply(1).expect("1 is in the domain of the hat") % 2 == 1
}

/// Membership via the structural characterizations. Only the two
/// alternating oriented kinds have one; other kinds are rejected.
pub fn member_fast(a: &PartialPerm, kind: MonoidKind) -> Result<bool> {
    let flags = orient_flags(a);
    match kind {
        MonoidKind::AOPn => Ok(flags.orientation_preserving && aop_branch(a)),
        MonoidKind::AORn => {
            if flags.orientation_preserving {
                Ok(aop_branch(a))
            } else if flags.orientation_reversing {
                Ok(reversing_branch(a))
            } else {
                Ok(false)
            }
        }
        other => Err(Error::Unsupported(format!(
            "no fast membership test for {other}"
        ))),
    }
}

/// Membership by the fastest available method.
pub fn member(a: &PartialPerm, kind: MonoidKind) -> bool {
    match kind {
        MonoidKind::AOPn | MonoidKind::AORn => member_fast(a, kind).expect("supported kind"),
        _ => member_oracle(a, kind),
    }
}

// `a` is orientation-preserving.
fn aop_branch(a: &PartialPerm) -> bool {
    let n = a.n();
    let r = a.rank();
    if r + 2 <= n {
        return true;
    }
    if r == n {
        // a = g^k with k = 1a - 1
        let k = a.apply(1).expect("total") - 1;
        return n % 2 == 1 || k % 2 == 0;
    }
    let same = a.gaps().expect("rank n-1").same_parity();
    if n % 2 == 0 {
        same
    } else {
        same == one_hat_is_odd(a)
    }
}

// `a` is orientation-reversing and not orientation-preserving.
fn reversing_branch(a: &PartialPerm) -> bool {
    let n = a.n();
    let r = a.rank();
    if r + 2 <= n {
        return true;
    }
    if r == n {
        // a = h g^k with k = 1a mod n
        let k = a.apply(1).expect("total") % n;
        return match n % 4 {
            0 => k % 2 == 0,
            1 => true,
            2 => k % 2 == 1,
            _ => false,
        };
    }
    let same = a.gaps().expect("rank n-1").same_parity();
    match n % 4 {
        0 => !same,
        1 => same != one_hat_is_odd(a),
        2 => same,
        _ => same == one_hat_is_odd(a),
    }
}

/// The cyclic rotation `g^k`: `i -> i + k` modulo `n`.
pub fn rotation(n: ChainSize, k: usize) -> Permutation {
    let size = n.get();
    let images: Vec<usize> = (0..size).map(|p| (p + k) % size + 1).collect();
    Permutation::from_images(n, &images).expect("rotation is a bijection")
}

/// The reversal `h`: `i -> n + 1 - i`.
pub fn reversal(n: ChainSize) -> Permutation {
    let size = n.get();
    let images: Vec<usize> = (1..=size).map(|p| size + 1 - p).collect();
    Permutation::from_images(n, &images).expect("reversal is a bijection")
}

/// The group of units of a kind, listed as rotations first, then
/// reflections `h g^k`, each in increasing `k`.
pub fn unit_group(kind: MonoidKind, n: ChainSize) -> Result<Vec<Permutation>> {
    let size = n.get();
    let rot = |k: usize| rotation(n, k);
    let refl = |k: usize| &reversal(n) * &rotation(n, k);
    let out: Vec<Permutation> = match kind {
        MonoidKind::POIn | MonoidKind::AOn => vec![Permutation::identity(n)],
        MonoidKind::POPIn => (0..size).map(rot).collect(),
        MonoidKind::PORIn => (0..size).map(rot).chain((0..size).map(refl)).collect(),
        MonoidKind::AOPn => {
            if size % 2 == 1 {
                (0..size).map(rot).collect()
            } else {
                (0..size).step_by(2).map(rot).collect()
            }
        }
        MonoidKind::AORn => match size % 4 {
            0 => (0..size)
                .step_by(2)
                .map(rot)
                .chain((0..size).step_by(2).map(refl))
                .collect(),
            1 => (0..size).map(rot).chain((0..size).map(refl)).collect(),
            2 => (0..size)
                .step_by(2)
                .map(rot)
                .chain((1..size).step_by(2).map(refl))
                .collect(),
            _ => (0..size).map(rot).collect(),
        },
        MonoidKind::In | MonoidKind::AIn => {
            return Err(Error::Unsupported(format!(
                "unit group of {kind} is a full symmetric or alternating group"
            )))
        }
    };
    Ok(out)
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
    fn flag_examples() {
        let f = orient_flags(&pp(5, "1->2,3->5,4->1"));
        assert!(f.orientation_preserving);
        let f = orient_flags(&pp(4, "1->1,2->2,3->3"));
        assert!(f.order_preserving && f.orientation_preserving);
        assert!(!f.order_reversing && !f.orientation_reversing);
        for s in ["1->3,4->2", "2->1,3->4"] {
            let f = orient_flags(&pp(4, s));
            assert!(f.orientation_preserving && f.orientation_reversing);
        }
        let f = orient_flags(&pp(4, "{}"));
        assert!(f.order_preserving && f.order_reversing);
    }

    #[test]
    fn oracle_examples() {
        assert!(member_oracle(&pp(4, "2->1,3->2,4->4"), MonoidKind::AOPn));
        assert!(!member_oracle(&pp(5, "2->1,3->3,4->4,5->5"), MonoidKind::AOPn));
    }

    #[test]
    fn flank_examples() {
        let (l, _) = flank_maps(&pp(5, "2->1,3->3,4->4,5->5")).unwrap();
        assert_eq!(l, pp(5, "1->2,2->3,3->4,4->5"));
        let (_, r) = flank_maps(&pp(5, "1->1,2->3,3->4,4->5")).unwrap();
        assert_eq!(r, pp(5, "1->1,3->2,4->3,5->4"));
        let (l, r) = flank_maps(&pp(4, "1->2,2->3,3->1")).unwrap();
        assert_eq!(l, pp(4, "1->1,2->2,3->3"));
        assert_eq!(r, l);
        assert!(flank_maps(&pp(4, "1->1")).is_err());
    }

    #[test]
    fn hat_examples() {
        let h = hat(&pp(5, "2->2,3->3,4->4,5->5")).unwrap();
        assert_eq!(h, pp(5, "1->1,2->2,3->3,4->4"));
        let a = pp(5, "2->1,3->3,4->4,5->5");
        assert_eq!(hat(&a).unwrap().apply(1), Some(1));
        assert!(!member_fast(&a, MonoidKind::AOPn).unwrap());
        let gn = pp(5, "1->2,2->3,3->4,4->1");
        assert_eq!(hat(&gn).unwrap(), gn);
    }

    #[test]
    fn fast_examples() {
        // d = 1, i = 3
        assert!(member_fast(&pp(4, "2->1,3->2,4->4"), MonoidKind::AOPn).unwrap());
        // reversing rank 3 with d = i = 1
        let a = pp(4, "2->4,3->3,4->2");
        assert!(orient_flags(&a).strictly_reversing());
        assert!(!member_fast(&a, MonoidKind::AORn).unwrap());
        assert!(member_fast(&pp(5, "2->2,3->3,4->4,5->5"), MonoidKind::AOPn).unwrap());
        assert!(member_fast(&pp(4, "1->1"), MonoidKind::In).is_err());
    }

    #[test]
    fn unit_group_sizes() {
        assert_eq!(unit_group(MonoidKind::AOPn, n(4)).unwrap().len(), 2);
        assert_eq!(unit_group(MonoidKind::AORn, n(4)).unwrap().len(), 4);
        assert_eq!(unit_group(MonoidKind::AORn, n(5)).unwrap().len(), 10);
        assert_eq!(unit_group(MonoidKind::AORn, n(6)).unwrap().len(), 6);
        assert_eq!(unit_group(MonoidKind::AORn, n(7)).unwrap().len(), 7);
        assert_eq!(unit_group(MonoidKind::AOPn, n(7)).unwrap().len(), 7);
    }

    #[test]
    fn unit_groups_are_the_even_units() {
        for size in 3..=9 {
            let pori = unit_group(MonoidKind::PORIn, n(size)).unwrap();
            for kind in [MonoidKind::AOPn, MonoidKind::AORn] {
                let mut expect: Vec<_> = pori
                    .iter()
                    .filter(|p| member_oracle(p.as_partial(), kind))
                    .cloned()
                    .collect();
                let mut got = unit_group(kind, n(size)).unwrap();
                expect.sort();
                got.sort();
                assert_eq!(got, expect, "{kind} n={size}");
            }
        }
    }

    #[test]
    fn kind_tags_round_trip() {
        for k in MonoidKind::ALL {
            assert_eq!(k.tag().parse::<MonoidKind>().unwrap(), k);
            let js = serde_json::to_string(&k).unwrap();
            assert_eq!(js, format!("\"{}\"", k.tag()));
        }
        assert!("xyz".parse::<MonoidKind>().is_err());
    }
}
