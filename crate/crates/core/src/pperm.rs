//! Injective partial transformations of the chain `1 < 2 < ... < n`.
//!
//! Maps act on the right and compose left to right: `x(ab) = (xa)b`, so
//! `a * b` means "apply `a`, then `b`". Domains and images are kept as
//! bit sets over one machine word (bit `p - 1` stands for point `p`), which
//! makes the domain/image comparisons behind Green's relations O(1).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported chain; one `u32` holds a domain.
pub const MAX_POINTS: usize = 32;

/// Number of points of the chain, `3 <= n <= 32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "usize")]
pub struct ChainSize(u8);

impl ChainSize {
    pub const MIN: usize = 3;
    pub const MAX: usize = MAX_POINTS;

    pub fn new(n: usize) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&n) {
            Ok(ChainSize(n as u8))
        } else {
            Err(Error::ChainSize(n))
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Bit set of all points `1..=n`.
    #[inline]
    pub fn full_mask(self) -> u32 {
        low_mask(self.get())
    }
}

impl TryFrom<usize> for ChainSize {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        ChainSize::new(n)
    }
}

impl From<ChainSize> for usize {
    fn from(n: ChainSize) -> usize {
        n.get()
    }
}

impl fmt::Display for ChainSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Bit set of the points `1..=k`.
#[inline]
pub fn low_mask(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

/// Bit for a single point.
#[inline]
pub fn point_bit(p: usize) -> u32 {
    1u32 << (p - 1)
}

/// Points of a bit set, in increasing order.
pub fn points(mask: u32) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(bit + 1)
        }
    })
}

/// An injective partial map of `{1, ..., n}` into itself.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialPerm {
    n: u8,
    dom: u32,
    img: u32,
    // map[p - 1] is the image of p, or 0 when p is outside the domain.
    map: [u8; MAX_POINTS],
}

impl Hash for PartialPerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u8(self.n);
        state.write_u32(self.dom);
        state.write(&self.map[..self.n as usize]);
    }
}

impl PartialOrd for PartialPerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: chain size, then the point table `(1a, 2a, ..., na)`
/// read lexicographically with undefined points as 0.
impl Ord for PartialPerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.map[..self.n as usize].cmp(&other.map[..other.n as usize]))
    }
}

impl PartialPerm {
    /// The empty map, the zero of the monoid.
    pub fn empty(n: ChainSize) -> Self {
        PartialPerm {
            n: n.get() as u8,
            dom: 0,
            img: 0,
            map: [0; MAX_POINTS],
        }
    }

    pub fn identity(n: ChainSize) -> Self {
        Self::partial_identity(n, n.full_mask())
    }

    /// The partial identity on the points of `mask`.
    pub fn partial_identity(n: ChainSize, mask: u32) -> Self {
        let mask = mask & n.full_mask();
        let mut map = [0u8; MAX_POINTS];
        for p in points(mask) {
            map[p - 1] = p as u8;
        }
        PartialPerm {
            n: n.get() as u8,
            dom: mask,
            img: mask,
            map,
        }
    }

    /// Builds a map from `(point, image)` pairs, validating injectivity and range.
    pub fn from_pairs<I>(n: ChainSize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let size = n.get();
        let mut out = Self::empty(n);
        for (x, y) in pairs {
            if x == 0 || x > size || y == 0 || y > size {
                return Err(Error::InvalidElement(format!(
                    "pair {x}->{y} leaves the chain 1..={size}"
                )));
            }
            if out.dom & point_bit(x) != 0 {
                return Err(Error::InvalidElement(format!("point {x} mapped twice")));
            }
            if out.img & point_bit(y) != 0 {
                return Err(Error::InvalidElement(format!("image {y} hit twice")));
            }
            out.dom |= point_bit(x);
            out.img |= point_bit(y);
            out.map[x - 1] = y as u8;
        }
        Ok(out)
    }

    /// Builds a map from a point table: `table[p - 1]` is the image of `p`, 0 if undefined.
    pub fn from_table(n: ChainSize, table: &[usize]) -> Result<Self> {
        if table.len() != n.get() {
            return Err(Error::InvalidElement(format!(
                "table has {} entries for n = {}",
                table.len(),
                n
            )));
        }
        Self::from_pairs(
            n,
            table
                .iter()
                .enumerate()
                .filter(|(_, &y)| y != 0)
                .map(|(i, &y)| (i + 1, y)),
        )
    }

    /// The unique order-preserving bijection from the points of `from` onto
    /// the points of `to`.
    pub fn monotone_bijection(n: ChainSize, from: u32, to: u32) -> Result<Self> {
        let full = n.full_mask();
        if from & !full != 0 || to & !full != 0 {
            return Err(Error::InvalidElement("set leaves the chain".into()));
        }
        if from.count_ones() != to.count_ones() {
            return Err(Error::InvalidElement(format!(
                "sets of sizes {} and {} are not in bijection",
                from.count_ones(),
                to.count_ones()
            )));
        }
        let mut map = [0u8; MAX_POINTS];
        for (x, y) in points(from).zip(points(to)) {
            map[x - 1] = y as u8;
        }
        Ok(PartialPerm {
            n: n.get() as u8,
            dom: from,
            img: to,
            map,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn chain(&self) -> ChainSize {
        ChainSize(self.n)
    }

    /// Size of the image (equivalently of the domain).
    #[inline]
    pub fn rank(&self) -> usize {
        self.dom.count_ones() as usize
    }

    #[inline]
    pub fn dom_mask(&self) -> u32 {
        self.dom
    }

    #[inline]
    pub fn img_mask(&self) -> u32 {
        self.img
    }

    pub fn domain(&self) -> Vec<usize> {
        points(self.dom).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        points(self.img).collect()
    }

    /// Image of `p`, if `p` is in the domain.
    #[inline]
    pub fn apply(&self, p: usize) -> Option<usize> {
        if p == 0 || p > self.n() {
            return None;
        }
        match self.map[p - 1] {
            0 => None,
            y => Some(y as usize),
        }
    }

    /// `(point, image)` pairs in increasing domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        points(self.dom).map(move |p| (p, self.map[p - 1] as usize))
    }

    /// Images listed in increasing domain order.
    pub fn img_seq(&self) -> Vec<usize> {
        self.pairs().map(|(_, y)| y).collect()
    }

    #[inline]
    pub fn is_total(&self) -> bool {
        self.dom == self.chain().full_mask()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.dom == 0
    }

    /// Idempotents of the symmetric inverse monoid are the partial identities.
    pub fn is_idempotent(&self) -> bool {
        self.dom == self.img && self.pairs().all(|(x, y)| x == y)
    }

    /// Left-to-right composition `self` then `other`.
    pub fn compose(&self, other: &PartialPerm) -> Result<PartialPerm> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &PartialPerm) -> PartialPerm {
        debug_assert_eq!(self.n, other.n);
        let mut out = PartialPerm {
            n: self.n,
            dom: 0,
            img: 0,
            map: [0; MAX_POINTS],
        };
        let mut rest = self.dom;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let y = self.map[x];
            let z = other.map[y as usize - 1];
            if z != 0 {
                out.map[x] = z;
                out.dom |= 1 << x;
                out.img |= 1 << (z - 1);
            }
        }
        out
    }

    pub fn inverse(&self) -> PartialPerm {
        let mut map = [0u8; MAX_POINTS];
        for (x, y) in self.pairs() {
            map[y - 1] = x as u8;
        }
        PartialPerm {
            n: self.n,
            dom: self.img,
            img: self.dom,
            map,
        }
    }

    /// `self` composed with itself `k` times. `k = 0` yields the identity and
    /// is only accepted for total maps.
    pub fn power(&self, k: usize) -> Result<PartialPerm> {
        if k == 0 {
            return if self.is_total() {
                Ok(PartialPerm::identity(self.chain()))
            } else {
                Err(Error::ZeroPowerOfPartial)
            };
        }
        let mut base = self.clone();
        let mut acc: Option<PartialPerm> = None;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.then(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.then(&base);
            }
        }
        Ok(acc.expect("k >= 1"))
    }

    /// Restriction to the points of `mask`.
    pub fn restrict(&self, mask: u32) -> PartialPerm {
        PartialPerm::partial_identity(self.chain(), mask).then(self)
    }

    /// The missing domain point and missing image point of a rank `n - 1` map.
    pub fn gaps(&self) -> Result<Gap> {
        self.expect_rank(self.n() - 1)?;
        let full = self.chain().full_mask();
        let d = (full & !self.dom).trailing_zeros() as usize + 1;
        let i = (full & !self.img).trailing_zeros() as usize + 1;
        Ok(Gap { d, i })
    }

    /// The unique permutation extending a rank `n - 1` map.
    pub fn completion(&self) -> Result<Permutation> {
        let gap = self.gaps()?;
        let mut out = self.clone();
        out.map[gap.d - 1] = gap.i as u8;
        out.dom |= point_bit(gap.d);
        out.img |= point_bit(gap.i);
        Ok(Permutation(out))
    }

    pub(crate) fn expect_rank(&self, expected: usize) -> Result<()> {
        let found = self.rank();
        if found == expected {
            Ok(())
        } else {
            Err(Error::Rank { expected, found })
        }
    }

    /// Parses the text form: `{}` for the empty map, otherwise comma separated
    /// `k->v` pairs.
    pub fn parse(n: ChainSize, text: &str) -> Result<PartialPerm> {
        let lead = text.len() - text.trim_start().len();
        let body = text.trim();
        if body == "{}" {
            return Ok(PartialPerm::empty(n));
        }
        if body.is_empty() {
            return Err(Error::Parse {
                pos: lead,
                msg: "empty literal; use {} for the empty map".into(),
            });
        }
        let size = n.get();
        let mut out = PartialPerm::empty(n);
        let mut offset = lead;
        for piece in body.split(',') {
            let piece_lead = piece.len() - piece.trim_start().len();
            let pos = offset + piece_lead;
            let item = piece.trim();
            let (k, v) = item.split_once("->").ok_or_else(|| Error::Parse {
                pos,
                msg: format!("expected k->v, found {item:?}"),
            })?;
            let parse_point = |s: &str, at: usize| -> Result<usize> {
                let p: usize = s.trim().parse().map_err(|_| Error::Parse {
                    pos: at,
                    msg: format!("{:?} is not a point", s.trim()),
                })?;
                if p == 0 || p > size {
                    return Err(Error::Parse {
                        pos: at,
                        msg: format!("point {p} is outside 1..={size}"),
                    });
                }
                Ok(p)
            };
            let x = parse_point(k, pos)?;
            let y = parse_point(v, pos + k.len() + 2)?;
            if out.dom & point_bit(x) != 0 {
                return Err(Error::Parse {
                    pos,
                    msg: format!("duplicate domain point {x}"),
                });
            }
            if out.img & point_bit(y) != 0 {
                return Err(Error::Parse {
                    pos,
                    msg: format!("duplicate image point {y}"),
                });
            }
            out.dom |= point_bit(x);
            out.img |= point_bit(y);
            out.map[x - 1] = y as u8;
            offset += piece.len() + 1;
        }
        Ok(out)
    }
}

impl Mul for &PartialPerm {
    type Output = PartialPerm;

    /// Left-to-right product. Panics when the chain sizes differ.
    fn mul(self, rhs: &PartialPerm) -> PartialPerm {
        assert_eq!(self.n, rhs.n, "chain sizes differ");
        self.then(rhs)
    }
}

impl fmt::Display for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        for (idx, (x, y)) in self.pairs().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}->{y}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialPerm(n={}, {})", self.n, self)
    }
}

#[derive(Serialize, Deserialize)]
struct PartialPermRepr {
    n: usize,
    dom: Vec<usize>,
    img: Vec<usize>,
}

impl Serialize for PartialPerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartialPermRepr {
            n: self.n(),
            dom: self.domain(),
            img: self.img_seq(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialPerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PartialPermRepr::deserialize(d)?;
        let n = ChainSize::new(repr.n).map_err(D::Error::custom)?;
        if repr.dom.len() != repr.img.len() {
            return Err(D::Error::custom("dom and img lengths differ"));
        }
        if repr.dom.windows(2).any(|w| w[0] >= w[1]) {
            return Err(D::Error::custom("dom must be strictly ascending"));
        }
        PartialPerm::from_pairs(n, repr.dom.into_iter().zip(repr.img)).map_err(D::Error::custom)
    }
}

/// The missing points of a rank `n - 1` element: `d` from the domain, `i` from the image.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Gap {
    pub d: usize,
    pub i: usize,
}

impl Gap {
    pub fn same_parity(self) -> bool {
        self.d % 2 == self.i % 2
    }
}

/// A permutation of the chain; a total `PartialPerm`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(PartialPerm);

impl Permutation {
    pub fn identity(n: ChainSize) -> Self {
        Permutation(PartialPerm::identity(n))
    }

    /// `images[p - 1]` is the image of `p`.
    pub fn from_images(n: ChainSize, images: &[usize]) -> Result<Self> {
        let p = PartialPerm::from_table(n, images)?;
        Permutation::try_from(p)
    }

    /// Product of the given cycles, e.g. `&[&[1, 3, 2]]` for `(1 3 2)`.
    pub fn from_cycles(n: ChainSize, cycles: &[&[usize]]) -> Result<Self> {
        let mut table: Vec<usize> = (1..=n.get()).collect();
        let mut seen = 0u32;
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > n.get() || seen & point_bit(p) != 0 {
                    return Err(Error::InvalidElement(format!("bad cycle point {p}")));
                }
                seen |= point_bit(p);
                table[p - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(n, &table)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.0.apply(p).expect("permutations are total")
    }

    pub fn as_partial(&self) -> &PartialPerm {
        &self.0
    }

    pub fn into_partial(self) -> PartialPerm {
        self.0
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.0.compose(&other.0).map(Permutation)
    }

    pub fn inverse(&self) -> Permutation {
        Permutation(self.0.inverse())
    }

    pub fn power(&self, k: usize) -> Permutation {
        Permutation(self.0.power(k).expect("total maps accept every power"))
    }

    /// Disjoint cycles, fixed points included, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for start in 1..=self.n() {
            if seen & point_bit(start) != 0 {
                continue;
            }
            let mut cycle = vec![start];
            seen |= point_bit(start);
            let mut p = self.apply(start);
            while p != start {
                seen |= point_bit(p);
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }
}

impl TryFrom<PartialPerm> for Permutation {
    type Error = Error;
    fn try_from(p: PartialPerm) -> Result<Self> {
        if p.is_total() {
            Ok(Permutation(p))
        } else {
            Err(Error::Rank {
                expected: p.n(),
                found: p.rank(),
            })
        }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        Permutation(&self.0 * &rhs.0)
    }
}

/// Cycle notation without fixed points; `id` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation(n={}, {})", self.n(), self)
    }
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

    fn cycle_g(k: usize) -> PartialPerm {
        let images: Vec<usize> = (1..=k).map(|p| p % k + 1).collect();
        PartialPerm::from_table(n(k), &images).unwrap()
    }

    #[test]
    fn chain_size_bounds() {
        assert!(ChainSize::new(2).is_err());
        assert!(ChainSize::new(33).is_err());
        assert_eq!(ChainSize::new(32).unwrap().full_mask(), u32::MAX);
        assert_eq!(ChainSize::new(3).unwrap().full_mask(), 0b111);
    }

    #[test]
    fn compose_examples() {
        assert_eq!(&pp(4, "1->2") * &pp(4, "2->3"), pp(4, "1->3"));
        let any = pp(4, "1->4,2->1,3->3");
        assert_eq!(&PartialPerm::empty(n(4)) * &any, PartialPerm::empty(n(4)));
        let g = cycle_g(5);
        assert_eq!(&g * &g.inverse(), PartialPerm::identity(n(5)));
    }

    #[test]
    fn compose_rejects_mismatched_sizes() {
        let err = pp(4, "1->2").compose(&pp(5, "1->2")).unwrap_err();
        assert_eq!(err, Error::SizeMismatch { left: 4, right: 5 });
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(pp(4, "2->4,3->1").inverse(), pp(4, "1->3,4->2"));
        assert_eq!(PartialPerm::empty(n(4)).inverse(), PartialPerm::empty(n(4)));
        let id13 = pp(4, "1->1,3->3");
        assert_eq!(id13.inverse(), id13);
    }

    #[test]
    fn completion_examples() {
        let c = pp(4, "2->1,3->2,4->4").completion().unwrap();
        assert_eq!(c, Permutation::from_cycles(n(4), &[&[1, 3, 2]]).unwrap());
        assert_eq!(
            pp(3, "1->1,2->2").completion().unwrap(),
            Permutation::identity(n(3))
        );
        // g_n at n = 5 completes to the 4-cycle (1 2 3 4).
        let gn = pp(5, "1->2,2->3,3->4,4->1");
        assert_eq!(
            gn.completion().unwrap(),
            Permutation::from_cycles(n(5), &[&[1, 2, 3, 4]]).unwrap()
        );
        assert!(matches!(
            pp(5, "1->2").completion(),
            Err(Error::Rank { expected: 4, found: 1 })
        ));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Permutation::identity(n(5)).sign(), 1);
        let g4 = Permutation::try_from(cycle_g(4)).unwrap();
        assert_eq!(g4.sign(), -1);
        let g5 = Permutation::try_from(cycle_g(5)).unwrap();
        assert_eq!(g5.sign(), 1);
    }

    #[test]
    fn power_examples() {
        let g = cycle_g(5);
        assert_eq!(g.power(5).unwrap(), PartialPerm::identity(n(5)));
        assert_eq!(g.power(0).unwrap(), PartialPerm::identity(n(5)));
        let gn = pp(5, "1->2,2->3,3->4,4->1");
        assert_eq!(gn.power(4).unwrap(), pp(5, "1->1,2->2,3->3,4->4"));
        assert_eq!(gn.power(0), Err(Error::ZeroPowerOfPartial));
        assert_eq!(gn.power(3).unwrap(), gn.inverse());
    }

    #[test]
    fn parse_and_format() {
        let a = pp(4, "2->4,3->1,4->2");
        assert_eq!(a.apply(2), Some(4));
        assert_eq!(a.apply(1), None);
        assert_eq!(a.to_string(), "2->4,3->1,4->2");
        assert_eq!(pp(4, "{}").to_string(), "{}");
        assert_eq!(pp(3, "1->1,2->2,3->3"), PartialPerm::identity(n(3)));
        // Unordered input is normalized to increasing domain order.
        assert_eq!(pp(4, "4->2, 2->4").to_string(), "2->4,4->2");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = PartialPerm::parse(n(4), "1->2,1->3").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 5, .. }), "{e:?}");
        let e = PartialPerm::parse(n(4), "1->2,3->2").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 5, .. }), "{e:?}");
        let e = PartialPerm::parse(n(4), "1->5").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 3, .. }), "{e:?}");
        assert!(PartialPerm::parse(n(4), "").is_err());
        assert!(PartialPerm::parse(n(4), "1-2").is_err());
    }

    #[test]
    fn json_form() {
        let a = pp(5, "2->4,3->1");
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"n":5,"dom":[2,3],"img":[4,1]}"#);
        let back: PartialPerm = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<PartialPerm>(r#"{"n":5,"dom":[3,2],"img":[4,1]}"#).is_err());
        assert!(serde_json::from_str::<PartialPerm>(r#"{"n":5,"dom":[2,3],"img":[4,4]}"#).is_err());
    }

    #[test]
    fn monotone_bijection_is_unique_order_preserving() {
        let a = PartialPerm::monotone_bijection(n(5), 0b11110, 0b01111).unwrap();
        assert_eq!(a, pp(5, "2->1,3->2,4->3,5->4"));
        assert!(PartialPerm::monotone_bijection(n(5), 0b11, 0b1).is_err());
    }

    #[test]
    fn gaps_of_rank_n_minus_one() {
        let g = pp(5, "1->2,2->3,3->4,4->1").gaps().unwrap();
        assert_eq!(g, Gap { d: 5, i: 5 });
    }
}
