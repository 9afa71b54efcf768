//! Materialized monoids: generator closure, filtered enumeration, ideals,
//! closed-form cardinalities and the rotation factorization.

use std::io::Write;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use rand::Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::classify::{self, orient_flags, rotation, MonoidKind};
use crate::error::{Error, Result};
use crate::green::GreenStructure;
use crate::pperm::{points, ChainSize, PartialPerm};

/// Index of an element inside a [`MonoidSet`].
pub type ElementId = usize;

/// Largest chain enumerated without an explicit override.
pub const ENUMERATION_CAP: usize = 8;

/// Where the elements of a [`MonoidSet`] came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Kind(MonoidKind),
    Generators(Vec<PartialPerm>),
}

#[derive(Debug)]
struct GenData {
    generators: Vec<ElementId>,
    // right[j][x] = x * gen_j, left[j][x] = gen_j * x
    right: Vec<Vec<ElementId>>,
    left: Vec<Vec<ElementId>>,
}

/// A finite monoid of partial permutations with stable element ids.
#[derive(Debug)]
pub struct MonoidSet {
    n: ChainSize,
    source: Source,
    elements: Vec<PartialPerm>,
    index: FxHashMap<PartialPerm, ElementId>,
    identity: ElementId,
    gens: OnceLock<GenData>,
}

impl MonoidSet {
    fn from_elements(n: ChainSize, source: Source, elements: Vec<PartialPerm>) -> Result<Self> {
        let index: FxHashMap<PartialPerm, ElementId> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        if index.len() != elements.len() {
            return Err(Error::InvalidElement("duplicate elements".into()));
        }
        let identity = *index
            .get(&PartialPerm::identity(n))
            .ok_or_else(|| Error::NotClosed("identity is missing".into()))?;
        Ok(MonoidSet {
            n,
            source,
            elements,
            index,
            identity,
            gens: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n.get()
    }

    pub fn chain(&self) -> ChainSize {
        self.n
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn kind(&self) -> Option<MonoidKind> {
        match self.source {
            Source::Kind(k) => Some(k),
            Source::Generators(_) => None,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PartialPerm] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &PartialPerm {
        &self.elements[id]
    }

    pub fn id_of(&self, a: &PartialPerm) -> Option<ElementId> {
        self.index.get(a).copied()
    }

    pub fn contains(&self, a: &PartialPerm) -> bool {
        self.index.contains_key(a)
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    /// Id of the empty map, when present.
    pub fn zero(&self) -> Option<ElementId> {
        self.id_of(&PartialPerm::empty(self.n))
    }

    /// Product of two elements. Panics if the product leaves the set, which
    /// cannot happen for a verified monoid.
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        let p = &self.elements[x] * &self.elements[y];
        self.index[&p]
    }

    pub fn inverse_of(&self, x: ElementId) -> Option<ElementId> {
        self.id_of(&self.elements[x].inverse())
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.elements.par_iter().all(|e| self.contains(&e.inverse()))
    }

    fn gen_data(&self) -> &GenData {
        self.gens.get_or_init(|| {
            let generators = greedy_generators(self).expect("verified monoid");
            build_tables(self, generators)
        })
    }

    /// A generating set. For sets built from generators these are the
    /// given generators; for enumerated sets a greedy choice that scans
    /// elements by decreasing rank.
    pub fn generators(&self) -> &[ElementId] {
        &self.gen_data().generators
    }

    /// `x * generators()[j]`.
    #[inline]
    pub fn right_mul(&self, x: ElementId, j: usize) -> ElementId {
        self.gen_data().right[j][x]
    }

    /// `generators()[j] * x`.
    #[inline]
    pub fn left_mul(&self, j: usize, x: ElementId) -> ElementId {
        self.gen_data().left[j][x]
    }

    pub fn right_table(&self, j: usize) -> &[ElementId] {
        &self.gen_data().right[j]
    }

    pub fn left_table(&self, j: usize) -> &[ElementId] {
        &self.gen_data().left[j]
    }

    /// Ids sorted by rank.
    pub fn ids_of_rank(&self, rank: usize) -> Vec<ElementId> {
        (0..self.len())
            .filter(|&i| self.elements[i].rank() == rank)
            .collect()
    }

    /// Writes the JSON-lines export: a header object, then one element per line.
    pub fn write_jsonl<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        #[derive(Serialize)]
        struct Header<'a> {
            kind: &'a str,
            n: usize,
            count: usize,
        }
        let kind = match &self.source {
            Source::Kind(k) => k.tag(),
            Source::Generators(_) => "generated",
        };
        serde_json::to_writer(
            &mut *out,
            &Header {
                kind,
                n: self.n(),
                count: self.len(),
            },
        )?;
        writeln!(out)?;
        for e in &self.elements {
            serde_json::to_writer(&mut *out, e)?;
            writeln!(out)?;
        }
        Ok(())
    }
}

fn build_tables(m: &MonoidSet, generators: Vec<ElementId>) -> GenData {
    let table = |left: bool| -> Vec<Vec<ElementId>> {
        generators
            .iter()
            .map(|&g| {
                let ge = &m.elements[g];
                m.elements
                    .par_iter()
                    .map(|x| {
                        let p = if left { ge * x } else { x * ge };
                        m.index[&p]
                    })
                    .collect()
            })
            .collect()
    };
    let right = table(false);
    let left = table(true);
    GenData {
        generators,
        right,
        left,
    }
}

// Scans elements by decreasing rank and adds any element not yet generated.
// Fails when a product leaves the set.
fn greedy_generators(m: &MonoidSet) -> Result<Vec<ElementId>> {
    let mut order: Vec<ElementId> = (0..m.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(m.elements[i].rank()));
    let mut reached = vec![false; m.len()];
    reached[m.identity] = true;
    let mut reached_list = vec![m.identity];
    let mut gens: Vec<ElementId> = Vec::new();
    let lookup = |p: PartialPerm| -> Result<ElementId> {
        m.index
            .get(&p)
            .copied()
            .ok_or_else(|| Error::NotClosed(format!("product {p} is missing")))
    };
    for &c in &order {
        if reached[c] {
            continue;
        }
        gens.push(c);
        let ce = m.elements[c].clone();
        let mut stack = Vec::new();
        for &x in &reached_list {
            let y = lookup(&m.elements[x] * &ce)?;
            if !reached[y] {
                reached[y] = true;
                stack.push(y);
            }
        }
        while let Some(y) = stack.pop() {
            reached_list.push(y);
            for &g in &gens {
                let z = lookup(&m.elements[y] * &m.elements[g])?;
                if !reached[z] {
                    reached[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    Ok(gens)
}

/// The submonoid generated by `generators`. Elements are ordered by
/// breadth-first layer (word length), then canonically within a layer.
pub fn closure(n: ChainSize, generators: &[PartialPerm]) -> Result<MonoidSet> {
    for g in generators {
        if g.chain() != n {
            return Err(Error::SizeMismatch {
                left: n.get(),
                right: g.n(),
            });
        }
    }
    let id = PartialPerm::identity(n);
    let mut seen: FxHashMap<PartialPerm, ()> = FxHashMap::default();
    seen.insert(id.clone(), ());
    let mut elements = vec![id];
    let mut start = 0;
    loop {
        let end = elements.len();
        let mut layer: Vec<PartialPerm> = Vec::new();
        for x in start..end {
            for g in generators {
                let p = &elements[x] * g;
                if !seen.contains_key(&p) {
                    seen.insert(p.clone(), ());
                    layer.push(p);
                }
            }
        }
        if layer.is_empty() {
            break;
        }
        layer.sort();
        elements.extend(layer);
        start = end;
    }
    let m = MonoidSet::from_elements(n, Source::Generators(generators.to_vec()), elements)?;
    let ids: Vec<ElementId> = generators.iter().map(|g| m.index[g]).collect();
    let data = build_tables(&m, ids);
    m.gens.set(data).expect("fresh set");
    Ok(m)
}

/// All members of `kind` on the chain of size `n`, in canonical order.
pub fn enumerate(kind: MonoidKind, n: ChainSize) -> Result<MonoidSet> {
    enumerate_with_cap(kind, n, ENUMERATION_CAP)
}

/// As [`enumerate`], with an explicit chain-size cap.
pub fn enumerate_with_cap(kind: MonoidKind, n: ChainSize, cap: usize) -> Result<MonoidSet> {
    if n.get() > cap {
        return Err(Error::Resource(format!(
            "enumeration of n = {n} exceeds the cap {cap}"
        )));
    }
    let mut elements: Vec<PartialPerm> = (0..=n.get())
        .into_par_iter()
        .flat_map_iter(|r| elements_of_rank(kind, n, r))
        .collect();
    elements.par_sort_unstable();
    let m = MonoidSet::from_elements(n, Source::Kind(kind), elements)?;
    if !m.is_inverse_closed() {
        return Err(Error::NotClosed(format!("{kind} is not inverse-closed")));
    }
    Ok(m)
}

/// Members of `kind` with image size `rank`, in canonical order. Every
/// injective map of that rank is generated and filtered.
pub fn elements_of_rank(kind: MonoidKind, n: ChainSize, rank: usize) -> Vec<PartialPerm> {
    let full = n.full_mask();
    let subsets: Vec<u32> = (0..=full)
        .filter(|m| m.count_ones() as usize == rank)
        .collect();
    let mut out: Vec<PartialPerm> = subsets
        .par_iter()
        .flat_map_iter(|&dom| {
            let mut found = Vec::new();
            let dom_pts: Vec<usize> = points(dom).collect();
            for &img in &subsets {
                let img_pts: Vec<usize> = points(img).collect();
                for_each_bijection(n, &dom_pts, &img_pts, |a| {
                    if classify::member(a, kind) {
                        found.push(a.clone());
                    }
                });
            }
            found
        })
        .collect();
    out.par_sort_unstable();
    out
}

fn for_each_bijection<F: FnMut(&PartialPerm)>(
    n: ChainSize,
    dom: &[usize],
    img: &[usize],
    mut visit: F,
) {
    let mut perm: Vec<usize> = img.to_vec();
    let k = perm.len();
    // Heap's algorithm
    let mut c = vec![0usize; k];
    let emit = |perm: &[usize], visit: &mut F| {
        let a = PartialPerm::from_pairs(n, dom.iter().copied().zip(perm.iter().copied()))
            .expect("bijection between subsets");
        visit(&a);
    };
    emit(&perm, &mut visit);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            emit(&perm, &mut visit);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// A uniformly random injective partial map of the given rank.
pub fn random_partial_perm<R: Rng + ?Sized>(n: ChainSize, rank: usize, rng: &mut R) -> PartialPerm {
    let size = n.get();
    let dom = rand::seq::index::sample(rng, size, rank);
    let img = rand::seq::index::sample(rng, size, rank);
    PartialPerm::from_pairs(n, dom.iter().zip(img.iter()).map(|(x, y)| (x + 1, y + 1)))
        .expect("distinct points")
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// Closed-form size of a monoid.
pub fn cardinality_formula(kind: MonoidKind, n: ChainSize) -> Result<BigUint> {
    let size = n.get() as u64;
    let nb = BigInt::from(size);
    let c2n = BigInt::from(binomial(2 * size, size));
    let one = BigInt::from(1);
    let value: BigInt = match kind {
        MonoidKind::In => (0..=size)
            .map(|k| BigInt::from(binomial(size, k).pow(2) * factorial(k)))
            .sum(),
        MonoidKind::AIn => {
            let fact = BigInt::from(factorial(size));
            let low: BigInt = (0..=size - 2)
                .map(|k| BigInt::from(binomial(size, k).pow(2) * factorial(k)))
                .sum();
            &fact / 2 + &fact * &nb / 2 + low
        }
        MonoidKind::POPIn => &one + &nb * &c2n / 2,
        MonoidKind::PORIn => {
            &one + &nb * &c2n - &nb * &nb * (&nb * &nb - 2 * &nb + 3) / 2
        }
        MonoidKind::AOPn => {
            let base = &nb * &c2n / 2 + &one;
            if size % 2 == 1 {
                base - &nb * &nb * (&nb - 1) / 2
            } else {
                base - (&nb * &nb * (&nb - 1) + &nb) / 2
            }
        }
        MonoidKind::AORn => {
            if size == 3 {
                // the two monoids coincide for n = 3
                return cardinality_formula(MonoidKind::AOPn, n);
            }
            let base = &one + &nb * &c2n - &nb * &nb * (&nb * &nb + 1) / 2;
            if size % 4 == 1 {
                base
            } else {
                base - &nb
            }
        }
        MonoidKind::POIn | MonoidKind::AOn => {
            return Err(Error::Unsupported(format!(
                "no closed-form cardinality is provided for {kind}"
            )))
        }
    };
    Ok(value.to_biguint().expect("cardinalities are positive"))
}

/// Closed-form number of elements of image size `k`.
pub fn level_size_formula(kind: MonoidKind, n: ChainSize, k: usize) -> Result<BigUint> {
    let size = n.get() as u64;
    let k64 = k as u64;
    if k > n.get() {
        return Err(Error::Parameter(format!("rank {k} exceeds n = {n}")));
    }
    let sq = binomial(size, k64).pow(2);
    let popi = |k: u64| -> BigUint {
        if k == 0 {
            BigUint::from(1u32)
        } else {
            &sq * k
        }
    };
    let pori = |k: u64| -> BigUint {
        match k {
            0 => BigUint::from(1u32),
            1 => sq.clone(),
            2 => &sq * 2u32,
            _ => &sq * (2 * k),
        }
    };
    let v = match kind {
        MonoidKind::In => sq * factorial(k64),
        MonoidKind::POPIn => popi(k64),
        MonoidKind::PORIn => pori(k64),
        MonoidKind::AOPn | MonoidKind::AORn if k + 2 <= n.get() => {
            if kind == MonoidKind::AOPn {
                popi(k64)
            } else {
                pori(k64)
            }
        }
        MonoidKind::AOPn | MonoidKind::AORn if k + 1 == n.get() => {
            let base = BigUint::from(size * size * (size - 1));
            if kind == MonoidKind::AOPn || size == 3 {
                base / 2u32
            } else {
                base
            }
        }
        MonoidKind::AOPn | MonoidKind::AORn => {
            BigUint::from(classify::unit_group(kind, n)?.len())
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no closed-form level sizes are provided for {kind}"
            )))
        }
    };
    Ok(v)
}

/// How an ideal is named.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdealLabel {
    /// All elements of image size at most `k`.
    Rank(usize),
    /// Ranks up to `n - 2` plus the rank `n - 1` class with odd domain gap.
    OddTop,
    /// Ranks up to `n - 2` plus the rank `n - 1` class with even domain gap.
    EvenTop,
    /// Any other union of classes, by J-class ids.
    Classes(Vec<usize>),
}

impl std::fmt::Display for IdealLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IdealLabel::Rank(k) => write!(f, "I_{k}"),
            IdealLabel::OddTop => f.write_str("I^o_{n-1}"),
            IdealLabel::EvenTop => f.write_str("I^e_{n-1}"),
            IdealLabel::Classes(c) => write!(f, "I{c:?}"),
        }
    }
}

/// A two-sided ideal, stored as a membership mask over element ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub label: IdealLabel,
    pub mask: Vec<bool>,
}

impl Ideal {
    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, id: ElementId) -> bool {
        self.mask[id]
    }

    pub fn members(&self) -> Vec<ElementId> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    /// Checks `M I M ⊆ I` against the generators, which suffices for a monoid.
    pub fn is_absorbing(&self, m: &MonoidSet) -> bool {
        (0..m.generators().len()).all(|j| {
            self.members()
                .into_iter()
                .all(|x| self.mask[m.right_mul(x, j)] && self.mask[m.left_mul(j, x)])
        })
    }
}

/// All ideals of `m`: the down-closed unions of J-classes. Fails when the
/// J-poset is too wide to enumerate.
pub fn ideals(m: &MonoidSet) -> Result<Vec<Ideal>> {
    let g = crate::green::green_classes(m);
    ideals_from(m, &g)
}

/// As [`ideals`], reusing a computed Green structure.
pub fn ideals_from(m: &MonoidSet, g: &GreenStructure) -> Result<Vec<Ideal>> {
    let classes = g.j_classes();
    let c = classes.len();
    if c > 24 {
        return Err(Error::Resource(format!("{c} J-classes is too many to enumerate ideals")));
    }
    // below[i]: bit set of classes strictly below class i
    let below: Vec<u32> = (0..c)
        .map(|i| (0..c).filter(|&j| j != i && g.j_leq(j, i)).fold(0, |acc, j| acc | 1 << j))
        .collect();
    let mut out = Vec::new();
    for set in 1u32..(1u32 << c) {
        let closed = (0..c).all(|i| set & (1 << i) == 0 || below[i] & !set == 0);
        if !closed {
            continue;
        }
        let mut mask = vec![false; m.len()];
        for i in (0..c).filter(|&i| set & (1 << i) != 0) {
            for &x in &classes[i].members {
                mask[x] = true;
            }
        }
        let label = ideal_label(m, g, set, &mask);
        out.push(Ideal { label, mask });
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.label.cmp(&b.label)));
    Ok(out)
}

fn ideal_label(m: &MonoidSet, g: &GreenStructure, set: u32, mask: &[bool]) -> IdealLabel {
    let n = m.n();
    let max_rank = (0..m.len()).filter(|&i| mask[i]).map(|i| m.element(i).rank()).max();
    if let Some(k) = max_rank {
        if (0..m.len()).all(|i| mask[i] == (m.element(i).rank() <= k)) {
            return IdealLabel::Rank(k);
        }
        if k + 1 == n {
            let top: Vec<usize> = (0..g.j_classes().len())
                .filter(|&i| set & (1 << i) != 0 && g.j_classes()[i].rank == k)
                .collect();
            let lower_full = (0..m.len()).all(|i| m.element(i).rank() >= k || mask[i]);
            if top.len() == 1 && lower_full {
                match g.j_classes()[top[0]].tag.as_deref() {
                    Some("o") => return IdealLabel::OddTop,
                    Some("e") => return IdealLabel::EvenTop,
                    _ => {}
                }
            }
        }
    }
    IdealLabel::Classes((0..32).filter(|&i| set & (1 << i) != 0).collect())
}

/// Writes an orientation-preserving `a` as `g^i b` with `b` order-preserving,
/// choosing the least such `i`.
pub fn factor_gib(a: &PartialPerm) -> Result<(usize, PartialPerm)> {
    if !orient_flags(a).orientation_preserving {
        return Err(Error::NotOrientationPreserving);
    }
    let n = a.chain();
    for i in 0..n.get() {
        let back = rotation(n, (n.get() - i) % n.get());
        let b = back.as_partial() * a;
        if orient_flags(&b).order_preserving {
            return Ok((i, b));
        }
    }
    unreachable!("every orientation-preserving map factors through a rotation")
}

/// All products `x_1 x_2 ... x_k` with `x_i` drawn from `factors[i]`.
pub fn product_set(factors: &[&[PartialPerm]]) -> Vec<PartialPerm> {
    let mut acc: Vec<PartialPerm> = match factors.first() {
        None => return Vec::new(),
        Some(f) => f.to_vec(),
    };
    for f in &factors[1..] {
        let mut next: Vec<PartialPerm> = acc
            .par_iter()
            .flat_map_iter(|x| f.iter().map(move |y| x * y))
            .collect();
        next.par_sort_unstable();
        next.dedup();
        acc = next;
    }
    acc.sort();
    acc.dedup();
    acc
}
