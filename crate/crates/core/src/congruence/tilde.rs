//! Tilde maps: normalizations of a J-class into one fixed group H-class,
//! multiplicative on products that stay in the class.

use rustc_hash::FxHashMap;

use crate::classify::{flank_maps, MonoidKind};
use crate::engine::{ElementId, MonoidSet};
use crate::error::{Error, Result};
use crate::gens::{realize, GenSpec};
use crate::green::{GreenStructure, HGroup};
use crate::pperm::{low_mask, PartialPerm};

/// Flanks and normal form of one element.
#[derive(Clone, Debug)]
pub struct TildeEntry {
    pub element: ElementId,
    pub left: PartialPerm,
    pub right: PartialPerm,
    pub tilde: ElementId,
}

/// The tilde map of one J-class.
#[derive(Clone, Debug)]
pub struct TildeMap {
    pub class: usize,
    pub anchor_idempotent: ElementId,
    pub anchor: HGroup,
    pub entries: Vec<TildeEntry>,
    entry_of: FxHashMap<ElementId, usize>,
}

impl TildeMap {
    pub fn entry(&self, x: ElementId) -> Option<&TildeEntry> {
        self.entry_of.get(&x).map(|&i| &self.entries[i])
    }

    pub fn tilde(&self, x: ElementId) -> Option<ElementId> {
        self.entry(x).map(|e| e.tilde)
    }

    /// Position of `tilde(x)` inside the anchor group.
    pub fn anchor_position(&self, x: ElementId) -> usize {
        let t = self.tilde(x).expect("element of the class");
        self.anchor.position(t).expect("tilde lies in the anchor group")
    }
}

enum Twist {
    None,
    // use the flank as is when the gap has this parity, else compose with the map
    Rotate(PartialPerm),
    Reflect(PartialPerm),
}

/// Builds the tilde map of class `class` of an enumerated AOP or AOR.
/// The unit class uses identity flanks.
pub fn tilde_map(m: &MonoidSet, g: &GreenStructure, class: usize) -> Result<TildeMap> {
    let kind = m.kind().ok_or_else(|| {
        Error::Unsupported("tilde maps need an enumerated AOP or AOR".into())
    })?;
    if !matches!(kind, MonoidKind::AOPn | MonoidKind::AORn) {
        return Err(Error::Unsupported(format!("no tilde maps for {kind}")));
    }
    let n = m.chain();
    let size = n.get();
    let info = g
        .j_classes()
        .get(class)
        .ok_or_else(|| Error::Parameter(format!("no J-class {class}")))?;
    let k = info.rank;
    if k == 0 {
        return Err(Error::Precondition("the zero class has no tilde map".into()));
    }
    let id_n = PartialPerm::identity(n);
    let mut anchor_set = low_mask(k);
    let mut twist = Twist::None;
    if k + 1 == size {
        match info.tag.as_deref() {
            Some("o") => anchor_set = n.full_mask() & !1,
            Some("e") => {}
            Some(other) => {
                return Err(Error::Unsupported(format!("unexpected class tag {other}")))
            }
            None if size % 2 == 1 => twist = Twist::Rotate(realize(GenSpec::Gn, n)?),
            None if kind == MonoidKind::AORn && size % 4 == 0 => {
                twist = Twist::Reflect(realize(GenSpec::Hn, n)?)
            }
            None => {
                return Err(Error::Unsupported(format!(
                    "no tilde map for the rank {k} class of {}",
                    kind.name(size)
                )))
            }
        }
    }
    let flanks = |a: &PartialPerm| -> Result<(PartialPerm, PartialPerm)> {
        if k == size {
            return Ok((id_n.clone(), id_n.clone()));
        }
        match &twist {
            Twist::None => Ok((
                PartialPerm::monotone_bijection(n, anchor_set, a.dom_mask())?,
                PartialPerm::monotone_bijection(n, a.img_mask(), anchor_set)?,
            )),
            Twist::Rotate(gn) => {
                let (l, r) = flank_maps(a)?;
                let gap = a.gaps()?;
                let l = if gap.d % 2 == 1 { l } else { &gn.inverse() * &l };
                let r = if gap.i % 2 == 1 { r } else { &r * gn };
                Ok((l, r))
            }
            Twist::Reflect(hn) => {
                let (l, r) = flank_maps(a)?;
                let gap = a.gaps()?;
                let l = if gap.d % 2 == 0 { l } else { hn * &l };
                let r = if gap.i % 2 == 0 { r } else { &r * hn };
                Ok((l, r))
            }
        }
    };
    let eps = if k == size {
        id_n.clone()
    } else {
        PartialPerm::partial_identity(n, anchor_set)
    };
    let anchor_idempotent = m
        .id_of(&eps)
        .ok_or_else(|| Error::Precondition(format!("anchor {eps} is not in the monoid")))?;
    let anchor = g.group_of(m, anchor_idempotent)?;
    let mut entries = Vec::with_capacity(info.members.len());
    let mut entry_of = FxHashMap::default();
    for &x in &info.members {
        let a = m.element(x);
        let (left, right) = flanks(a)?;
        let t = &(&left * a) * &right;
        let tilde = m
            .id_of(&t)
            .filter(|&id| anchor.position(id).is_some())
            .ok_or_else(|| {
                Error::Precondition(format!("tilde of {a} leaves the anchor group"))
            })?;
        entry_of.insert(x, entries.len());
        entries.push(TildeEntry {
            element: x,
            left,
            right,
            tilde,
        });
    }
    Ok(TildeMap {
        class,
        anchor_idempotent,
        anchor,
        entries,
        entry_of,
    })
}

/// Outcome of checking the tilde-map laws on one class.
#[derive(Clone, Debug, Default)]
pub struct TildeLawReport {
    pub elements: usize,
    pub product_pairs: usize,
    pub bijection_checks: usize,
    pub failures: Vec<String>,
}

impl TildeLawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl TildeMap {
    /// Checks: flanks lie in the class and recover the anchor idempotent;
    /// R-related elements share left flanks; L-related elements share right
    /// flanks; the right flank of an inverse is the inverse left flank;
    /// products inside the class are preserved; and the map from each
    /// H-class onto the anchor group is a bijection with the stated inverse.
    pub fn check_laws(&self, m: &MonoidSet, g: &GreenStructure) -> TildeLawReport {
        let mut failures: Vec<String> = Vec::new();
        let eps = m.element(self.anchor_idempotent);
        let mut left_by_dom: FxHashMap<u32, &PartialPerm> = FxHashMap::default();
        let mut right_by_img: FxHashMap<u32, &PartialPerm> = FxHashMap::default();
        let mut by_dom: FxHashMap<u32, Vec<usize>> = FxHashMap::default();
        let is_units = m.element(self.entries[0].element).is_total();
        for (i, e) in self.entries.iter().enumerate() {
            let a = m.element(e.element);
            by_dom.entry(a.dom_mask()).or_default().push(i);
            if !is_units {
                for f in [&e.left, &e.right] {
                    match m.id_of(f) {
                        Some(id) if g.j_class(id) == self.class => {}
                        _ => failures.push(format!("flank {f} of {a} is not in the class")),
                    }
                }
                if &(&e.left * &e.left.inverse()) != eps || &(&e.right.inverse() * &e.right) != eps {
                    failures.push(format!("flanks of {a} do not recover the anchor"));
                }
            }
            if let Some(prev) = left_by_dom.insert(a.dom_mask(), &e.left) {
                if prev != &e.left {
                    failures.push(format!("R-related elements have different left flanks at {a}"));
                }
            }
            if let Some(prev) = right_by_img.insert(a.img_mask(), &e.right) {
                if prev != &e.right {
                    failures.push(format!("L-related elements have different right flanks at {a}"));
                }
            }
            match m.inverse_of(e.element).and_then(|inv| self.entry(inv)) {
                Some(inv) if inv.right == e.left.inverse() => {}
                _ => failures.push(format!("inverse law fails at {a}")),
            }
        }
        // products staying in the class are exactly those with Im(a) = Dom(b)
        let mut pairs = 0usize;
        for e in &self.entries {
            let a = m.element(e.element);
            for &j in by_dom.get(&a.img_mask()).map(Vec::as_slice).unwrap_or(&[]) {
                let f = &self.entries[j];
                let ab = m.mul(e.element, f.element);
                pairs += 1;
                match self.tilde(ab) {
                    Some(t) if t == m.mul(e.tilde, f.tilde) => {}
                    Some(_) => failures.push(format!("tilde is not multiplicative at {a} * {}", m.element(f.element))),
                    None => failures.push(format!("product {} left the class", m.element(ab))),
                }
            }
        }
        let mut checks = 0usize;
        for e in &self.entries {
            let (li, ri) = (e.left.inverse(), e.right.inverse());
            let h = g.h_members(g.h_class(e.element));
            let mut images: Vec<ElementId> = Vec::with_capacity(h.len());
            for &y in h {
                let gamma = m.element(y);
                let sigma = &(&e.left * gamma) * &e.right;
                let back = &(&li * &sigma) * &ri;
                checks += 1;
                match m.id_of(&sigma) {
                    Some(s) if self.anchor.position(s).is_some() && &back == gamma => images.push(s),
                    _ => failures.push(format!("H-class bijection fails at {gamma}")),
                }
            }
            images.sort_unstable();
            images.dedup();
            if images.len() != h.len() || h.len() != self.anchor.members.len() {
                failures.push(format!("H-class of {} is not in bijection with the anchor", m.element(e.element)));
            }
        }
        TildeLawReport {
            elements: self.entries.len(),
            product_pairs: pairs,
            bijection_checks: checks,
            failures,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::enumerate;
    use crate::green::green_classes;
    use crate::pperm::ChainSize;

    #[test]
    fn low_rank_flank() {
        let n = ChainSize::new(4).unwrap();
        let m = enumerate(MonoidKind::AOPn, n).unwrap();
        let g = green_classes(&m);
        let c = g.classes_of_rank(2)[0];
        let t = tilde_map(&m, &g, c).unwrap();
        let a = m.id_of(&PartialPerm::parse(n, "2->1,4->3").unwrap()).unwrap();
        assert_eq!(t.entry(a).unwrap().left, PartialPerm::parse(n, "1->2,2->4").unwrap());
        assert!(t.check_laws(&m, &g).passed());
    }

    #[test]
    fn odd_twist_on_even_gap() {
        let n = ChainSize::new(5).unwrap();
        let m = enumerate(MonoidKind::AOPn, n).unwrap();
        let g = green_classes(&m);
        let c = g.classes_of_rank(4)[0];
        let t = tilde_map(&m, &g, c).unwrap();
        let gn = realize(GenSpec::Gn, n).unwrap();
        let e = t
            .entries
            .iter()
            .find(|e| m.element(e.element).gaps().unwrap().d == 2)
            .unwrap();
        let (l, _) = flank_maps(m.element(e.element)).unwrap();
        assert_eq!(e.left, &gn.inverse() * &l);
        let rep = t.check_laws(&m, &g);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.elements, 50);
    }

    #[test]
    fn units_and_zero() {
        let n = ChainSize::new(4).unwrap();
        let m = enumerate(MonoidKind::AORn, n).unwrap();
        let g = green_classes(&m);
        let u = g.unit_class(&m);
        let t = tilde_map(&m, &g, u).unwrap();
        assert!(t.entries.iter().all(|e| e.tilde == e.element));
        assert!(t.check_laws(&m, &g).passed());
        assert!(tilde_map(&m, &g, 0).is_err());
    }
}
