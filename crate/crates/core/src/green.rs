//! Green's relations of a [`MonoidSet`] and the order on its J-classes.
//!
//! L, R and H are read off images and domains. J is computed from the
//! two-sided Cayley graph over the generators: `a <=_J b` iff `a` is
//! reachable from `b`, so J-classes are the strongly connected components.

use std::fmt::Write as _;

use petgraph::algo::kosaraju_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::engine::{ElementId, MonoidSet};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupType};
use crate::pperm::PartialPerm;

/// One J-class with its statistics.
#[derive(Clone, Debug, Serialize)]
pub struct JClass {
    pub rank: usize,
    /// `o`/`e` for a level split by domain-gap parity, an index for other
    /// splits, absent when the rank level is a single class.
    pub tag: Option<String>,
    #[serde(skip)]
    pub members: Vec<ElementId>,
    pub size: usize,
    pub n_l: usize,
    pub n_r: usize,
    pub h_size: usize,
    pub has_idempotent: bool,
}

impl JClass {
    pub fn label(&self) -> String {
        match &self.tag {
            Some(t) => format!("J{}{}", self.rank, t),
            None => format!("J{}", self.rank),
        }
    }
}

/// L/R/H/J partitions plus the J-class poset.
#[derive(Clone, Debug)]
pub struct GreenStructure {
    l_of: Vec<usize>,
    r_of: Vec<usize>,
    h_of: Vec<usize>,
    j_of: Vec<usize>,
    h_members: Vec<Vec<ElementId>>,
    classes: Vec<JClass>,
    // leq[i][j]: class i <=_J class j
    leq: Vec<Vec<bool>>,
    hasse: Vec<(usize, usize)>,
}

fn key_partition<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids: FxHashMap<K, usize> = FxHashMap::default();
    keys.map(|k| {
        let next = ids.len();
        *ids.entry(k).or_insert(next)
    })
    .collect()
}

/// Computes Green's relations and the J-order of `m`.
pub fn green_classes(m: &MonoidSet) -> GreenStructure {
    let els = m.elements();
    let l_of = key_partition(els.iter().map(|e| e.img_mask()));
    let r_of = key_partition(els.iter().map(|e| e.dom_mask()));
    let h_of = key_partition(els.iter().map(|e| (e.dom_mask(), e.img_mask())));
    let h_count = h_of.iter().max().map_or(0, |&x| x + 1);
    let mut h_members = vec![Vec::new(); h_count];
    for (x, &h) in h_of.iter().enumerate() {
        h_members[h].push(x);
    }

    // Two-sided Cayley graph: b -> b g and b -> g b.
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(m.len(), 0);
    let nodes: Vec<_> = (0..m.len()).map(|_| graph.add_node(())).collect();
    for j in 0..m.generators().len() {
        for x in 0..m.len() {
            graph.add_edge(nodes[x], nodes[m.right_mul(x, j)], ());
            graph.add_edge(nodes[x], nodes[m.left_mul(j, x)], ());
        }
    }
    let sccs = kosaraju_scc(&graph);
    let mut raw_of = vec![0usize; m.len()];
    for (c, comp) in sccs.iter().enumerate() {
        for v in comp {
            raw_of[v.index()] = c;
        }
    }
    let raw_count = sccs.len();

    // order classes by rank, then by least member
    let mut raw_ids: Vec<usize> = (0..raw_count).collect();
    let min_member: Vec<usize> = sccs
        .iter()
        .map(|c| c.iter().map(|v| v.index()).min().expect("non-empty"))
        .collect();
    let n = m.n();
    // odd domain gaps first at rank n - 1, so a split level reads o, e
    let key = |c: usize| {
        let e = &els[min_member[c]];
        let parity = if e.rank() + 1 == n { 1 - e.gaps().expect("rank n-1").d % 2 } else { 0 };
        (e.rank(), parity, min_member[c])
    };
    raw_ids.sort_by_key(|&c| key(c));
    let mut relabel = vec![0usize; raw_count];
    for (new, &old) in raw_ids.iter().enumerate() {
        relabel[old] = new;
    }
    let j_of: Vec<usize> = raw_of.iter().map(|&c| relabel[c]).collect();
    let mut members = vec![Vec::new(); raw_count];
    for (x, &c) in j_of.iter().enumerate() {
        members[c].push(x);
    }

    // class-level edges: target <= source
    let mut direct = vec![vec![false; raw_count]; raw_count];
    for e in graph.edge_indices() {
        let (a, b) = graph.edge_endpoints(e).expect("edge");
        let (ca, cb) = (j_of[a.index()], j_of[b.index()]);
        if ca != cb {
            direct[cb][ca] = true;
        }
    }
    let mut leq = vec![vec![false; raw_count]; raw_count];
    for (start, row) in leq.iter_mut().enumerate() {
        // everything reachable upward from `start`
        let mut stack = vec![start];
        row[start] = true;
        while let Some(c) = stack.pop() {
            for d in 0..raw_count {
                if direct[c][d] && !row[d] {
                    row[d] = true;
                    stack.push(d);
                }
            }
        }
    }
    let mut hasse = Vec::new();
    for a in 0..raw_count {
        for b in 0..raw_count {
            if a == b || !leq[a][b] {
                continue;
            }
            let covered = (0..raw_count).any(|c| c != a && c != b && leq[a][c] && leq[c][b]);
            if !covered {
                hasse.push((a, b));
            }
        }
    }

    let classes: Vec<JClass> = members
        .iter()
        .enumerate()
        .map(|(c, mem)| {
            let rank = els[mem[0]].rank();
            let siblings: Vec<usize> = (0..raw_count)
                .filter(|&d| els[members[d][0]].rank() == rank)
                .collect();
            let tag = class_tag(els, &members, &siblings, c, n);
            let n_l = distinct(mem.iter().map(|&x| l_of[x]));
            let n_r = distinct(mem.iter().map(|&x| r_of[x]));
            JClass {
                rank,
                tag,
                size: mem.len(),
                n_l,
                n_r,
                h_size: h_members[h_of[mem[0]]].len(),
                has_idempotent: mem.iter().any(|&x| els[x].is_idempotent()),
                members: mem.clone(),
            }
        })
        .collect();

    GreenStructure {
        l_of,
        r_of,
        h_of,
        j_of,
        h_members,
        classes,
        leq,
        hasse,
    }
}

fn distinct(it: impl Iterator<Item = usize>) -> usize {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn class_tag(
    els: &[PartialPerm],
    members: &[Vec<ElementId>],
    siblings: &[usize],
    c: usize,
    n: usize,
) -> Option<String> {
    if siblings.len() < 2 {
        return None;
    }
    let rank = els[members[c][0]].rank();
    if rank + 1 == n && siblings.len() == 2 {
        let parity = |d: usize| -> Option<usize> {
            let mut ps = members[d]
                .iter()
                .map(|&x| els[x].gaps().expect("rank n-1").d % 2);
            let first = ps.next()?;
            ps.all(|p| p == first).then_some(first)
        };
        if let (Some(p0), Some(p1)) = (parity(siblings[0]), parity(siblings[1])) {
            if p0 != p1 {
                let own = if c == siblings[0] { p0 } else { p1 };
                return Some(if own == 1 { "o" } else { "e" }.to_string());
            }
        }
    }
    let pos = siblings.iter().position(|&d| d == c).expect("sibling");
    Some(format!("#{pos}"))
}

impl GreenStructure {
    pub fn l_class(&self, x: ElementId) -> usize {
        self.l_of[x]
    }

    pub fn r_class(&self, x: ElementId) -> usize {
        self.r_of[x]
    }

    pub fn h_class(&self, x: ElementId) -> usize {
        self.h_of[x]
    }

    pub fn j_class(&self, x: ElementId) -> usize {
        self.j_of[x]
    }

    pub fn l_partition(&self) -> &[usize] {
        &self.l_of
    }

    pub fn r_partition(&self) -> &[usize] {
        &self.r_of
    }

    pub fn h_partition(&self) -> &[usize] {
        &self.h_of
    }

    pub fn j_partition(&self) -> &[usize] {
        &self.j_of
    }

    pub fn h_members(&self, h: usize) -> &[ElementId] {
        &self.h_members[h]
    }

    pub fn j_classes(&self) -> &[JClass] {
        &self.classes
    }

    /// Whether class `a` lies below or equal to class `b`.
    pub fn j_leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Covering pairs `(lower, upper)`.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// Class containing the identity.
    pub fn unit_class(&self, m: &MonoidSet) -> usize {
        self.j_of[m.identity()]
    }

    /// Classes with rank `k`.
    pub fn classes_of_rank(&self, k: usize) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| self.classes[c].rank == k)
            .collect()
    }

    /// Class index by label such as `J3o`.
    pub fn class_by_label(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label() == label)
    }

    /// Elements strictly below `j`.
    pub fn below(&self, j: usize) -> Vec<bool> {
        self.j_of.iter().map(|&c| c != j && self.leq[c][j]).collect()
    }

    /// Elements whose class is not above or equal to `j`.
    pub fn not_above(&self, j: usize) -> Vec<bool> {
        self.j_of.iter().map(|&c| !self.leq[j][c]).collect()
    }

    /// Maximal classes other than the unit class.
    pub fn maximal_non_unit_classes(&self, m: &MonoidSet) -> Vec<usize> {
        let units = self.unit_class(m);
        (0..self.classes.len())
            .filter(|&c| c != units)
            .filter(|&c| {
                !(0..self.classes.len()).any(|d| d != c && d != units && self.leq[c][d])
            })
            .collect()
    }

    /// The group H-class of `m` containing the idempotent `e`.
    pub fn group_of(&self, m: &MonoidSet, e: ElementId) -> Result<HGroup> {
        HGroup::new(m, self.h_members(self.h_of[e]).to_vec())
    }

    /// Group type of an H-class, which must contain an idempotent.
    pub fn h_group_type(&self, m: &MonoidSet, h: usize) -> Result<GroupType> {
        Ok(HGroup::new(m, self.h_members[h].clone())?.group.identify())
    }

    /// Group type of the maximal subgroups inside J-class `c`.
    pub fn class_group_type(&self, m: &MonoidSet, c: usize) -> Result<GroupType> {
        let e = self.classes[c]
            .members
            .iter()
            .copied()
            .find(|&x| m.element(x).is_idempotent())
            .ok_or_else(|| Error::NotAGroup(format!("class {c} has no idempotent")))?;
        self.h_group_type(m, self.h_of[e])
    }

    /// DOT rendering of the Hasse diagram, lower classes at the bottom.
    pub fn j_poset_dot(&self) -> String {
        let mut s = String::from("digraph J {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(s, "  c{i} [label=\"{} ({})\"];", c.label(), c.size);
        }
        for &(a, b) in &self.hasse {
            let _ = writeln!(s, "  c{a} -> c{b};");
        }
        s.push_str("}\n");
        s
    }

    /// JSON summary of classes and covering edges.
    pub fn summary_json(&self, m: &MonoidSet) -> serde_json::Value {
        let classes: Vec<serde_json::Value> = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let group = self
                    .class_group_type(m, i)
                    .map(|g| g.to_string())
                    .unwrap_or_else(|_| "none".into());
                serde_json::json!({
                    "rank": c.rank,
                    "tag": c.tag,
                    "size": c.size,
                    "n_L": c.n_l,
                    "n_R": c.n_r,
                    "h_size": c.h_size,
                    "group_type": group,
                })
            })
            .collect();
        serde_json::json!({ "j_classes": classes, "hasse_edges": self.hasse })
    }

    /// Plain-text table of the classes.
    pub fn stats_table(&self, m: &MonoidSet) -> String {
        let mut s = String::from("class  rank  size  n_L  n_R  h_size  group\n");
        for (i, c) in self.classes.iter().enumerate() {
            let group = self
                .class_group_type(m, i)
                .map(|g| g.to_string())
                .unwrap_or_else(|_| "none".into());
            let _ = writeln!(
                s,
                "{:<6} {:>4}  {:>4}  {:>3}  {:>3}  {:>6}  {}",
                c.label(),
                c.rank,
                c.size,
                c.n_l,
                c.n_r,
                c.h_size,
                group
            );
        }
        s
    }
}

/// A group H-class with its induced multiplication.
#[derive(Clone, Debug)]
pub struct HGroup {
    pub members: Vec<ElementId>,
    pub group: FiniteGroup,
    position: FxHashMap<ElementId, usize>,
}

impl HGroup {
    pub fn new(m: &MonoidSet, members: Vec<ElementId>) -> Result<Self> {
        if !members.iter().any(|&x| m.element(x).is_idempotent()) {
            return Err(Error::NotAGroup("H-class without an idempotent".into()));
        }
        let position: FxHashMap<ElementId, usize> =
            members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table: Result<Vec<Vec<usize>>> = members
            .par_iter()
            .map(|&x| {
                members
                    .iter()
                    .map(|&y| {
                        let p = m.element(x) * m.element(y);
                        m.id_of(&p)
                            .and_then(|id| position.get(&id).copied())
                            .ok_or_else(|| Error::NotAGroup("product leaves the class".into()))
                    })
                    .collect()
            })
            .collect();
        let group = FiniteGroup::from_table(table?)?;
        Ok(HGroup {
            members,
            group,
            position,
        })
    }

    pub fn position(&self, x: ElementId) -> Option<usize> {
        self.position.get(&x).copied()
    }

    /// Identity element of the group, as an element id of the monoid.
    pub fn identity(&self) -> ElementId {
        self.members[self.group.identity()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::MonoidKind;
    use crate::engine::enumerate;
    use crate::pperm::ChainSize;

    fn monoid(kind: MonoidKind, k: usize) -> MonoidSet {
        enumerate(kind, ChainSize::new(k).unwrap()).unwrap()
    }

    #[test]
    fn aop4_class_sizes() {
        let m = monoid(MonoidKind::AOPn, 4);
        let g = green_classes(&m);
        let sizes: Vec<usize> = g.j_classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 16, 72, 12, 12, 2]);
        let tags: Vec<_> = g.j_classes().iter().map(|c| c.label()).collect();
        assert_eq!(tags, vec!["J0", "J1", "J2", "J3o", "J3e", "J4"]);
    }

    #[test]
    fn aop4_is_a_diamond() {
        let m = monoid(MonoidKind::AOPn, 4);
        let g = green_classes(&m);
        let mut edges = g.hasse_edges().to_vec();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (1, 2), (2, 3), (2, 4), (3, 5), (4, 5)]);
        let dot = g.j_poset_dot();
        assert_eq!(dot.matches("->").count(), 6);
    }

    #[test]
    fn aop5_is_a_chain() {
        let m = monoid(MonoidKind::AOPn, 5);
        let g = green_classes(&m);
        assert_eq!(g.j_classes().len(), 6);
        assert_eq!(g.hasse_edges().len(), 5);
        let top = &g.j_classes()[4];
        assert_eq!((top.rank, top.n_l, top.h_size), (4, 5, 2));
    }

    #[test]
    fn partitions_are_consistent() {
        let m = monoid(MonoidKind::AORn, 4);
        let g = green_classes(&m);
        for x in 0..m.len() {
            for y in 0..m.len() {
                let same_h = g.h_class(x) == g.h_class(y);
                assert_eq!(same_h, g.l_class(x) == g.l_class(y) && g.r_class(x) == g.r_class(y));
                if g.l_class(x) == g.l_class(y) || g.r_class(x) == g.r_class(y) {
                    assert_eq!(g.j_class(x), g.j_class(y));
                }
            }
        }
    }

    #[test]
    fn unit_group_types() {
        let m = monoid(MonoidKind::AORn, 4);
        let g = green_classes(&m);
        let u = g.unit_class(&m);
        assert_eq!(g.class_group_type(&m, u).unwrap(), GroupType::Klein);
        let m = monoid(MonoidKind::AOPn, 6);
        let g = green_classes(&m);
        let top = g.classes_of_rank(5);
        assert_eq!(top.len(), 2);
        for c in top {
            assert_eq!(g.class_group_type(&m, c).unwrap(), GroupType::Cyclic(5));
        }
    }

    #[test]
    fn non_group_h_class_is_rejected() {
        let m = monoid(MonoidKind::AOPn, 4);
        let g = green_classes(&m);
        let x = (0..m.len())
            .find(|&x| {
                let e = m.element(x);
                e.rank() == 2 && e.dom_mask() != e.img_mask()
            })
            .unwrap();
        assert!(g.h_group_type(&m, g.h_class(x)).is_err());
    }

    #[test]
    fn summary_has_expected_fields() {
        let m = monoid(MonoidKind::AOPn, 4);
        let g = green_classes(&m);
        let js = g.summary_json(&m);
        assert_eq!(js["j_classes"].as_array().unwrap().len(), 6);
        assert_eq!(js["j_classes"][5]["group_type"], "cyclic(2)");
        assert_eq!(js["j_classes"][3]["tag"], "o");
    }
}
