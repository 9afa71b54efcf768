//! Exhaustive checks of the structural facts behind the fast membership
//! test, over all small cases.

use altmon::classify::{hat, member_fast, member_oracle, orient_flags};
use altmon::engine::{elements_of_rank, enumerate, factor_gib};
use altmon::gens::{realize, GenSpec};
use altmon::{ChainSize, MonoidKind, PartialPerm};

fn cs(n: usize) -> ChainSize {
    ChainSize::new(n).unwrap()
}

#[test]
fn completion_is_multiplicative() {
    for n in 4..=5 {
        let level = elements_of_rank(MonoidKind::In, cs(n), n - 1);
        let mut pairs = 0;
        for a in &level {
            for b in level.iter().filter(|b| b.dom_mask() == a.img_mask()) {
                let ab = a * b;
                assert_eq!(ab.rank(), n - 1);
                let lhs = ab.completion().unwrap();
                let rhs = a.completion().unwrap().compose(&b.completion().unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{a} * {b}");
                pairs += 1;
            }
        }
        assert!(pairs > 0);
    }
}

#[test]
fn alternating_order_preserving_top_level_is_gap_parity() {
    for n in 4..=8 {
        for a in elements_of_rank(MonoidKind::POIn, cs(n), n - 1) {
            let gap = a.gaps().unwrap();
            assert_eq!(member_oracle(&a, MonoidKind::AOn), gap.same_parity(), "{a}");
        }
    }
}

#[test]
fn hat_of_orientation_preserving_is_a_power_of_gn() {
    for n in 4..=8 {
        let gn = realize(GenSpec::Gn, cs(n)).unwrap();
        let powers: Vec<PartialPerm> = (1..n).map(|k| gn.power(k).unwrap()).collect();
        for a in elements_of_rank(MonoidKind::POPIn, cs(n), n - 1) {
            assert!(powers.contains(&hat(&a).unwrap()), "{a}");
        }
    }
}

#[test]
fn hat_of_reversing_follows_the_mod_four_table() {
    for n in 4..=8 {
        for a in elements_of_rank(MonoidKind::PORIn, cs(n), n - 1) {
            if !orient_flags(&a).strictly_reversing() {
                continue;
            }
            let h = hat(&a).unwrap();
            let one_odd = h.apply(1).unwrap() % 2 == 1;
            let want = match n % 4 {
                0 => false,
                1 => !one_odd,
                2 => true,
                _ => one_odd,
            };
            assert_eq!(member_oracle(&h, MonoidKind::AORn), want, "n={n} a={a}");
        }
    }
}

#[test]
fn low_ranks_are_absorbed() {
    for n in 4..=6 {
        for k in 0..=n - 2 {
            for a in elements_of_rank(MonoidKind::PORIn, cs(n), k) {
                assert!(member_fast(&a, MonoidKind::AORn).unwrap());
                let popi = orient_flags(&a).orientation_preserving;
                assert_eq!(member_fast(&a, MonoidKind::AOPn).unwrap(), popi);
            }
        }
    }
}

#[test]
fn every_aop_element_factors_through_a_rotation() {
    for n in 4..=6 {
        let m = enumerate(MonoidKind::AOPn, cs(n)).unwrap();
        for a in m.elements() {
            let (_, b) = factor_gib(a).unwrap();
            assert!(orient_flags(&b).order_preserving);
            assert_eq!(b.rank(), a.rank());
        }
    }
}

#[test]
fn fast_membership_matches_oracle_on_whole_symmetric_inverse_monoid() {
    for n in 3..=6 {
        for k in 0..=n {
            for a in elements_of_rank(MonoidKind::In, cs(n), k) {
                for kind in [MonoidKind::AOPn, MonoidKind::AORn] {
                    assert_eq!(member_fast(&a, kind).unwrap(), member_oracle(&a, kind), "{a} {kind}");
                }
            }
        }
    }
}
