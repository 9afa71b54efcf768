//! Randomized laws for partial permutations and the membership tests.

use altmon::classify::{member_fast, member_oracle, orient_flags, rotation};
use altmon::engine::{factor_gib, random_partial_perm};
use altmon::{ChainSize, MonoidKind, PartialPerm, Permutation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn element(n: usize, rank: usize, seed: u64) -> PartialPerm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_partial_perm(ChainSize::new(n).unwrap(), rank.min(n), &mut rng)
}

// three elements of one chain size, each of arbitrary rank
fn triple() -> impl Strategy<Value = (PartialPerm, PartialPerm, PartialPerm)> {
    (3usize..=9).prop_flat_map(|n| {
        let one = (0..=n, any::<u64>()).prop_map(move |(r, s)| element(n, r, s));
        (one.clone(), one.clone(), one)
    })
}

fn single() -> impl Strategy<Value = PartialPerm> {
    (3usize..=10, 0usize..=10, any::<u64>()).prop_map(|(n, r, s)| element(n, r, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn composition_is_associative((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn inverse_laws((a, b, _) in triple()) {
        let ai = a.inverse();
        prop_assert_eq!(&(&a * &ai) * &a, a.clone());
        prop_assert_eq!(ai.inverse(), a.clone());
        prop_assert_eq!((&a * &b).inverse(), &b.inverse() * &ai);
        prop_assert!((&a * &ai).is_idempotent());
    }

    #[test]
    fn rank_never_grows((a, b, _) in triple()) {
        prop_assert!((&a * &b).rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn text_and_json_round_trip(a in single()) {
        prop_assert_eq!(PartialPerm::parse(a.chain(), &a.to_string()).unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<PartialPerm>(&json).unwrap(), a);
    }

    #[test]
    fn fast_membership_matches_oracle(a in single()) {
        for kind in [MonoidKind::AOPn, MonoidKind::AORn] {
            prop_assert_eq!(member_fast(&a, kind).unwrap(), member_oracle(&a, kind), "{} {}", a, kind);
        }
    }

    #[test]
    fn flag_implications(a in single()) {
        let f = orient_flags(&a);
        if a.rank() <= 2 {
            prop_assert!(f.orientation_preserving && f.orientation_reversing);
        }
        if a.rank() <= 1 {
            prop_assert!(f.order_preserving && f.order_reversing);
        }
        prop_assert!(!f.order_preserving || f.orientation_preserving);
        prop_assert!(!f.order_reversing || f.orientation_reversing);
        prop_assert!(!member_oracle(&a, MonoidKind::AOPn) || member_oracle(&a, MonoidKind::AORn));
        // inverses keep orientation type
        let g = orient_flags(&a.inverse());
        prop_assert_eq!(f.orientation_preserving, g.orientation_preserving);
    }

    #[test]
    fn monoids_are_closed((a, b, _) in triple()) {
        for kind in [MonoidKind::AOPn, MonoidKind::AORn, MonoidKind::POPIn, MonoidKind::PORIn] {
            if member_oracle(&a, kind) && member_oracle(&b, kind) {
                prop_assert!(member_oracle(&(&a * &b), kind));
            }
        }
    }

    #[test]
    fn rotation_factorization(a in single()) {
        match factor_gib(&a) {
            Ok((i, b)) => {
                prop_assert!(orient_flags(&a).orientation_preserving);
                prop_assert!(orient_flags(&b).order_preserving);
                prop_assert_eq!(&(rotation(a.chain(), i).into_partial()) * &b, a.clone());
                for j in 0..i {
                    let back = rotation(a.chain(), (a.n() - j) % a.n()).into_partial();
                    prop_assert!(!orient_flags(&(&back * &a)).order_preserving);
                }
            }
            Err(_) => prop_assert!(!orient_flags(&a).orientation_preserving),
        }
    }

    #[test]
    fn completion_extends(n in 3usize..=10, seed in any::<u64>()) {
        let a = element(n, n - 1, seed);
        let c = a.completion().unwrap();
        prop_assert_eq!(c.as_partial().restrict(a.dom_mask()), a.clone());
        let gap = a.gaps().unwrap();
        prop_assert_eq!(c.apply(gap.d), gap.i);
    }

    #[test]
    fn sign_is_multiplicative(n in 3usize..=10, s1 in any::<u64>(), s2 in any::<u64>()) {
        let p = Permutation::try_from(element(n, n, s1)).unwrap();
        let q = Permutation::try_from(element(n, n, s2)).unwrap();
        prop_assert_eq!(p.compose(&q).unwrap().sign(), p.sign() * q.sign());
    }
}
