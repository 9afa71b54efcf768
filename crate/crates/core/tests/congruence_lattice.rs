use altmon::congruence::{congruence_lattice_oracle, enumerate_congruences_constructive, rees};
use altmon::engine::{enumerate, ideals};
use altmon::green::green_classes;
use altmon::{ChainSize, MonoidKind};

fn both_sides(kind: MonoidKind, n: usize) -> usize {
    let m = enumerate(kind, ChainSize::new(n).unwrap()).unwrap();
    let g = green_classes(&m);
    let constructive: Vec<_> = enumerate_congruences_constructive(&m, &g)
        .unwrap()
        .into_iter()
        .map(|(_, c)| c)
        .collect();
    let oracle = congruence_lattice_oracle(&m).unwrap();
    assert_eq!(constructive, oracle, "{}", kind.name(n));
    for ideal in ideals(&m).unwrap() {
        assert!(oracle.contains(&rees(&m, &ideal).unwrap()));
    }
    oracle.len()
}

#[test]
fn small_lattices_match() {
    assert_eq!(both_sides(MonoidKind::AOPn, 3), 5);
    assert_eq!(both_sides(MonoidKind::AOPn, 4), 14);
    assert_eq!(both_sides(MonoidKind::AORn, 4), 11);
}

#[test]
fn aop5_lattice_matches() {
    let count = both_sides(MonoidKind::AOPn, 5);
    assert_eq!(count, both_sides(MonoidKind::AOPn, 5));
}

#[test]
fn aor5_lattice_matches() {
    both_sides(MonoidKind::AORn, 5);
}

#[test]
fn ao_has_only_rees_congruences() {
    for n in 4..=5 {
        let m = enumerate(MonoidKind::AOn, ChainSize::new(n).unwrap()).unwrap();
        let lattice = congruence_lattice_oracle(&m).unwrap();
        assert_eq!(lattice.len(), n + 3);
        let mut from_ideals: Vec<_> = ideals(&m)
            .unwrap()
            .iter()
            .map(|i| rees(&m, i).unwrap())
            .collect();
        from_ideals.sort();
        assert_eq!(lattice, from_ideals);
    }
}

#[test]
#[ignore = "oracle on thousands of elements; run with --ignored"]
fn n6_lattices_match() {
    both_sides(MonoidKind::AOPn, 6);
    both_sides(MonoidKind::AORn, 6);
}
