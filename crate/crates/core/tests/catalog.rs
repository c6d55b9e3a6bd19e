use std::time::Instant;

use k3niem::catalog::{a_group_generators, epsilon_vector, niemeier, root_lattice};
use k3niem::groups::check_action;
use k3niem::linalg::{rat, Rat};
use k3niem::{RootKind, RootLabel, RootSystem};

fn expected(i: usize) -> RootSystem {
    use RootKind::{A, D, E};
    let parts: &[(RootKind, usize, usize)] = match i {
        1 => &[(D, 24, 1)],
        2 => &[(D, 16, 1), (E, 8, 1)],
        3 => &[(E, 8, 3)],
        4 => &[(A, 24, 1)],
        5 => &[(D, 12, 2)],
        6 => &[(A, 17, 1), (E, 7, 1)],
        7 => &[(D, 10, 1), (E, 7, 2)],
        8 => &[(A, 15, 1), (D, 9, 1)],
        9 => &[(D, 8, 3)],
        10 => &[(A, 12, 2)],
        11 => &[(A, 11, 1), (D, 7, 1), (E, 6, 1)],
        12 => &[(E, 6, 4)],
        13 => &[(A, 9, 2), (D, 6, 1)],
        14 => &[(D, 6, 4)],
        15 => &[(A, 8, 3)],
        16 => &[(A, 7, 2), (D, 5, 2)],
        17 => &[(A, 6, 4)],
        18 => &[(A, 5, 4), (D, 4, 1)],
        19 => &[(D, 4, 6)],
        20 => &[(A, 4, 6)],
        21 => &[(A, 3, 8)],
        22 => &[(A, 2, 12)],
        23 => &[(A, 1, 24)],
        _ => unreachable!(),
    };
    let mut comps = Vec::new();
    for &(k, n, m) in parts {
        for _ in 0..m {
            comps.push(RootLabel::new(k, n).unwrap());
        }
    }
    RootSystem::new(comps)
}

#[test]
fn all_niemeier_lattices_are_even_unimodular_with_expected_roots() {
    let start = Instant::now();
    for i in 1..=23 {
        let n = niemeier(i).unwrap();
        let l = &n.lattice;
        assert_eq!(l.rank(), 24, "N{i} rank");
        assert!(l.is_even(), "N{i} even");
        assert_eq!(l.det().numer().magnitude().to_string(), "1", "N{i} det");
        assert_eq!(*l.det().denom(), 1.into(), "N{i} det");
        let roots = l.root_components().unwrap();
        assert_eq!(roots, expected(i), "N{i} roots");
    }
    let n23 = niemeier(23).unwrap();
    assert_eq!(n23.lattice.root_components().unwrap().root_count, 48);
    eprintln!("catalog built in {:?}", start.elapsed());
}

#[test]
fn leech_is_not_built() {
    assert!(niemeier(24).is_err());
}

#[test]
fn epsilon_norms() {
    let a2 = root_lattice(RootKind::A, 2).unwrap();
    let e = epsilon_vector(RootKind::A, 2, 1).unwrap();
    assert_eq!(e, vec![rat(1, 3), rat(2, 3)]);
    assert_eq!(a2.pair(&e, &e), rat(-2, 3));
    let e7 = root_lattice(RootKind::E, 7).unwrap();
    let e = epsilon_vector(RootKind::E, 7, 1).unwrap();
    assert_eq!(e7.pair(&e, &e), rat(-3, 2));
    let d4 = epsilon_vector(RootKind::D, 4, 2).unwrap();
    let half = rat(1, 2);
    assert_eq!(d4, vec![Rat::from_integer(0.into()), Rat::from_integer(0.into()), half.clone(), half]);
    assert!(epsilon_vector(RootKind::A, 2, 2).is_err());
}

#[test]
fn e8_is_unimodular() {
    let e8 = root_lattice(RootKind::E, 8).unwrap();
    assert_eq!(e8.discriminant_group().unwrap().order(), 1.into());
}

#[test]
fn stored_symmetries_are_automorphisms() {
    for i in 1..=23 {
        let n = niemeier(i).unwrap();
        for g in a_group_generators(i).unwrap() {
            if let Err(d) = check_action(n, &g) {
                panic!("N{i}: {} is not an automorphism: {}", g.source(), d.reason);
            }
        }
    }
}

#[test]
fn twelve_a2_symmetry_group_has_order_twice_m12() {
    let gens = a_group_generators(22).unwrap();
    assert_eq!(k3niem::cases::group_order(&gens, 400_000), Some(190_080));
}
