#![allow(dead_code)]

use k3niem::cases::{records, CaseRecord, DataStatus, RecordKind};
use k3niem::catalog::root_lattice;
use k3niem::linalg::{Int, IntMatrix};
use k3niem::{niemeier, Lattice, Niemeier, PermAction, RootKind};
use proptest::prelude::*;

/// Components that fit a small direct sum.
pub const SMALL_ROOT_LATTICES: [(RootKind, usize); 9] = [
    (RootKind::A, 1),
    (RootKind::A, 2),
    (RootKind::A, 3),
    (RootKind::A, 4),
    (RootKind::A, 5),
    (RootKind::D, 4),
    (RootKind::D, 5),
    (RootKind::E, 6),
    (RootKind::E, 7),
];

/// Direct sum of root lattices (each optionally scaled by 2 or 3) of total rank at most `max_rank`,
/// in a basis twisted by a random unimodular change of coordinates.
pub fn negdef_lattice(max_rank: usize) -> impl Strategy<Value = Lattice> {
    let part = (0..SMALL_ROOT_LATTICES.len(), prop::sample::select(vec![1i64, 1, 1, 2, 3]));
    (prop::collection::vec(part, 1..5), prop::collection::vec((0usize..64, 0usize..64, -2i64..=2), 0..12)).prop_map(
        move |(parts, moves)| {
            let mut blocks = Vec::new();
            let mut rank = 0;
            for (k, scale) in parts {
                let (kind, n) = SMALL_ROOT_LATTICES[k];
                if rank + n > max_rank {
                    continue;
                }
                rank += n;
                let l = root_lattice(kind, n).unwrap();
                blocks.push(if scale == 1 { l } else { l.scaled(scale).unwrap() });
            }
            if blocks.is_empty() {
                blocks.push(root_lattice(RootKind::A, 1).unwrap());
                rank = 1;
            }
            let sum = Lattice::direct_sum(&blocks).unwrap();
            let g = sum.int_gram().unwrap();
            let mut u = IntMatrix::identity(rank);
            for (i, j, k) in moves {
                let (i, j) = (i % rank, j % rank);
                if i != j && k != 0 {
                    for r in 0..rank {
                        let v = u.get(r, i).clone() + u.get(r, j) * Int::from(k);
                        u.set(r, i, v);
                    }
                }
            }
            Lattice::from_gram(u.transpose().mul(&g).mul(&u)).unwrap()
        },
    )
}

/// Nondegenerate symmetric integer matrix with entries in `[-entry, entry]`.
pub fn nondegenerate_gram(max_dim: usize, entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim)
        .prop_flat_map(move |n| {
            prop::collection::vec(-entry..=entry, n * n).prop_map(move |v| {
                let mut m = IntMatrix::zeros(n, n);
                for i in 0..n {
                    for j in i..n {
                        m.set(i, j, Int::from(v[i * n + j]));
                        m.set(j, i, Int::from(v[i * n + j]));
                    }
                }
                m
            })
        })
        .prop_filter("nondegenerate", |m| m.det() != Int::from(0))
}

/// Coinvariant records of the case corpus whose generators are valid automorphisms.
pub fn corpus() -> Vec<(&'static CaseRecord, &'static Niemeier, Vec<PermAction>)> {
    records()
        .iter()
        .filter(|r| matches!(r.kind, RecordKind::Coinvariant) && r.data_status == DataStatus::Ok)
        .map(|r| {
            let n = niemeier(r.niemeier_index).unwrap();
            let gens = r.resolve_generators().unwrap_or_else(|e| panic!("{}: {e}", r.label));
            (r, n, gens)
        })
        .collect()
}
