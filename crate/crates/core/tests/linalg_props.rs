use k3niem::linalg::{module_basis, signature, smith_normal_form, solve_many, Int, IntMatrix, RatMatrix};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn int_matrix(max_dim: usize, entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-entry..=entry, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(Int::from).collect()))
    })
}

fn symmetric_matrix(max_dim: usize, entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
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
}

fn is_diagonal(d: &IntMatrix) -> bool {
    (0..d.rows()).all(|i| (0..d.cols()).all(|j| i == j || d.get(i, j).is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_round_trip(m in int_matrix(24, 9)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(is_diagonal(&s.d));
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        for w in s.divisors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.divisors.iter().all(|x| x.is_positive()));
        let diag = s.diagonal();
        prop_assert!(diag[s.rank()..].iter().all(|x| x.is_zero()));
        prop_assert_eq!(smith_normal_form(&s.d).divisors, s.divisors);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn module_basis_idempotent_and_order_independent(m in int_matrix(8, 5), seed in any::<u64>()) {
        let r = m.to_rat();
        let b = module_basis(&r);
        prop_assert_eq!(module_basis(&b), b.clone());
        let mut order: Vec<usize> = (0..r.cols()).collect();
        let n = order.len();
        for i in 0..n {
            order.swap(i, (seed as usize).wrapping_add(i * 7919) % n);
        }
        let permuted = module_basis(&r.select_columns(&order));
        prop_assert_eq!(permuted.cols(), b.cols());
        if b.cols() > 0 {
            let x = solve_many(&b, &permuted).expect("permuted basis lies in the span");
            let y = solve_many(&permuted, &b).expect("basis lies in the permuted span");
            prop_assert!(x.is_integral() && y.is_integral());
        }
    }

    #[test]
    fn signature_counts(g in symmetric_matrix(10, 6)) {
        let r = g.to_rat();
        let (p, z, n) = signature(&r).unwrap();
        prop_assert_eq!(p + z + n, g.rows());
        prop_assert_eq!(z, g.rows() - r.rank());
        let neg = RatMatrix::zeros(g.rows(), g.cols()).sub(&r);
        prop_assert_eq!(signature(&neg).unwrap(), (n, z, p));
    }
}
