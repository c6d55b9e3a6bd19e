mod common;

use common::{corpus, negdef_lattice, nondegenerate_gram};
use k3niem::padic::{
    det_k_q_p, discriminant_form_values_brute, discriminant_form_values_from_jordan, jordan_decompose, l_p,
};
use k3niem::{coinvariant_lattice, Lattice, UnitSquareClass};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rayon::prelude::*;

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn check_jordan(l: &Lattice) -> Result<(), String> {
    let g = l.int_gram().unwrap();
    let det = g.det();
    for p in PRIMES {
        let jf = jordan_decompose(&g, p).map_err(|e| e.to_string())?;
        let whole = UnitSquareClass::of_int(&det, p);
        if !jf.det_class().congruent(&whole) {
            return Err(format!("p={p}: block determinants {} vs det {}", jf.det_class(), whole));
        }
        if jf.blocks.iter().map(|b| b.rank).sum::<usize>() != g.rows() {
            return Err(format!("p={p}: block ranks do not sum to the rank"));
        }
        let unimodular = jf.block(0).map(|b| b.det_class).unwrap_or(UnitSquareClass::trivial(p));
        let dk = det_k_q_p(l, p).map_err(|e| e.to_string())?;
        if !dk.class.mul(&unimodular).congruent(&whole) {
            return Err(format!("p={p}: det K {} times unimodular part {} vs det {}", dk.class, unimodular, whole));
        }
        let counted: usize = jf.blocks.iter().filter(|b| b.scale > 0).map(|b| b.rank).sum();
        if l_p(l, p).unwrap() != counted {
            return Err(format!("p={p}: l_p differs from the non-unimodular Jordan rank"));
        }
    }
    Ok(())
}

fn check_form_values(l: &Lattice) -> Result<(), String> {
    let brute = discriminant_form_values_brute(l).map_err(|e| e.to_string())?;
    let jordan = discriminant_form_values_from_jordan(l).map_err(|e| e.to_string())?;
    if brute != jordan {
        return Err(format!("brute {brute:?} vs jordan {jordan:?}"));
    }
    Ok(())
}

fn small_discriminant(l: &Lattice) -> bool {
    l.is_even() && l.discriminant_group().unwrap().order().to_u64().is_some_and(|n| n <= 10_000)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn jordan_forms_of_random_grams(g in nondegenerate_gram(7, 8)) {
        let l = Lattice::from_gram(g).unwrap();
        prop_assert_eq!(check_jordan(&l), Ok(()));
        if small_discriminant(&l) {
            prop_assert_eq!(check_form_values(&l), Ok(()));
        }
    }

    #[test]
    fn jordan_forms_of_random_even_grams(g in nondegenerate_gram(6, 8)) {
        let mut g = g;
        for i in 0..g.rows() {
            let d = g.get(i, i) * 2;
            g.set(i, i, d);
        }
        prop_assume!(g.det() != 0.into());
        let l = Lattice::from_gram(g).unwrap();
        prop_assert_eq!(check_jordan(&l), Ok(()));
        if small_discriminant(&l) {
            prop_assert_eq!(check_form_values(&l), Ok(()));
        }
    }

    #[test]
    fn jordan_forms_of_root_sums(l in negdef_lattice(12)) {
        prop_assert_eq!(check_jordan(&l), Ok(()));
        if small_discriminant(&l) {
            prop_assert_eq!(check_form_values(&l), Ok(()));
        }
    }
}

#[test]
fn corpus_coinvariant_forms() {
    let failures: Vec<String> = corpus()
        .par_iter()
        .filter_map(|(r, n, gens)| {
            let c = coinvariant_lattice(n, gens).unwrap();
            if c.rank == 0 {
                return None;
            }
            let l = Lattice::from_gram(c.lattice.int_gram().unwrap()).unwrap();
            let mut res = check_jordan(&l);
            if res.is_ok() && small_discriminant(&l) {
                res = check_form_values(&l);
            }
            res.err().map(|e| format!("{}: {e}", r.label))
        })
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}
