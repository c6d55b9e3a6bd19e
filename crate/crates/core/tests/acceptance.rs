mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::corpus;
use k3niem::cases::{footnote_corrections, record, verify_all, DataStatus, Verdict, VerificationReport};
use k3niem::catalog::root_lattice;
use k3niem::embed::{embeds_in_niemeier, exists_primitive_embedding_unimodular, is_k3_picard_negdef};
use k3niem::groups::{generated_coinvariant, invariant_lattice, orbits};
use k3niem::linalg::{smith_normal_form, Int, IntMatrix};
use k3niem::padic::{discriminant_form_values_brute, discriminant_form_values_from_jordan};
use k3niem::{coinvariant_lattice, niemeier, Condition, DiscriminantGroup, Lattice, PermAction, RootKind};
use k3niem::{RootSystem, TargetSignature};
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:?}, limit {limit:?}"))
}

fn invariants(factors: &[u64]) -> DiscriminantGroup {
    DiscriminantGroup::from_cyclic_factors(factors)
}

fn computed_invariants(rep: &VerificationReport, label: &str) -> Result<(usize, DiscriminantGroup), String> {
    let r = rep.get(label).ok_or(format!("{label} missing"))?;
    let rank = r.computed.rank.ok_or(format!("{label}: no rank"))?;
    let disc = r.computed.disc.clone().ok_or(format!("{label}: no discriminant"))?;
    Ok((rank, DiscriminantGroup::from_invariants(disc.into_iter().map(Int::from).collect())))
}

fn catalog() -> Outcome {
    let start = Instant::now();
    for i in 1..=23 {
        let n = niemeier(i).map_err(|e| e.to_string())?;
        let l = &n.lattice;
        ensure(l.rank() == 24 && l.is_even(), format!("N{i} is not rank 24 and even"))?;
        ensure(l.det().abs().is_one(), format!("N{i} has det {}", l.det()))?;
        let found = l.root_components().map_err(|e| e.to_string())?;
        let want = RootSystem::new(n.spec.components.clone());
        ensure(found == want, format!("N{i}: roots {found}, label {want}"))?;
    }
    let n23 = niemeier(23).unwrap().lattice.root_components().unwrap();
    ensure(n23.root_count == 48, "N23 root count")?;
    ensure(niemeier(1).unwrap().spec.label() == "D24", "N1 label")?;
    within(start, Duration::from_secs(30), "catalog")?;
    Ok(format!("23 lattices in {:.1?}", start.elapsed()))
}

fn coinvariant_tables(rep: &VerificationReport, elapsed: Duration) -> Outcome {
    let wanted = |case: usize| [3, 6, 7, 8, 9, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23].contains(&case);
    let reproduced = rep
        .records
        .iter()
        .filter(|r| {
            let case: usize = r.label[4..].split('/').next().unwrap().parse().unwrap_or(0);
            wanted(case)
                && r.data_status == DataStatus::Ok
                && r.verdict.is_match()
                && r.expected.rank.is_some()
                && r.expected.disc.is_some()
        })
        .count();
    ensure(reproduced >= 50, format!("only {reproduced} records reproduce (rank, disc)"))?;
    for (label, rank, disc) in [
        ("Case13/[phi]", 14, invariants(&[4, 4, 4, 4, 2, 2])),
        ("Case22/n=79/H_{79,1}", 19, invariants(&[60, 3])),
        ("Case23/n=81/H_{81,1}", 19, invariants(&[40, 2, 2])),
    ] {
        let got = computed_invariants(rep, label)?;
        ensure(got == (rank, disc.clone()), format!("{label}: {got:?}"))?;
    }
    ensure(rep.summary.gate_passed, "gate failed")?;
    ensure(elapsed < Duration::from_secs(60), format!("suite took {elapsed:?}"))?;
    Ok(format!("{reproduced} records reproduce (rank, disc); suite {elapsed:.1?}"))
}

fn determinants(rep: &VerificationReport) -> Outcome {
    for (label, det) in [
        ("Case19/I'.1/det-matrix", "2^5·3^5·61·109"),
        ("Case21/I.1/det-matrix", "2^6·3^4·23^2·239"),
        ("Case21/III.1/det-matrix-upper", "2^6·3^2·41·9767"),
    ] {
        let r = rep.get(label).ok_or(format!("{label} missing"))?;
        ensure(r.verdict.is_match(), format!("{label}: {:?}", r.verdict))?;
        ensure(r.computed.det.as_deref() == Some(det), format!("{label}: {:?}", r.computed.det))?;
        ensure(r.expected.detclass.is_some() && r.computed.detclass.is_some(), format!("{label}: no class"))?;
    }
    let n81 = rep.get("Case23/n=81/H_{81,1}").ok_or("n=81 missing")?;
    let dc = n81.expected.detclass.ok_or("n=81 has no det K class")?;
    ensure(dc.p == 2 && dc.value == 160 && dc.pm, format!("n=81 class {dc:?}"))?;
    ensure(n81.verdict.is_match() && n81.computed.detclass.is_some(), "n=81 det K class")?;
    Ok("three printed determinants and det K(q_2) of n=81".into())
}

fn embedding() -> Outcome {
    let lat = |label: &str| record(label).unwrap().lattice().unwrap().unwrap();
    let phi0 = lat("Case17/[phi0]");
    let v = is_k3_picard_negdef(&phi0).map_err(|e| e.to_string())?;
    ensure(!v.exists, "Case 17 [phi0] accepted by the K3 criterion")?;
    ensure(embeds_in_niemeier(&phi0).unwrap().exists, "Case 17 [phi0] rejected by the Niemeier criterion")?;
    let s = lat("Case13/S");
    ensure(s.rank() == 19 && s.discriminant_group().unwrap() == invariants(&[4]), "Case 13 S invariants")?;
    ensure(is_k3_picard_negdef(&s).unwrap().exists, "Case 13 S rejected")?;
    let a1 = root_lattice(RootKind::A, 1).unwrap();
    let a13 = Lattice::direct_sum(&vec![a1; 13]).unwrap();
    let c2 = Some(Condition::C2);
    ensure(is_k3_picard_negdef(&a13).unwrap().failing_condition == c2, "13A1 K3")?;
    ensure(embeds_in_niemeier(&a13).unwrap().failing_condition == c2, "13A1 Niemeier")?;
    let v = exists_primitive_embedding_unimodular(&a13, TargetSignature::NIEMEIER).unwrap();
    ensure(v.failing_condition == c2, "13A1 unimodular")?;
    Ok("Case 17 [phi0], Case 13 S, 13A1".into())
}

fn footnotes() -> Outcome {
    let rows = footnote_corrections();
    ensure(rows.len() == 7, format!("{} footnotes", rows.len()))?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.matches).map(|r| r.name.clone()).collect();
    ensure(bad.is_empty(), format!("mismatch: {}", bad.join(", ")))?;
    Ok(rows.iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(" "))
}

fn specials(rep: &VerificationReport) -> Outcome {
    let barth = computed_invariants(rep, "Case22/Barth-9A2")?;
    ensure(barth == (18, invariants(&[3, 3, 3])), format!("Barth {barth:?}"))?;
    let kummer = computed_invariants(rep, "Case23/Kummer-Pi")?;
    ensure(kummer == (16, invariants(&[2; 6])), format!("Kummer {kummer:?}"))?;
    Ok("Barth (18, (Z/3)^3), Kummer (16, (Z/2)^6)".into())
}

fn snf_round_trip() -> Result<(), String> {
    let strategy = (1usize..=24, 1usize..=24).prop_flat_map(|(r, c)| {
        prop::collection::vec(-20i64..=20, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(Int::from).collect()))
    });
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    runner
        .run(&strategy, |m| {
            let s = smith_normal_form(&m);
            prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
            prop_assert!(s.divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
            prop_assert_eq!(smith_normal_form(&s.d).divisors, s.divisors);
            Ok(())
        })
        .map_err(|e| format!("SNF: {e}"))
}

fn properties() -> Outcome {
    let start = Instant::now();
    snf_round_trip()?;
    let c = corpus();
    let bad: Vec<String> = c
        .par_iter()
        .filter_map(|(r, n, gens)| {
            let res = coinvariant_lattice(n, gens).unwrap();
            let mut why = Vec::new();
            if res.rank != 24 - orbits(gens, 24).len() {
                why.push("rank");
            }
            let inv = invariant_lattice(n, gens).unwrap();
            if !n.lattice.orthogonal_complement(&inv).unwrap().same_module(&res.lattice) {
                why.push("complement");
            }
            let split: Vec<Vec<PermAction>> = gens.iter().map(|g| vec![g.clone()]).collect();
            if !generated_coinvariant(n, &split).unwrap().lattice.same_module(&res.lattice) {
                why.push("generated");
            }
            if res.rank > 0 && res.disc.order().to_u64().is_some_and(|o| o <= 10_000) {
                let l = Lattice::from_gram(res.lattice.int_gram().unwrap()).unwrap();
                if discriminant_form_values_brute(&l).unwrap() != discriminant_form_values_from_jordan(&l).unwrap() {
                    why.push("form values");
                }
            }
            (!why.is_empty()).then(|| format!("{}: {}", r.label, why.join(", ")))
        })
        .collect();
    ensure(bad.is_empty(), bad.join("; "))?;
    within(start, Duration::from_secs(300), "property suite")?;
    Ok(format!("1000 SNF cases, {} corpus groups in {:.1?}", c.len(), start.elapsed()))
}

fn misprints(rep: &VerificationReport) -> Outcome {
    let flagged: Vec<_> = rep.records.iter().filter(|r| r.data_status == DataStatus::PaperTypoSuspected).collect();
    let mut data_errors = 0;
    for r in &flagged {
        match &r.verdict {
            Verdict::Match => return Err(format!("{} passed silently", r.label)),
            Verdict::DataError(d) => {
                ensure(d.iter().any(|m| m.contains('(')), format!("{}: no cycle in {d:?}", r.label))?;
                data_errors += 1;
            }
            Verdict::Mismatch(_) => {}
        }
    }
    ensure(data_errors > 0, "no data errors")?;
    Ok(format!("{} flagged records, {data_errors} data errors naming the cycle", flagged.len()))
}

fn report_line(n: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    match &res {
        Ok(m) => println!("criterion {n} PASS {name}: {m}"),
        Err(m) => println!("criterion {n} FAIL {name}: {m}"),
    }
    res.is_ok()
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let rep = verify_all(None).unwrap();
    let elapsed = start.elapsed();
    let results = [
        report_line(1, "catalog soundness", catalog),
        report_line(2, "coinvariant tables", || coinvariant_tables(&rep, elapsed)),
        report_line(3, "determinant congruences", || determinants(&rep)),
        report_line(4, "embedding criteria", embedding),
        report_line(5, "footnote corrections", footnotes),
        report_line(6, "special lattices", || specials(&rep)),
        report_line(7, "property suites", properties),
        report_line(8, "misprints reported", || misprints(&rep)),
    ];
    let passed = results.iter().filter(|&&b| b).count();
    println!("acceptance: {passed}/8 criteria pass");
    assert_eq!(passed, 8);
}
