use std::sync::Arc;

use serde_json::json;
use stratikit::families::{centraliser_algebra, chain_module, catalogue_example, truncated_polynomial};
use stratikit::hom::endomorphism_algebra;
use stratikit::strat::verify::{verify, Outcome, PropertyId, Transcript, VerifyInput};
use stratikit::strat::{idempotent_quotient, ringel_dual};
use stratikit::*;

const CUT: usize = 12;

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn settings() -> Settings {
    Settings::default()
}

fn iso<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> bool {
    is_isomorphic(m, n, &settings()).unwrap().decided().unwrap()
}

fn run<F: Field>(p: PropertyId, inp: &VerifyInput<F>) -> Transcript {
    verify(p, inp, &settings(), false).unwrap()
}

fn step<'a>(t: &'a Transcript, name: &str) -> &'a serde_json::Value {
    &t.steps.iter().find(|s| s.name == name).unwrap_or_else(|| panic!("no step {name}")).actual
}

#[test]
fn rad_square_zero_example() {
    let f = fp();
    let ex = catalogue_example(ExampleId::RadSquareZero2v, &f).unwrap();
    let a = &ex.algebra;
    let s = standard_family(a, &IdempotentOrder::natural(2)).unwrap();
    assert!(s.standardly.holds && s.properly.holds);
    assert!(iso(&s.delta[0], &ModuleRep::projective(a, 0)));
    assert!(iso(&s.proper_delta[0], &ModuleRep::simple(a, 0)));
    assert!(!gorenstein_dim(a, CUT).unwrap().value.is_finite());

    let end = endomorphism_algebra(std::slice::from_ref(&s.delta[0])).unwrap().algebra;
    assert_eq!(end.dim(), 2);
    assert_eq!(end.n_vertices(), 1);
    assert_eq!(classify(&end, &settings()).unwrap().frobenius, Flag::Yes);

    let inp = VerifyInput::from_example(ex);
    let t = run(PropertyId::Main, &inp);
    assert_eq!(t.outcome, Outcome::Pass);
    assert_eq!(step(&t, "gorenstein"), &json!(false));
    assert_eq!(step(&t, "T_isomorphic_to_C")["holds"], json!(false));
    assert_eq!(step(&t, "T_in_F_nabla")["member"], json!(false));

    // End(Delta(1)) is Frobenius although A is not Gorenstein
    let t = run(PropertyId::FrobEndo, &inp);
    assert_eq!(t.outcome, Outcome::HypothesisNotMet);
    assert!(t.steps.iter().find(|s| s.name == "End_delta_1_frobenius").unwrap().ok);
}

#[test]
fn recollement_example() {
    let f = fp();
    let ex = catalogue_example(ExampleId::Recollement3v, &f).unwrap();
    let a = &ex.algebra;
    assert_eq!(injective_dim(&ModuleRep::regular(a), CUT), DimensionReport::Finite(2));
    let s = standard_family(a, &ex.order).unwrap();
    assert!(s.properly.holds);
    let p3 = ModuleRep::projective(a, 2);
    assert!(iso(&s.delta[2], &p3));
    assert!(iso(&s.proper_delta[2], &p3));
    assert_eq!(injective_dim(&s.proper_delta[1], CUT), DimensionReport::AboveCutoff(CUT));
}

#[test]
fn gigs_example_properties() {
    let inp = VerifyInput::example(ExampleId::GigsKxy, &fp()).unwrap();
    let c = classify(&inp.algebra, &settings()).unwrap();
    assert_eq!(c.gendo_symmetric, Flag::Yes);
    assert!(!c.minimal_auslander_gorenstein);

    let t = run(PropertyId::Mazov, &inp);
    assert_eq!(t.outcome, Outcome::Pass);
    assert_eq!(step(&t, "pd_T"), &json!({"finite": 2}));
    let ok = t.steps.iter().find(|s| s.name == "gorenstein_dim_equals_2_pd_T").unwrap();
    assert_eq!(ok.actual, json!(4));

    let t = run(PropertyId::DomdimT, &inp);
    assert_eq!(t.outcome, Outcome::Pass);
    assert_eq!(step(&t, "dominant_dim_T"), &json!({"finite": 1}));

    let t = run(PropertyId::RingelGigs, &inp);
    assert_eq!(t.outcome, Outcome::HypothesisNotMet);
}

#[test]
fn centraliser_3_1() {
    let inp = VerifyInput::example(ExampleId::Cent31, &fp()).unwrap();
    let a = &inp.algebra;
    assert_eq!(a.dim(), 6);
    assert_eq!(a.cartan_matrix(), vec![vec![1, 1], vec![1, 3]]);
    let c = classify(a, &settings()).unwrap();
    assert_eq!(c.gorenstein.value, DimensionReport::Finite(2));
    assert_eq!(c.dominant_dim, DimensionReport::Finite(2));
    assert!(c.minimal_auslander_gorenstein);

    let s = standard_family(a, &inp.order).unwrap();
    let t = characteristic_tilting(&s, &settings()).unwrap();
    assert_eq!(ringel_dual(&s, &t).unwrap().algebra.dim(), 9);

    let tr = run(PropertyId::RingelGigs, &inp);
    assert_eq!(tr.outcome, Outcome::Pass, "{tr:?}");
    assert_eq!(step(&tr, "d"), &json!(1));
    assert_eq!(step(&tr, "ringel_dual_dim"), &json!(9));
    assert_eq!(step(&tr, "End_U_of_U_plus_syzygy_dim"), &json!(9));
}

#[test]
fn stratifying_orders() {
    let f = fp();
    // semisimple: K x K x K
    let q = Quiver::new::<&str>(3, &[]).unwrap();
    let ss = Arc::new(compile_bqa(&q, &[], &f, 4).unwrap());
    let all = find_stratifying_orders(&ss).unwrap();
    assert_eq!(all.len(), 6);
    assert!(all.iter().all(|(_, st, pr)| st.holds && pr.holds));

    let cent = VerifyInput::example(ExampleId::Cent31, &f).unwrap();
    let passing: Vec<String> = find_stratifying_orders(&cent.algebra)
        .unwrap()
        .into_iter()
        .filter(|(_, _, p)| p.holds)
        .map(|(o, _, _)| o.to_string())
        .collect();
    assert_eq!(passing, vec!["(2,1)".to_string()]);
    assert_eq!(cent.order.to_string(), "(2,1)");

    let rsz = catalogue_example(ExampleId::RadSquareZero2v, &f).unwrap();
    let v = find_stratifying_orders(&rsz.algebra).unwrap();
    assert!(v.iter().any(|(o, _, p)| o.to_string() == "(1,2)" && p.holds));
}

#[test]
fn self_duality_sweep_small() {
    let f = fp();
    for n in 1..=4 {
        for j in JordanType::all_with_n(n) {
            let inp = VerifyInput::from_jordan(&j, &f).unwrap();
            let t = run(PropertyId::SelfDualCent, &inp);
            assert_eq!(t.outcome, Outcome::Pass, "{j}");
        }
    }
    for (n, parts, expect) in [(2, vec![1], true), (4, vec![1, 3], true), (3, vec![1], false), (3, vec![2], false)] {
        assert_eq!(JordanType::new(n, parts).unwrap().selfdual_criterion(), expect);
    }
}

#[test]
fn schur_and_brauer_blocks() {
    let f = fp();
    for (m, d) in [(2, 2), (3, 4)] {
        let a = catalogue_example(ExampleId::SchurA(m), &f).unwrap().algebra;
        assert_eq!(global_dim(&a, CUT), DimensionReport::Finite(d));
        assert_eq!(dominant_dim_algebra(&a, CUT), DimensionReport::Finite(d));
    }
    for n in 1..=3 {
        let b = catalogue_example(ExampleId::BrauerB(n), &f).unwrap().algebra;
        assert_eq!(classify(&b, &settings()).unwrap().symmetric, Flag::Yes, "B{n}");
    }
    for n in 1..=2 {
        let b = catalogue_example(ExampleId::BrauerB(n), &f).unwrap().algebra;
        let mut m = ModuleRep::simple(&b, n - 1);
        for _ in 0..n {
            m = m.syzygy();
        }
        assert!(iso(&m, &ModuleRep::simple(&b, 0)), "B{n}");
    }
    for m in 2..=3 {
        let ex = catalogue_example(ExampleId::SchurA(m), &f).unwrap();
        let s = standard_family(&ex.algebra, &ex.order).unwrap();
        let t = characteristic_tilting(&s, &settings()).unwrap();
        let r = ringel_dual(&s, &t).unwrap();
        let cmp = invariant_isomorphic(&r.algebra, Some(&r.order), &ex.algebra, Some(&ex.order), &settings()).unwrap();
        assert!(cmp.isomorphic, "A{m}: {cmp:?}");
    }
}

#[test]
fn syzygies_over_truncated_polynomials() {
    let f = fp();
    for n in 2..=5 {
        let u = truncated_polynomial(&f, n).unwrap();
        for k in 1..n {
            let om = chain_module(&u, k).syzygy();
            assert!(iso(&om, &chain_module(&u, n - k)), "n={n} k={k}");
        }
    }
}

#[test]
fn standard_module_facts_on_catalogue() {
    let f = fp();
    for id in ExampleId::catalogue() {
        let ex = catalogue_example(id, &f).unwrap();
        let s = standard_family(&ex.algebra, &ex.order).unwrap();
        if !s.properly.holds {
            continue;
        }
        let n = s.n();
        for i in 0..n {
            // Delta(i) has a filtration by copies of the proper standard at i
            let v = in_filtration_category(&s.delta[i], Family::ProperDelta, &s).unwrap();
            assert!(v.member, "{id} Delta({})", i + 1);
            for j in 0..n {
                for k in 1..=3 {
                    assert_eq!(ext_dim(&s.delta[i], &s.proper_nabla[j], k).unwrap(), 0, "{id}");
                }
            }
        }
        let t = characteristic_tilting(&s, &settings()).unwrap();
        for x in &t.summands {
            assert!(in_filtration_category(x, Family::Delta, &s).unwrap().member, "{id}");
            assert!(in_filtration_category(x, Family::ProperNabla, &s).unwrap().member, "{id}");
            for y in &t.summands {
                for k in 1..=3 {
                    assert_eq!(ext_dim(x, y, k).unwrap(), 0, "{id}");
                }
            }
        }
        assert!(t.pd.is_finite());
        let gor = gorenstein_dim(&ex.algebra, CUT).unwrap().value.is_finite();
        let matched = stratikit::strat::summands_match(&t.summands, &t.cotilting_summands, &settings()).unwrap();
        assert_eq!(matched.is_some(), gor, "{id}");
    }
}

#[test]
fn idempotent_quotients() {
    let f = fp();
    let j = JordanType::new(3, vec![1]).unwrap();
    let g = centraliser_algebra(&j, &f).unwrap();
    // killing U leaves End(U/J) = K
    let q = idempotent_quotient(&g.algebra, &[1]).unwrap().unwrap();
    assert_eq!(q.dim(), 1);
    assert!(idempotent_quotient(&g.algebra, &[0, 1]).unwrap().is_none());
}

#[test]
fn transcripts_serialize_deterministically() {
    let inp = VerifyInput::example(ExampleId::Cent31, &fp()).unwrap();
    let a = serde_json::to_string(&verify(PropertyId::Main, &inp, &settings(), true).unwrap()).unwrap();
    let b = serde_json::to_string(&verify(PropertyId::Main, &inp, &settings(), true).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"witnesses\""));
    let c = serde_json::to_string(&verify(PropertyId::Main, &inp, &settings(), false).unwrap()).unwrap();
    assert!(!c.contains("\"witnesses\""));
}
