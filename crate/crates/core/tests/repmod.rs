use std::sync::Arc;

use stratikit::{
    compile_bqa, decompose, dim_hom, endomorphism_algebra, hom_basis, is_isomorphic, trace_submodule, AssocAlgebra,
    Field, ModuleRep, PrimeField, Quiver, Rationals, Relation, Settings, Submodule,
};

fn truncated<F: Field>(f: &F, n: usize) -> Arc<AssocAlgebra<F>> {
    if n == 1 {
        let q = Quiver::new::<&str>(1, &[]).unwrap();
        return Arc::new(compile_bqa(&q, &[], f, 30).unwrap());
    }
    let q = Quiver::new(1, &[("x", 1, 1)]).unwrap();
    let r = Relation::from_labels(&q, &[(f.one(), vec!["x"; n])]).unwrap();
    Arc::new(compile_bqa(&q, &[r], f, 30).unwrap())
}

fn rsz<F: Field>(f: &F) -> Arc<AssocAlgebra<F>> {
    let q = Quiver::new(2, &[("a", 1, 1), ("b", 2, 1)]).unwrap();
    let rels = vec![
        Relation::from_labels(&q, &[(f.one(), vec!["a", "a"])]).unwrap(),
        Relation::from_labels(&q, &[(f.one(), vec!["b", "a"])]).unwrap(),
    ];
    Arc::new(compile_bqa(&q, &rels, f, 30).unwrap())
}

fn rad_power<F: Field>(m: &ModuleRep<F>, k: usize) -> Submodule<F> {
    let mut s = m.full_sub();
    for _ in 0..k {
        s = m.radical_of(&s);
    }
    s
}

/// U / J^k over K[x]/(x^n).
fn chain<F: Field>(a: &Arc<AssocAlgebra<F>>, k: usize) -> ModuleRep<F> {
    let u = ModuleRep::projective(a, 0);
    u.quotient(&rad_power(&u, k)).unwrap()
}

fn iso<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> bool {
    is_isomorphic(m, n, &Settings::default()).unwrap().decided().unwrap()
}


fn run_all<T>(q: impl Fn(&Rationals) -> T, p: impl Fn(&PrimeField) -> T) {
    q(&Rationals);
    p(&PrimeField::new(32003).unwrap());
    p(&PrimeField::new(101).unwrap());
}

fn catalogue<F: Field>(f: &F) {
    let a = truncated(f, 3);
    let p = ModuleRep::projective(&a, 0);
    let i = ModuleRep::injective(&a, 0);
    assert_eq!((p.dim(), i.dim(), ModuleRep::simple(&a, 0).dim()), (3, 3, 1));
    assert!(p.is_injective());
    assert!(Arc::ptr_eq(i.algebra(), &a));
    let b = rsz(f);
    assert_eq!(ModuleRep::projective(&b, 0).dim(), 2);
    assert_eq!(ModuleRep::projective(&b, 1).dim(), 2);
}

#[test]
fn module_catalogue() {
    run_all(catalogue, catalogue);
}

fn homs<F: Field>(f: &F) {
    for n in 1..=6 {
        let a = truncated(f, n);
        for k in 1..=n {
            for t in 1..=n {
                assert_eq!(dim_hom(&chain(&a, k), &chain(&a, t)).unwrap(), k.min(t), "n={n} k={k} t={t}");
            }
        }
    }
    let b = rsz(f);
    let s1 = ModuleRep::simple(&b, 0);
    let p1 = ModuleRep::projective(&b, 0);
    assert_eq!(dim_hom(&s1, &p1).unwrap(), 1);
    for h in hom_basis(&p1, &p1).unwrap() {
        assert!(stratikit::hom::is_homomorphism(&p1, &p1, &h));
    }
    // Cartan consistency: dim Hom(e_iA, e_jA) = dim e_jAe_i
    let c = b.cartan_matrix();
    for i in 0..2 {
        for j in 0..2 {
            let pi = ModuleRep::projective(&b, i);
            let pj = ModuleRep::projective(&b, j);
            assert_eq!(dim_hom(&pi, &pj).unwrap(), c[j][i]);
        }
    }
}

#[test]
fn hom_dimensions() {
    run_all(homs, homs);
}

fn isos<F: Field>(f: &F) {
    let a = truncated(f, 3);
    let u = ModuleRep::projective(&a, 0);
    assert!(iso(&u, &u));
    let omega = chain(&a, 1).syzygy();
    assert!(iso(&omega, &chain(&a, 2)));
    assert!(!iso(&chain(&a, 1), &chain(&a, 2)));
    let b = rsz(f);
    assert!(!iso(&ModuleRep::simple(&b, 0), &ModuleRep::simple(&b, 1)));
    // D(D(M)) = M
    let p1 = ModuleRep::projective(&b, 0);
    let dd = p1.dual().dual();
    assert!(Arc::ptr_eq(dd.algebra(), &b));
    assert!(iso(&dd, &p1));
    assert!(ModuleRep::zero(&b).dual().is_zero());
}

#[test]
fn isomorphism_tests() {
    run_all(isos, isos);
}

fn subquot<F: Field>(f: &F) {
    let b = rsz(f);
    let p1 = ModuleRep::projective(&b, 0);
    let p2 = ModuleRep::projective(&b, 1);
    assert_eq!(trace_submodule(&p2, &p1).unwrap().dim(), 0);
    assert_eq!(trace_submodule(&p1, &p1).unwrap().dim(), 2);
    let a = truncated(f, 3);
    let u = ModuleRep::projective(&a, 0);
    assert!(iso(&u.quotient(&u.zero_sub()).unwrap(), &u));
    assert!(u.quotient(&u.full_sub()).unwrap().is_zero());
    assert!(iso(&u.quotient(&u.socle()).unwrap(), &chain(&a, 2)));
    assert_eq!(u.radical().dim(), 2);
    assert_eq!(u.socle().dim(), 1);
    let s = ModuleRep::simple(&a, 0);
    assert_eq!((s.radical().dim(), s.top().dim(), s.socle().dim()), (0, 1, 1));
    // bad subspace
    let mut bad = u.zero_sub();
    bad.parts[0] = stratikit::Subspace::from_vecs(f, 3, &[vec![f.one(), f.zero(), f.zero()]]);
    assert!(u.sub_quotient(&bad).is_err());
}

#[test]
fn sub_quotient_radical_socle() {
    run_all(subquot, subquot);
}

fn covers<F: Field>(f: &F) {
    let a = truncated(f, 3);
    let u = ModuleRep::projective(&a, 0);
    assert!(u.syzygy().is_zero());
    let s = chain(&a, 1);
    let (p, _, omega) = s.projective_cover();
    assert_eq!(p.dim(), 3);
    assert!(iso(&omega, &chain(&a, 2)));
    // minimality: kernel inside rad P
    let pres = s.presentation();
    assert!(pres.cover.radical().contains(&pres.kernel));
}

#[test]
fn projective_covers() {
    run_all(covers, covers);
}

fn decomp<F: Field>(f: &F) {
    let st = Settings::default();
    let a = truncated(f, 3);
    let u = ModuleRep::projective(&a, 0);
    let d = decompose(&u, &st).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].1, 1);
    let uu = ModuleRep::direct_sum(&a, &[u.clone(), u.clone()]);
    let d = decompose(&uu, &st).unwrap();
    assert_eq!((d.len(), d[0].1), (1, 2));
    let s = chain(&a, 1);
    let end = endomorphism_algebra(&[s.clone(), u.clone()]).unwrap();
    assert_eq!(end.algebra.dim(), 6);
    assert_eq!(end.algebra.cartan_matrix(), vec![vec![1, 1], vec![1, 3]]);
    let r = &end.algebra;
    let reg = ModuleRep::regular(r);
    let d = decompose(&reg, &st).unwrap();
    let mut dims: Vec<usize> = d.iter().map(|g| g.0.dim()).collect();
    dims.sort();
    assert_eq!(dims, vec![2, 4]);
    assert!(d.iter().all(|g| g.1 == 1));
    let p = [ModuleRep::projective(r, 0), ModuleRep::projective(r, 1)];
    assert!(d.iter().all(|g| p.iter().any(|x| iso(x, &g.0))));
    assert_eq!(endomorphism_algebra(&[s]).unwrap().algebra.dim(), 1);
    // End(Delta(1)) = End(P(1)) = K[x]/(x^2) for the radical square zero example
    let b = rsz(f);
    let e = endomorphism_algebra(&[ModuleRep::projective(&b, 0)]).unwrap().algebra;
    assert_eq!((e.dim(), e.n_vertices(), e.loewy_length()), (2, 1, 2));
}

#[test]
fn decomposition_and_endomorphisms() {
    run_all(decomp, decomp);
}
