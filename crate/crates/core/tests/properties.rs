use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stratikit::families::{centraliser_algebra, catalogue_example};
use stratikit::hom::{dim_hom, split_indecomposables};
use stratikit::io::AlgebraFile;
use stratikit::*;

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn catalogue() -> &'static Vec<(ExampleId, Arc<AssocAlgebra<PrimeField>>)> {
    static CAT: OnceLock<Vec<(ExampleId, Arc<AssocAlgebra<PrimeField>>)>> = OnceLock::new();
    CAT.get_or_init(|| {
        ExampleId::catalogue()
            .into_iter()
            .map(|id| (id, catalogue_example(id, &f101()).unwrap().algebra))
            .collect()
    })
}

fn pick(k: usize) -> &'static Arc<AssocAlgebra<PrimeField>> {
    let c = catalogue();
    &c[k % c.len()].1
}

fn random_pair(k: usize, seed: u64) -> (ModuleRep<PrimeField>, ModuleRep<PrimeField>) {
    let a = pick(k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (ModuleRep::random(a, &mut rng), ModuleRep::random(a, &mut rng))
}

fn iso(m: &ModuleRep<PrimeField>, n: &ModuleRep<PrimeField>) -> bool {
    is_isomorphic(m, n, &Settings::default()).unwrap().decided().unwrap()
}

fn jordan_matrix(blocks: &[usize]) -> Matrix<PrimeField> {
    let f = f101();
    let parts: Vec<Matrix<PrimeField>> = blocks
        .iter()
        .map(|&b| {
            let mut m = Matrix::zeros(&f, b, b);
            for i in 0..b.saturating_sub(1) {
                m.set(i, i + 1, f.one());
            }
            m
        })
        .collect();
    Matrix::block_diag(&f, &parts)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn double_dual_is_identity(k in 0usize..8, seed in any::<u64>()) {
        let (m, _) = random_pair(k, seed);
        prop_assert!(iso(&m.dual().dual(), &m));
    }

    #[test]
    fn projective_cover_dimensions(k in 0usize..8, seed in any::<u64>()) {
        let (m, _) = random_pair(k, seed);
        let (p, _, omega) = m.projective_cover();
        prop_assert_eq!(p.dim(), m.dim() + omega.dim());
        prop_assert_eq!(p.top_dims(), m.top_dims());
    }

    #[test]
    fn ext_duality(k in 0usize..8, seed in any::<u64>(), i in 0usize..3) {
        let (m, n) = random_pair(k, seed);
        prop_assert_eq!(ext_dim(&m, &n, i).unwrap(), ext_dim(&n.dual(), &m.dual(), i).unwrap());
    }

    #[test]
    fn hom_is_additive(k in 0usize..8, seed in any::<u64>()) {
        let (m, n) = random_pair(k, seed);
        let a = pick(k);
        let sum = ModuleRep::direct_sum(a, &[m.clone(), n.clone()]);
        let x = ModuleRep::regular(a);
        prop_assert_eq!(dim_hom(&sum, &x).unwrap(), dim_hom(&m, &x).unwrap() + dim_hom(&n, &x).unwrap());
        prop_assert_eq!(dim_hom(&x, &sum).unwrap(), dim_hom(&x, &m).unwrap() + dim_hom(&x, &n).unwrap());
    }

    #[test]
    fn decomposition_reassembles(k in 0usize..8, seed in any::<u64>()) {
        let (m, _) = random_pair(k, seed);
        let parts: Vec<_> = split_indecomposables(&m, &Settings::default()).unwrap().into_iter().map(|s| s.module).collect();
        prop_assert_eq!(parts.iter().map(|p| p.dim()).sum::<usize>(), m.dim());
        prop_assert!(iso(&ModuleRep::direct_sum(pick(k), &parts), &m));
    }

    #[test]
    fn jordan_type_from_matrix(blocks in proptest::collection::vec(1usize..6, 1..5)) {
        let j = JordanType::from_matrix(&jordan_matrix(&blocks)).unwrap();
        prop_assert_eq!(j, JordanType::from_partition(&blocks).unwrap());
    }

    #[test]
    fn centraliser_dimension_formula(n in 1usize..5, mask in any::<u32>()) {
        let parts: Vec<usize> = (1..n).filter(|p| mask & (1 << p) != 0).collect();
        let j = JordanType::new(n, parts).unwrap();
        let g = centraliser_algebra(&j, &f101()).unwrap();
        prop_assert_eq!(g.algebra.dim(), j.expected_dim());
        prop_assert_eq!(g.algebra.n_vertices(), j.parts().len() + 1);
    }

    #[test]
    fn order_round_trip(perm in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let o = IdempotentOrder::from_one_based(&perm).unwrap();
        prop_assert_eq!(o.to_string().parse::<IdempotentOrder>().unwrap(), o.clone());
        prop_assert_eq!(o.reversed().reversed(), o);
    }

    #[test]
    fn structure_json_round_trip(k in 0usize..8) {
        let a = pick(k);
        let file = AlgebraFile::from_algebra(a, None, None);
        let back = AlgebraFile::from_json(&file.to_json()).unwrap().algebra(&f101()).unwrap();
        prop_assert!(*back == **a);
    }

    #[test]
    fn rational_scalars_round_trip(num in -1000i64..1000, den in 1i64..1000) {
        let q = Rationals;
        let x = q.parse(&format!("{num}/{den}")).unwrap();
        prop_assert_eq!(q.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn rank_nullity(vals in proptest::collection::vec(-3i64..4, 12)) {
        let m = Matrix::from_i64(&f101(), 3, 4, &vals).unwrap();
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), 4);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }
}
