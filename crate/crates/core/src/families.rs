//! Named algebras: centraliser algebras of nilpotent matrices, Schur and
//! Brauer blocks, and a few small examples with known invariants.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::json;

use crate::algebra::AssocAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::hom::endomorphism_algebra;
use crate::matrix::Matrix;
use crate::module::{ModuleRep, Submodule};
use crate::quiver::{compile_bqa, BoundQuiverAlgebra, Quiver, Relation, DEFAULT_MAX_LEN};
use crate::raw::RawAlgebra;
use crate::strat::IdempotentOrder;

/// `N = U + sum_i U/J^{p_i}` over `U = K[x]/(x^n)`, with `1 <= p_0 < ... < p_r < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanType {
    n: usize,
    parts: Vec<usize>,
}

impl JordanType {
    pub fn new(n: usize, parts: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] >= w[1]) || parts.iter().any(|&p| p == 0 || p >= n) {
            return Err(Error::InvalidInput(format!(
                "parts {parts:?} must increase strictly inside 1..{}",
                n - 1
            )));
        }
        Ok(JordanType { n, parts })
    }

    /// From Jordan block sizes; repeated sizes collapse.
    pub fn from_partition(blocks: &[usize]) -> Result<Self> {
        let n = blocks.iter().copied().max().ok_or_else(|| Error::InvalidInput("empty partition".into()))?;
        if blocks.contains(&0) {
            return Err(Error::InvalidInput("zero block size".into()));
        }
        let mut parts: Vec<usize> = blocks.iter().copied().filter(|&b| b < n).collect();
        parts.sort_unstable();
        parts.dedup();
        Self::new(n, parts)
    }

    /// From a nilpotent matrix, using the ranks of its powers.
    pub fn from_matrix<F: Field>(x: &Matrix<F>) -> Result<Self> {
        if !x.is_square() || !x.is_nilpotent() {
            return Err(Error::InvalidInput("expected a square nilpotent matrix".into()));
        }
        let d = x.rows();
        let mut ranks = vec![d];
        let mut p = Matrix::identity(x.field(), d);
        while *ranks.last().unwrap() > 0 {
            p = p.mul(x)?;
            ranks.push(p.rank());
        }
        // number of blocks of size >= k is rank(X^{k-1}) - rank(X^k)
        let mut blocks = Vec::new();
        for k in 1..ranks.len() {
            let at_least = ranks[k - 1] - ranks[k];
            let at_least_next = if k + 1 < ranks.len() { ranks[k] - ranks[k + 1] } else { 0 };
            blocks.extend(std::iter::repeat_n(k, at_least - at_least_next));
        }
        Self::from_partition(&blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Lengths of all summands, `U` last.
    pub fn lengths(&self) -> Vec<usize> {
        let mut l = self.parts.clone();
        l.push(self.n);
        l
    }

    /// `p_i = n - p_{r-i}` for all `i`.
    pub fn selfdual_criterion(&self) -> bool {
        let r = self.parts.len();
        (0..r).all(|i| self.parts[i] + self.parts[r - 1 - i] == self.n)
    }

    /// All Jordan types with the given `n`.
    pub fn all_with_n(n: usize) -> Vec<Self> {
        let m = n.saturating_sub(1);
        (0..1u32 << m)
            .map(|mask| {
                let parts = (1..n).filter(|p| mask & (1 << (p - 1)) != 0).collect();
                JordanType { n, parts }
            })
            .collect()
    }

    pub fn expected_dim(&self) -> usize {
        let l = self.lengths();
        l.iter().map(|&s| l.iter().map(|&t| s.min(t)).sum::<usize>()).sum()
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "cent({},{{{}}})", self.n, p.join(","))
    }
}

/// `A = End_U(N)` for a local `U` and summands `N_1, ..., N_r` of `N`, in
/// the order used for the vertices of `A`.
#[derive(Clone, Debug)]
pub struct GendoData<F: Field> {
    pub u: Arc<AssocAlgebra<F>>,
    pub summands: Vec<ModuleRep<F>>,
    pub algebra: Arc<AssocAlgebra<F>>,
}

impl<F: Field> GendoData<F> {
    /// Summands are listed by increasing dimension with `U` last; the
    /// stratifying order puts `U` lowest, then decreasing dimension.
    pub fn default_order(&self) -> IdempotentOrder {
        IdempotentOrder::natural(self.summands.len()).reversed()
    }
}

/// `K[x]/(x^n)` as a path algebra.
pub fn truncated_polynomial<F: Field>(field: &F, n: usize) -> Result<Arc<AssocAlgebra<F>>> {
    if n == 1 {
        let q = Quiver::new::<&str>(1, &[])?;
        return Ok(Arc::new(compile_bqa(&q, &[], field, DEFAULT_MAX_LEN)?));
    }
    let q = Quiver::new(1, &[("x", 1, 1)])?;
    let r = Relation::from_labels(&q, &[(field.one(), vec!["x"; n])])?;
    Ok(Arc::new(compile_bqa(&q, &[r], field, DEFAULT_MAX_LEN)?))
}

/// `rad^k M`.
pub fn radical_power<F: Field>(m: &ModuleRep<F>, k: usize) -> Submodule<F> {
    let mut s = m.full_sub();
    for _ in 0..k {
        s = m.radical_of(&s);
    }
    s
}

/// The chain module `U/J^k` over a local algebra `U`.
pub fn chain_module<F: Field>(u: &Arc<AssocAlgebra<F>>, k: usize) -> ModuleRep<F> {
    let p = ModuleRep::projective(u, 0);
    p.quotient(&radical_power(&p, k)).expect("radical power is a submodule")
}

pub fn centraliser_algebra<F: Field>(j: &JordanType, field: &F) -> Result<GendoData<F>> {
    let u = truncated_polynomial(field, j.n)?;
    let summands: Vec<ModuleRep<F>> = j.lengths().iter().map(|&k| chain_module(&u, k)).collect();
    let end = endomorphism_algebra(&summands)?;
    let prov = json!({"family": "cent", "n": j.n, "parts": j.parts});
    let algebra = Arc::new(Arc::unwrap_or_clone(end.algebra).with_provenance(prov));
    Ok(GendoData { u, summands, algebra })
}

/// The block `A_m`: arrows `a_i: i -> i+1`, `b_i: i+1 -> i`.
pub fn schur_block<F: Field>(m: usize, field: &F) -> Result<BoundQuiverAlgebra<F>> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let mut arrows = Vec::new();
    for i in 1..m {
        arrows.push((format!("a{i}"), i, i + 1));
    }
    for i in 1..m {
        arrows.push((format!("b{i}"), i + 1, i));
    }
    let q = Quiver::new(m, &arrows)?;
    let one = field.one();
    let mut rels = Vec::new();
    if m >= 2 {
        rels.push(Relation::from_labels(&q, &[(one.clone(), vec![format!("b{}", m - 1), format!("a{}", m - 1)])])?);
    }
    for i in 2..m {
        rels.push(Relation::from_labels(
            &q,
            &[
                (one.clone(), vec![format!("b{}", i - 1), format!("a{}", i - 1)]),
                (one.neg(), vec![format!("a{i}"), format!("b{i}")]),
            ],
        )?);
        rels.push(Relation::from_labels(&q, &[(one.clone(), vec![format!("a{}", i - 1), format!("a{i}")])])?);
        rels.push(Relation::from_labels(&q, &[(one.clone(), vec![format!("b{i}"), format!("b{}", i - 1)])])?);
    }
    let mut b = BoundQuiverAlgebra::compile(field, q, rels, DEFAULT_MAX_LEN)?;
    b.algebra = b.algebra.with_provenance(json!({"family": "schur", "m": m}));
    Ok(b)
}

/// `B_n = End(P(1) + ... + P(n))` over `A_{n+1}`.
pub fn brauer_block<F: Field>(n: usize, field: &F) -> Result<Arc<AssocAlgebra<F>>> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let a = Arc::new(schur_block(n + 1, field)?.algebra);
    let ps: Vec<ModuleRep<F>> = (0..n).map(|i| ModuleRep::projective(&a, i)).collect();
    let end = endomorphism_algebra(&ps)?;
    Ok(Arc::new(
        Arc::unwrap_or_clone(end.algebra).with_provenance(json!({"family": "brauer", "n": n})),
    ))
}

/// `U = K[x,y]/(xy, x^2 - y^3)` on the basis `1, x, y, y^2, x^2`.
pub fn kxy_algebra<F: Field>(field: &F) -> Result<(Arc<AssocAlgebra<F>>, Matrix<F>)> {
    // monomials as (x-degree, y-degree) with x^2 = y^3
    let basis = [(0, 0), (1, 0), (0, 1), (0, 2), (2, 0)];
    let reduce = |a: usize, b: usize| -> Option<usize> {
        let (a, b) = if a >= 1 && b >= 1 {
            return None;
        } else if b >= 3 {
            (a + 2, b - 3)
        } else {
            (a, b)
        };
        if a >= 1 && b >= 1 {
            return None;
        }
        basis.iter().position(|&m| m == (a, b))
    };
    let d = basis.len();
    let mut products = Vec::with_capacity(d * d);
    for &(a1, b1) in &basis {
        for &(a2, b2) in &basis {
            let mut v = vec![field.zero(); d];
            if let Some(k) = reduce(a1 + a2, b1 + b2) {
                v[k] = field.one();
            }
            products.push(v);
        }
    }
    let mut unit = vec![field.zero(); d];
    unit[0] = field.one();
    let raw = RawAlgebra::new(field, d, products, unit.clone())?;
    let n = AssocAlgebra::from_raw(&raw, &[unit], Some(json!({"family": "kxy"})))?;
    Ok((Arc::new(n.algebra), n.to_old))
}

/// `B = End_U(U + xU + yU + x^2U)` over `U = K[x,y]/(xy, x^2 - y^3)`, with
/// vertex order `x^2U, xU, yU, U`.
pub fn gigs_kxy<F: Field>(field: &F) -> Result<GendoData<F>> {
    let (u, to_old) = kxy_algebra(field)?;
    let inv = to_old
        .inverse()
        .ok_or_else(|| Error::InternalInconsistency("basis change not invertible".into()))?;
    let elem = |old: usize| -> Vec<F::Elem> {
        let mut v = vec![field.zero(); 5];
        v[old] = field.one();
        inv.vec_mul(&v)
    };
    let reg = ModuleRep::projective(&u, 0);
    // P(1) has the whole algebra as its only vertex space
    let ideal = |old: usize| -> Result<ModuleRep<F>> { reg.submodule(&reg.generate(&[(0, elem(old))])) };
    let summands = vec![ideal(4)?, ideal(1)?, ideal(2)?, reg.clone()];
    let end = endomorphism_algebra(&summands)?;
    let algebra = Arc::new(Arc::unwrap_or_clone(end.algebra).with_provenance(json!({"family": "example", "id": "gigs-kxy"})));
    Ok(GendoData { u, summands, algebra })
}

pub fn rad_square_zero<F: Field>(field: &F) -> Result<BoundQuiverAlgebra<F>> {
    let q = Quiver::new(2, &[("alpha", 1, 1), ("beta", 2, 1)])?;
    let rels = vec![
        Relation::from_labels(&q, &[(field.one(), vec!["alpha", "alpha"])])?,
        Relation::from_labels(&q, &[(field.one(), vec!["beta", "alpha"])])?,
    ];
    let mut b = BoundQuiverAlgebra::compile(field, q, rels, DEFAULT_MAX_LEN)?;
    b.algebra = b.algebra.with_provenance(json!({"family": "example", "id": "rad-square-zero-2v"}));
    Ok(b)
}

pub fn recollement<F: Field>(field: &F) -> Result<BoundQuiverAlgebra<F>> {
    let q = Quiver::new(
        3,
        &[("alpha1", 1, 2), ("beta1", 2, 1), ("alpha2", 2, 3), ("beta2", 3, 2)],
    )?;
    let one = field.one();
    let rels = vec![
        Relation::from_labels(&q, &[(one.clone(), vec!["beta1", "alpha1", "alpha2"])])?,
        Relation::from_labels(&q, &[(one.clone(), vec!["beta2", "beta1", "alpha1"])])?,
        Relation::from_labels(&q, &[(one.clone(), vec!["beta2", "alpha2"])])?,
        Relation::from_labels(
            &q,
            &[
                (one.clone(), vec!["alpha2", "beta2"]),
                (one.neg(), vec!["beta1", "alpha1", "beta1", "alpha1"]),
            ],
        )?,
    ];
    let mut b = BoundQuiverAlgebra::compile(field, q, rels, DEFAULT_MAX_LEN)?;
    b.algebra = b.algebra.with_provenance(json!({"family": "example", "id": "recollement-3v"}));
    Ok(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleId {
    RadSquareZero2v,
    Recollement3v,
    GigsKxy,
    Cent31,
    SchurA(usize),
    BrauerB(usize),
}

impl ExampleId {
    pub fn catalogue() -> Vec<ExampleId> {
        vec![
            ExampleId::RadSquareZero2v,
            ExampleId::Recollement3v,
            ExampleId::GigsKxy,
            ExampleId::Cent31,
            ExampleId::SchurA(2),
            ExampleId::SchurA(3),
            ExampleId::BrauerB(1),
            ExampleId::BrauerB(2),
        ]
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleId::RadSquareZero2v => write!(f, "rad-square-zero-2v"),
            ExampleId::Recollement3v => write!(f, "recollement-3v"),
            ExampleId::GigsKxy => write!(f, "gigs-kxy"),
            ExampleId::Cent31 => write!(f, "cent-3-1"),
            ExampleId::SchurA(m) => write!(f, "schur-A{m}"),
            ExampleId::BrauerB(n) => write!(f, "brauer-B{n}"),
        }
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let num = |rest: &str| -> Option<usize> {
            rest.trim_start_matches('(').trim_end_matches(')').parse().ok()
        };
        match t {
            "rad-square-zero-2v" => return Ok(ExampleId::RadSquareZero2v),
            "recollement-3v" => return Ok(ExampleId::Recollement3v),
            "gigs-kxy" => return Ok(ExampleId::GigsKxy),
            "cent-3-1" => return Ok(ExampleId::Cent31),
            _ => {}
        }
        if let Some(m) = t.strip_prefix("schur-A").and_then(num).filter(|&m| m >= 1) {
            return Ok(ExampleId::SchurA(m));
        }
        if let Some(n) = t.strip_prefix("brauer-B").and_then(num).filter(|&n| n >= 1) {
            return Ok(ExampleId::BrauerB(n));
        }
        Err(Error::InvalidInput(format!("unknown example {t:?}")))
    }
}

/// An example algebra together with the invariants it is known to have.
#[derive(Clone, Debug)]
pub struct Example<F: Field> {
    pub id: ExampleId,
    pub algebra: Arc<AssocAlgebra<F>>,
    pub order: IdempotentOrder,
    pub gendo: Option<GendoData<F>>,
    pub manifest: serde_json::Value,
}

pub fn catalogue_example<F: Field>(id: ExampleId, field: &F) -> Result<Example<F>> {
    let (algebra, gendo, manifest) = match id {
        ExampleId::RadSquareZero2v => (
            Arc::new(rad_square_zero(field)?.algebra),
            None,
            json!({"dim": 4, "properly_stratified": true, "gorenstein": false, "end_delta1_dim": 2}),
        ),
        ExampleId::Recollement3v => (
            Arc::new(recollement(field)?.algebra),
            None,
            json!({"right_injective_dim": 2, "proper_standard_2_injective_dim": "above_cutoff"}),
        ),
        ExampleId::GigsKxy => {
            let g = gigs_kxy(field)?;
            (
                Arc::clone(&g.algebra),
                Some(g),
                json!({"gorenstein_dim": 4, "dominant_dim": 2, "global_dim": "above_cutoff", "gendo_symmetric": true}),
            )
        }
        ExampleId::Cent31 => {
            let g = centraliser_algebra(&JordanType::new(3, vec![1])?, field)?;
            (
                Arc::clone(&g.algebra),
                Some(g),
                json!({"dim": 6, "cartan": [[1, 1], [1, 3]], "gorenstein_dim": 2, "dominant_dim": 2, "ringel_dual_dim": 9}),
            )
        }
        ExampleId::SchurA(m) => (
            Arc::new(schur_block(m, field)?.algebra),
            None,
            json!({"global_dim": 2 * (m - 1), "dominant_dim": 2 * (m - 1)}),
        ),
        ExampleId::BrauerB(n) => (brauer_block(n, field)?, None, json!({"symmetric": true})),
    };
    let order = match &gendo {
        Some(g) => g.default_order(),
        None => IdempotentOrder::natural(algebra.n_vertices()),
    };
    Ok(Example {
        id,
        algebra,
        order,
        gendo,
        manifest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn jordan_type_validation() {
        assert!(JordanType::new(0, vec![]).is_err());
        assert!(JordanType::new(3, vec![2, 1]).is_err());
        assert!(JordanType::new(3, vec![3]).is_err());
        let j = JordanType::from_partition(&[3, 1, 1]).unwrap();
        assert_eq!(j, JordanType::new(3, vec![1]).unwrap());
        assert_eq!(j.to_string(), "cent(3,{1})");
        assert_eq!(j.lengths(), vec![1, 3]);
        assert_eq!(j.expected_dim(), 6);
    }

    #[test]
    fn jordan_types_enumerate_subsets() {
        for n in 1..=5 {
            let all = JordanType::all_with_n(n);
            assert_eq!(all.len(), 1 << (n - 1));
            assert!(all.iter().all(|j| JordanType::new(j.n(), j.parts().to_vec()).is_ok()));
        }
        assert!(JordanType::new(5, vec![]).unwrap().selfdual_criterion());
        assert!(JordanType::new(5, vec![2, 3]).unwrap().selfdual_criterion());
        assert!(!JordanType::new(5, vec![1, 3]).unwrap().selfdual_criterion());
    }

    #[test]
    fn example_ids_round_trip() {
        for id in ExampleId::catalogue() {
            assert_eq!(id.to_string().parse::<ExampleId>().unwrap(), id);
        }
        assert!("no-such-example".parse::<ExampleId>().is_err());
    }

    #[test]
    fn truncated_polynomial_is_local() {
        let f = PrimeField::new(101).unwrap();
        let u = truncated_polynomial(&f, 4).unwrap();
        assert_eq!(u.dim(), 4);
        assert_eq!(u.n_vertices(), 1);
        assert_eq!(chain_module(&u, 2).dim(), 2);
    }
}
