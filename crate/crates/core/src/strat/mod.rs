//! Standard and costandard modules, stratification and filtration tests.

mod classify;
mod invariants;
mod tilting;
pub mod verify;

pub use classify::{classify, is_symmetric_algebra, ClassificationReport, Flag};
pub use invariants::{invariant_isomorphic, AlgebraInvariants, InvariantComparison};
pub use tilting::{characteristic_tilting, ringel_dual, ringel_dual_with_order, summands_match, RingelDual, TiltingData};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::AssocAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::homology::ext_dim;
use crate::matrix::Subspace;
use crate::module::{ModuleRep, Submodule};

/// A total order on the vertices: `order[k]` is the vertex in stratum `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IdempotentOrder(Vec<usize>);

impl IdempotentOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidOrder(format!("{order:?} is not a permutation of 0..{n}")));
            }
            seen[v] = true;
        }
        Ok(IdempotentOrder(order))
    }

    pub fn natural(n: usize) -> Self {
        IdempotentOrder((0..n).collect())
    }

    /// From 1-based vertex labels.
    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        if order.contains(&0) {
            return Err(Error::InvalidOrder("vertices are numbered from 1".into()));
        }
        Self::new(order.iter().map(|v| v - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn vertex(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn position(&self, v: usize) -> usize {
        self.0.iter().position(|&w| w == v).expect("vertex in order")
    }

    pub fn reversed(&self) -> Self {
        IdempotentOrder(self.0.iter().rev().copied().collect())
    }

    /// Vertices strictly above `v`.
    pub fn above(&self, v: usize) -> &[usize] {
        &self.0[self.position(v) + 1..]
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    /// All orders on `n` vertices in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(IdempotentOrder(cur.clone()));
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

impl fmt::Display for IdempotentOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for IdempotentOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: std::result::Result<Vec<usize>, _> = t.split(',').map(|x| x.trim().parse::<usize>()).collect();
        Self::from_one_based(&v.map_err(|_| Error::InvalidOrder(format!("cannot parse order {s:?}")))?)
    }
}

/// Outcome of a stratification test; the failing layer is a 1-based stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratVerdict {
    pub holds: bool,
    pub failing_layer: Option<usize>,
    pub opposite_side: bool,
}

impl StratVerdict {
    fn pass() -> Self {
        StratVerdict {
            holds: true,
            failing_layer: None,
            opposite_side: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StratifiedData<F: Field> {
    pub algebra: Arc<AssocAlgebra<F>>,
    pub order: IdempotentOrder,
    /// Indexed by vertex.
    pub delta: Vec<ModuleRep<F>>,
    pub proper_delta: Vec<ModuleRep<F>>,
    pub nabla: Vec<ModuleRep<F>>,
    pub proper_nabla: Vec<ModuleRep<F>>,
    /// The standard families of the opposite algebra with the same order.
    pub delta_op: Vec<ModuleRep<F>>,
    pub proper_delta_op: Vec<ModuleRep<F>>,
    pub standardly: StratVerdict,
    pub properly: StratVerdict,
}

/// Submodule generated by the components of `m` at the given vertices,
/// i.e. the trace of the corresponding projectives.
pub fn trace_of_vertices<F: Field>(m: &ModuleRep<F>, vertices: &[usize]) -> Submodule<F> {
    let f = m.field();
    let mut gens = Vec::new();
    for &v in vertices {
        for k in 0..m.dims()[v] {
            let mut e = vec![f.zero(); m.dims()[v]];
            e[k] = f.one();
            gens.push((v, e));
        }
    }
    m.generate(&gens)
}

pub fn standard_modules<F: Field>(a: &Arc<AssocAlgebra<F>>, order: &IdempotentOrder) -> Vec<ModuleRep<F>> {
    (0..a.n_vertices())
        .map(|v| {
            let p = ModuleRep::projective(a, v);
            let t = trace_of_vertices(&p, order.above(v));
            p.quotient(&t).expect("trace is a submodule")
        })
        .collect()
}

/// `Delta(i) / trace(P(i), rad Delta(i))`.
pub fn proper_standard_modules<F: Field>(delta: &[ModuleRep<F>]) -> Vec<ModuleRep<F>> {
    delta
        .iter()
        .enumerate()
        .map(|(v, d)| {
            let rad = d.radical();
            let gens: Vec<(usize, Vec<F::Elem>)> = rad.parts[v]
                .basis()
                .row_vecs()
                .into_iter()
                .map(|r| (v, r))
                .collect();
            d.quotient(&d.generate(&gens)).expect("generated submodule")
        })
        .collect()
}

/// Greedy peeling of `m` by the family `theta`: at each stratum from the top,
/// the trace of `P(v)` must be a direct sum of copies of `theta[v]`.
/// Returns multiplicities, or the failing 0-based stratum.
pub fn peel<F: Field>(
    m: &ModuleRep<F>,
    order: &IdempotentOrder,
    theta: &[ModuleRep<F>],
) -> std::result::Result<Vec<usize>, usize> {
    let mut cur = m.clone();
    let mut mult = vec![0; order.len()];
    for k in (0..order.len()).rev() {
        let v = order.vertex(k);
        if cur.dims()[v] == 0 {
            continue;
        }
        let u = trace_of_vertices(&cur, &[v]);
        let um = cur.submodule(&u).expect("trace is a submodule");
        let top = um.top_dims();
        let mv = top[v];
        if top.iter().sum::<usize>() != mv || um.dim() != mv * theta[v].dim() {
            return Err(k);
        }
        mult[v] = mv;
        cur = cur.quotient(&u).expect("trace is a submodule");
    }
    debug_assert!(cur.is_zero());
    Ok(mult)
}

fn standardly_by_peeling<F: Field>(
    a: &Arc<AssocAlgebra<F>>,
    order: &IdempotentOrder,
    delta: &[ModuleRep<F>],
) -> Option<usize> {
    let mut worst: Option<usize> = None;
    for v in 0..a.n_vertices() {
        if let Err(k) = peel(&ModuleRep::projective(a, v), order, delta) {
            worst = Some(worst.map_or(k, |w: usize| w.max(k)));
        }
    }
    worst
}

fn verdicts<F: Field>(
    a: &Arc<AssocAlgebra<F>>,
    order: &IdempotentOrder,
    delta: &[ModuleRep<F>],
    delta_op: &[ModuleRep<F>],
) -> (StratVerdict, StratVerdict) {
    let std = match standardly_by_peeling(a, order, delta) {
        None => StratVerdict::pass(),
        Some(k) => StratVerdict {
            holds: false,
            failing_layer: Some(k + 1),
            opposite_side: false,
        },
    };
    if !std.holds {
        return (std.clone(), std);
    }
    let proper = match standardly_by_peeling(&a.opposite(), order, delta_op) {
        None => StratVerdict::pass(),
        Some(k) => StratVerdict {
            holds: false,
            failing_layer: Some(k + 1),
            opposite_side: true,
        },
    };
    (std, proper)
}

/// Standardly and properly stratified verdicts for one order.
pub fn stratification_check<F: Field>(
    a: &Arc<AssocAlgebra<F>>,
    order: &IdempotentOrder,
) -> Result<(StratVerdict, StratVerdict)> {
    check_len(a, order)?;
    let delta = standard_modules(a, order);
    let delta_op = standard_modules(&a.opposite(), order);
    Ok(verdicts(a, order, &delta, &delta_op))
}

fn check_len<F: Field>(a: &AssocAlgebra<F>, order: &IdempotentOrder) -> Result<()> {
    if order.len() != a.n_vertices() {
        return Err(Error::InvalidOrder(format!(
            "order {order} has {} entries for {} vertices",
            order.len(),
            a.n_vertices()
        )));
    }
    Ok(())
}

pub fn standard_family<F: Field>(a: &Arc<AssocAlgebra<F>>, order: &IdempotentOrder) -> Result<StratifiedData<F>> {
    check_len(a, order)?;
    let op = a.opposite();
    let delta = standard_modules(a, order);
    let proper_delta = proper_standard_modules(&delta);
    let delta_op = standard_modules(&op, order);
    let proper_delta_op = proper_standard_modules(&delta_op);
    let nabla = delta_op.iter().map(|d| d.dual()).collect();
    let proper_nabla = proper_delta_op.iter().map(|d| d.dual()).collect();
    let (standardly, properly) = verdicts(a, order, &delta, &delta_op);
    Ok(StratifiedData {
        algebra: Arc::clone(a),
        order: order.clone(),
        delta,
        proper_delta,
        nabla,
        proper_nabla,
        delta_op,
        proper_delta_op,
        standardly,
        properly,
    })
}

/// Every order with its verdicts; guarded to at most seven vertices.
pub fn find_stratifying_orders<F: Field>(
    a: &Arc<AssocAlgebra<F>>,
) -> Result<Vec<(IdempotentOrder, StratVerdict, StratVerdict)>> {
    let n = a.n_vertices();
    if n > 7 {
        return Err(Error::TooManyIdempotents(n));
    }
    IdempotentOrder::all(n)
        .into_iter()
        .map(|o| stratification_check(a, &o).map(|(s, p)| (o, s, p)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Delta,
    ProperDelta,
    Nabla,
    ProperNabla,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Delta => "delta",
            Family::ProperDelta => "proper_delta",
            Family::Nabla => "nabla",
            Family::ProperNabla => "proper_nabla",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationVerdict {
    pub family: Family,
    pub member: bool,
    pub ext_route: Option<bool>,
    pub peeling_route: Option<bool>,
    /// Multiplicities by vertex, from the peeling route.
    pub multiplicities: Option<Vec<usize>>,
    /// 1-based stratum where peeling stopped.
    pub failing_layer: Option<usize>,
    /// 1-based vertex whose Ext^1 test failed.
    pub ext_obstruction: Option<usize>,
}

impl<F: Field> StratifiedData<F> {
    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn family(&self, fam: Family) -> &[ModuleRep<F>] {
        match fam {
            Family::Delta => &self.delta,
            Family::ProperDelta => &self.proper_delta,
            Family::Nabla => &self.nabla,
            Family::ProperNabla => &self.proper_nabla,
        }
    }

    /// Ext^1 criterion; `Some(v)` names an obstructing vertex.
    fn ext_obstruction(&self, m: &ModuleRep<F>, fam: Family) -> Result<Option<usize>> {
        for v in 0..self.n() {
            let d = match fam {
                Family::Delta => ext_dim(m, &self.proper_nabla[v], 1)?,
                Family::ProperDelta => ext_dim(m, &self.nabla[v], 1)?,
                Family::ProperNabla => ext_dim(&self.delta[v], m, 1)?,
                Family::Nabla => ext_dim(&self.proper_delta[v], m, 1)?,
            };
            if d != 0 {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    fn peeling(&self, m: &ModuleRep<F>, fam: Family) -> Option<std::result::Result<Vec<usize>, usize>> {
        match fam {
            Family::Delta => Some(peel(m, &self.order, &self.delta)),
            Family::Nabla => Some(peel(&m.dual(), &self.order, &self.delta_op)),
            _ => None,
        }
    }
}

/// Membership of `m` in `F(family)`. The Ext route runs when the algebra is
/// properly stratified; the peeling route exists for `Delta` and `Nabla`.
pub fn in_filtration_category<F: Field>(
    m: &ModuleRep<F>,
    fam: Family,
    s: &StratifiedData<F>,
) -> Result<FiltrationVerdict> {
    if !Arc::ptr_eq(m.algebra(), &s.algebra) && m.algebra().fingerprint() != s.algebra.fingerprint() {
        return Err(Error::AlgebraMismatch);
    }
    let ext = if s.properly.holds { Some(s.ext_obstruction(m, fam)?) } else { None };
    let peel = s.peeling(m, fam);
    let ext_route = ext.map(|o| o.is_none());
    let peeling_route = peel.as_ref().map(|r| r.is_ok());
    if let (Some(e), Some(p)) = (ext_route, peeling_route) {
        if e != p {
            return Err(Error::RoutesDisagree {
                family: fam.to_string(),
                ext: e,
                peeling: p,
            });
        }
    }
    let member = match (ext_route, peeling_route) {
        (Some(e), _) => e,
        (None, Some(p)) => p,
        (None, None) => {
            return Err(Error::HypothesisNotMet(format!(
                "membership in F({fam}) needs a properly stratified algebra"
            )))
        }
    };
    Ok(FiltrationVerdict {
        family: fam,
        member,
        ext_route,
        peeling_route,
        multiplicities: peel.as_ref().and_then(|r| r.as_ref().ok().cloned()),
        failing_layer: peel.as_ref().and_then(|r| r.as_ref().err().map(|k| k + 1)),
        ext_obstruction: ext.flatten().map(|v| v + 1),
    })
}

/// Delta-multiplicities by vertex from the peeling route.
pub fn delta_multiplicities<F: Field>(m: &ModuleRep<F>, s: &StratifiedData<F>) -> Result<Vec<usize>> {
    peel(m, &s.order, &s.delta).map_err(|k| Error::NotFiltered { layer: k + 1 })
}

/// `A / A(sum of e_v for v in vertices)A`, with the remaining vertices in
/// increasing order. Returns `None` when every vertex is killed.
pub fn idempotent_quotient<F: Field>(
    a: &AssocAlgebra<F>,
    vertices: &[usize],
) -> Result<Option<Arc<AssocAlgebra<F>>>> {
    let keep: Vec<usize> = (0..a.n_vertices()).filter(|v| !vertices.contains(v)).collect();
    if keep.is_empty() {
        return Ok(None);
    }
    let d = a.dim();
    let f = a.field();
    // A e A is spanned by products of words through a killed vertex
    let mut vecs = Vec::new();
    for r in 0..d {
        if !vertices.contains(&a.word(r).target) {
            continue;
        }
        for s in 0..d {
            if a.word(s).source == a.word(r).target {
                let mut v = vec![f.zero(); d];
                for (t, c) in a.basis_mul(r, s) {
                    v[*t] = c.clone();
                }
                vecs.push(v);
            }
        }
    }
    let ideal = Subspace::from_vecs(f, d, &vecs);
    let raw = a.to_raw();
    let q = raw.quotient(&ideal)?;
    let kept_cols = ideal.complement_units();
    let idems: Vec<Vec<F::Elem>> = keep
        .iter()
        .map(|&v| {
            let e = a.idempotent(v);
            let c: Vec<F::Elem> = ideal.pivots().iter().map(|&p| e[p].clone()).collect();
            let sub = ideal.basis().vec_mul(&c);
            let w: Vec<F::Elem> = e.iter().zip(&sub).map(|(x, y)| x.sub(y)).collect();
            kept_cols.iter().map(|&k| w[k].clone()).collect()
        })
        .collect();
    Ok(Some(Arc::new(AssocAlgebra::from_raw(&q, &idems, None)?.algebra)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_parse_and_enumerate() {
        let o: IdempotentOrder = "(3, 1,2)".parse().unwrap();
        assert_eq!(o.vertices(), &[2, 0, 1]);
        assert_eq!(o.to_string(), "(3,1,2)");
        assert_eq!(o.above(2), &[0, 1]);
        assert_eq!(o.reversed().to_one_based(), vec![2, 1, 3]);
        assert!("(1,1)".parse::<IdempotentOrder>().is_err());
        assert!("(1,x)".parse::<IdempotentOrder>().is_err());
        let all = IdempotentOrder::all(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], IdempotentOrder::natural(4));
        assert_eq!(all[23], IdempotentOrder::natural(4).reversed());
    }
}
