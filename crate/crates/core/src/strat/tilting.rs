use std::sync::Arc;

use serde_json::json;

use super::{peel, IdempotentOrder, StratifiedData};
use crate::algebra::AssocAlgebra;
use crate::config::Settings;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hom::{endomorphism_algebra, is_isomorphic, split_indecomposables};
use crate::homology::{ext_dim, projective_dim, universal_extension, DimensionReport};
use crate::module::ModuleRep;

#[derive(Clone, Debug)]
pub struct TiltingData<F: Field> {
    /// `T(v)` by vertex.
    pub summands: Vec<ModuleRep<F>>,
    pub basic: ModuleRep<F>,
    /// `C(v) = D(T_op(v))` by vertex.
    pub cotilting_summands: Vec<ModuleRep<F>>,
    pub cotilting: ModuleRep<F>,
    pub pd: DimensionReport,
    /// Delta-multiplicities of each `T(v)`, by vertex.
    pub multiplicities: Vec<Vec<usize>>,
    pub transcript: Vec<String>,
}

/// `T(v)` for every vertex: extend `Delta(v)` universally by the lower
/// standards, then keep the summand whose peeling contains `v`.
fn tilting_summands<F: Field>(
    a: &Arc<AssocAlgebra<F>>,
    order: &IdempotentOrder,
    delta: &[ModuleRep<F>],
    settings: &Settings,
) -> Result<Vec<(ModuleRep<F>, Vec<usize>)>> {
    let n = order.len();
    let bound = n * a.dim() * a.dim();
    let mut out: Vec<Option<(ModuleRep<F>, Vec<usize>)>> = vec![None; n];
    for k in 0..n {
        let v = order.vertex(k);
        let mut x = delta[v].clone();
        let mut steps = 0;
        for j in (0..k).rev() {
            let w = order.vertex(j);
            while ext_dim(&delta[w], &x, 1)? > 0 {
                x = universal_extension(&x, &delta[w])?.middle;
                steps += 1;
                if steps > bound {
                    return Err(Error::ConstructionDiverged(v + 1));
                }
            }
        }
        let mut found = Vec::new();
        for s in split_indecomposables(&x, settings)? {
            let mult = peel(&s.module, order, delta)
                .map_err(|l| Error::InternalInconsistency(format!("summand of T({}) not in F(delta) at layer {}", v + 1, l + 1)))?;
            if mult[v] > 0 {
                found.push((s.module, mult));
            }
        }
        if found.len() != 1 {
            return Err(Error::InternalInconsistency(format!(
                "{} summands of the extension for T({}) contain Delta({})",
                found.len(),
                v + 1,
                v + 1
            )));
        }
        out[v] = found.pop();
    }
    Ok(out.into_iter().map(|x| x.expect("every vertex visited")).collect())
}

pub fn characteristic_tilting<F: Field>(s: &StratifiedData<F>, settings: &Settings) -> Result<TiltingData<F>> {
    if !s.properly.holds {
        return Err(Error::HypothesisNotMet(format!(
            "order {} is not properly stratified",
            s.order
        )));
    }
    let a = &s.algebra;
    let n = s.n();
    let mut transcript = Vec::new();
    let ts = tilting_summands(a, &s.order, &s.delta, settings)?;
    let (summands, multiplicities): (Vec<_>, Vec<_>) = ts.into_iter().unzip();
    for (v, t) in summands.iter().enumerate() {
        for w in 0..n {
            let e = ext_dim(&s.delta[w], t, 1)?;
            if e != 0 {
                return Err(Error::InternalInconsistency(format!(
                    "Ext^1(Delta({}), T({})) has dimension {e}",
                    w + 1,
                    v + 1
                )));
            }
        }
        transcript.push(format!(
            "T({}): dims {:?}, delta multiplicities {:?}, Ext^1(Delta(j), T({})) = 0 for all j",
            v + 1,
            t.dims(),
            multiplicities[v],
            v + 1
        ));
    }
    let op = a.opposite();
    let ts_op = tilting_summands(&op, &s.order, &s.delta_op, settings)?;
    let cotilting_summands: Vec<ModuleRep<F>> = ts_op.iter().map(|(t, _)| t.dual()).collect();
    for (v, c) in cotilting_summands.iter().enumerate() {
        transcript.push(format!("C({}): dims {:?}", v + 1, c.dims()));
    }
    let pd = summands
        .iter()
        .map(|t| projective_dim(t, settings.cutoff))
        .fold(DimensionReport::Finite(0), DimensionReport::max);
    transcript.push(format!("pd(T) = {pd}"));
    let basic = ModuleRep::direct_sum(a, &summands);
    let cotilting = ModuleRep::direct_sum(a, &cotilting_summands);
    Ok(TiltingData {
        summands,
        basic,
        cotilting_summands,
        cotilting,
        pd,
        multiplicities,
        transcript,
    })
}

/// A bijection `p` with `xs[i] = ys[p[i]]` up to isomorphism, if one exists.
pub fn summands_match<F: Field>(
    xs: &[ModuleRep<F>],
    ys: &[ModuleRep<F>],
    settings: &Settings,
) -> Result<Option<Vec<usize>>> {
    if xs.len() != ys.len() {
        return Ok(None);
    }
    let mut used = vec![false; ys.len()];
    let mut perm = Vec::with_capacity(xs.len());
    for x in xs {
        let mut hit = None;
        for (j, y) in ys.iter().enumerate() {
            if !used[j] && is_isomorphic(x, y, settings)?.decided()? {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => {
                used[j] = true;
                perm.push(j);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(perm))
}

#[derive(Clone, Debug)]
pub struct RingelDual<F: Field> {
    pub algebra: Arc<AssocAlgebra<F>>,
    /// Vertex `k` of the dual is `End` of `T(summand_vertex[k])`.
    pub summand_vertex: Vec<usize>,
    /// Order of the dual under which it is expected to be stratified.
    pub order: IdempotentOrder,
}

/// `End(T)` with the `T(v)` listed by decreasing stratum.
pub fn ringel_dual<F: Field>(s: &StratifiedData<F>, t: &TiltingData<F>) -> Result<RingelDual<F>> {
    ringel_dual_with_order(s, t, s.order.reversed().vertices())
}

pub fn ringel_dual_with_order<F: Field>(
    s: &StratifiedData<F>,
    t: &TiltingData<F>,
    vertices: &[usize],
) -> Result<RingelDual<F>> {
    IdempotentOrder::new(vertices.to_vec())?;
    let list: Vec<ModuleRep<F>> = vertices.iter().map(|&v| t.summands[v].clone()).collect();
    let end = endomorphism_algebra(&list)?;
    let prov = json!({
        "ringel_dual_of": s.algebra.provenance().cloned().unwrap_or(serde_json::Value::Null),
        "summand_vertices": vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
    });
    Ok(RingelDual {
        algebra: Arc::new(Arc::unwrap_or_clone(end.algebra).with_provenance(prov)),
        summand_vertex: vertices.to_vec(),
        order: IdempotentOrder::natural(vertices.len()),
    })
}
