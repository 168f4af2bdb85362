//! Minimal projective resolutions, Ext with explicit cocycles, homological
//! dimensions and universal extensions.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::AssocAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::hom::HomSpace;
use crate::matrix::{Matrix, Subspace};
use crate::module::{ModuleRep, Submodule};
use crate::morphism::ModuleMorphism;
use crate::raw::Vector;

/// A dimension that is either known or exceeded the search cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionReport {
    Finite(usize),
    AboveCutoff(usize),
}

impl DimensionReport {
    pub fn finite(&self) -> Option<usize> {
        match self {
            DimensionReport::Finite(v) => Some(*v),
            DimensionReport::AboveCutoff(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite().is_some()
    }

    /// Maximum, with `AboveCutoff` absorbing.
    pub fn max(self, other: Self) -> Self {
        match (self, other) {
            (DimensionReport::Finite(a), DimensionReport::Finite(b)) => DimensionReport::Finite(a.max(b)),
            (DimensionReport::AboveCutoff(c), _) | (_, DimensionReport::AboveCutoff(c)) => {
                DimensionReport::AboveCutoff(c)
            }
        }
    }
}

impl fmt::Display for DimensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimensionReport::Finite(v) => write!(f, "{v}"),
            DimensionReport::AboveCutoff(c) => write!(f, ">{c}"),
        }
    }
}

/// `... -> P_1 -> P_0 -> M -> 0` with the syzygies `Omega^i M`.
#[derive(Clone, Debug)]
pub struct ProjResolution<F: Field> {
    /// `Omega^0 = M, Omega^1, ...`; one more entry than `covers` unless complete.
    pub syzygies: Vec<ModuleRep<F>>,
    pub covers: Vec<ModuleRep<F>>,
    /// Inclusions `Omega^{i+1} -> P_i`.
    pub inclusions: Vec<ModuleMorphism<F>>,
    /// Vertices of the indecomposable summands of each `P_i`.
    pub terms: Vec<Vec<usize>>,
    /// Whether a zero syzygy was reached.
    pub complete: bool,
}

impl<F: Field> ProjResolution<F> {
    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    /// The projective dimension if the resolution is complete.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.complete.then(|| self.covers.len().saturating_sub(1))
    }
}

/// Resolves `m` through `P_k`, stopping early at a zero syzygy.
pub fn min_proj_resolution<F: Field>(m: &ModuleRep<F>, k: usize) -> ProjResolution<F> {
    let mut res = ProjResolution {
        syzygies: vec![m.clone()],
        covers: Vec::new(),
        inclusions: Vec::new(),
        terms: Vec::new(),
        complete: false,
    };
    for _ in 0..=k {
        let cur = res.syzygies.last().unwrap();
        if cur.is_zero() {
            res.complete = true;
            return res;
        }
        let pres = cur.presentation();
        let sq = pres.cover.sub_quotient(&pres.kernel).expect("kernel is a submodule");
        res.terms.push(pres.gens.iter().map(|g| g.0).collect());
        res.covers.push(pres.cover.clone());
        res.inclusions.push(sq.inclusion);
        res.syzygies.push(sq.sub);
    }
    if res.syzygies.last().is_some_and(|s| s.is_zero()) {
        res.complete = true;
    }
    res
}

/// `Ext^i(M, N)` with cocycles `Omega^i M -> N` spanning a complement of the
/// maps that extend to `P_{i-1}`.
#[derive(Clone, Debug)]
pub struct ExtSpace<F: Field> {
    pub degree: usize,
    pub dim: usize,
    pub cocycles: Vec<ModuleMorphism<F>>,
    pub syzygy: ModuleRep<F>,
}

/// Ext from a precomputed resolution reaching at least degree `i`.
pub fn ext_from_resolution<F: Field>(res: &ProjResolution<F>, n: &ModuleRep<F>, i: usize) -> Result<ExtSpace<F>> {
    let f = n.field().clone();
    let m = &res.syzygies[0];
    m.same_algebra(n)?;
    if i >= res.syzygies.len() {
        // beyond a complete resolution everything vanishes
        return Ok(ExtSpace {
            degree: i,
            dim: 0,
            cocycles: Vec::new(),
            syzygy: ModuleRep::zero(m.algebra()),
        });
    }
    let omega = &res.syzygies[i];
    let hs = HomSpace::compute(omega, n)?;
    if i == 0 {
        return Ok(ExtSpace {
            degree: 0,
            dim: hs.dim(),
            cocycles: hs.basis.clone(),
            syzygy: omega.clone(),
        });
    }
    let cover = &res.covers[i - 1];
    let incl = &res.inclusions[i - 1];
    let boundaries: Vec<Vector<F>> = HomSpace::compute(cover, n)?
        .basis
        .iter()
        .map(|h| hs.coords(&incl.then(h).expect("shapes")))
        .collect();
    let mut span = Subspace::from_vecs(&f, hs.dim(), &boundaries);
    let mut cocycles = Vec::new();
    for (t, b) in hs.basis.iter().enumerate() {
        let mut e = vec![f.zero(); hs.dim()];
        e[t] = f.one();
        if !span.contains(&e) {
            span = span.sum(&Subspace::from_vecs(&f, hs.dim(), &[e]));
            cocycles.push(b.clone());
        }
    }
    Ok(ExtSpace {
        degree: i,
        dim: cocycles.len(),
        cocycles,
        syzygy: omega.clone(),
    })
}

pub fn ext_space<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>, i: usize) -> Result<ExtSpace<F>> {
    m.same_algebra(n)?;
    let res = min_proj_resolution(m, i.saturating_sub(1));
    ext_from_resolution(&res, n, i)
}

pub fn ext_dim<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>, i: usize) -> Result<usize> {
    Ok(ext_space(m, n, i)?.dim)
}

/// `dim Ext^i(M, N)` for `i = 0..=k`.
pub fn ext_dims<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>, k: usize) -> Result<Vec<usize>> {
    m.same_algebra(n)?;
    let res = min_proj_resolution(m, k.saturating_sub(1));
    (0..=k).map(|i| Ok(ext_from_resolution(&res, n, i)?.dim)).collect()
}

pub fn projective_dim<F: Field>(m: &ModuleRep<F>, cutoff: usize) -> DimensionReport {
    match min_proj_resolution(m, cutoff).projective_dimension() {
        Some(d) if d <= cutoff => DimensionReport::Finite(d),
        _ => DimensionReport::AboveCutoff(cutoff),
    }
}

pub fn injective_dim<F: Field>(m: &ModuleRep<F>, cutoff: usize) -> DimensionReport {
    projective_dim(&m.dual(), cutoff)
}

pub fn proj_inj_dim<F: Field>(m: &ModuleRep<F>, cutoff: usize) -> (DimensionReport, DimensionReport) {
    (projective_dim(m, cutoff), injective_dim(m, cutoff))
}

pub fn global_dim<F: Field>(a: &Arc<AssocAlgebra<F>>, cutoff: usize) -> DimensionReport {
    (0..a.n_vertices()).fold(DimensionReport::Finite(0), |acc, i| {
        acc.max(projective_dim(&ModuleRep::simple(a, i), cutoff))
    })
}

/// Vertices `j` with `I(j)` projective.
pub fn projective_injective_vertices<F: Field>(a: &Arc<AssocAlgebra<F>>) -> Vec<usize> {
    (0..a.n_vertices())
        .filter(|&j| ModuleRep::injective(a, j).is_projective())
        .collect()
}

/// Number of leading terms of the minimal injective coresolution of `x` that
/// are projective. Computed from the projective resolution of `D(x)`.
pub fn dominant_dim<F: Field>(x: &ModuleRep<F>, cutoff: usize) -> DimensionReport {
    if x.is_zero() {
        return DimensionReport::AboveCutoff(cutoff);
    }
    let pi = projective_injective_vertices(x.algebra());
    leading_terms(&min_proj_resolution(&x.dual(), cutoff), &pi, cutoff)
}

/// Number of leading terms of the minimal projective resolution that are injective.
pub fn codominant_dim<F: Field>(x: &ModuleRep<F>, cutoff: usize) -> DimensionReport {
    if x.is_zero() {
        return DimensionReport::AboveCutoff(cutoff);
    }
    let op = x.algebra().opposite();
    let pi = projective_injective_vertices(&op);
    leading_terms(&min_proj_resolution(x, cutoff), &pi, cutoff)
}

fn leading_terms<F: Field>(res: &ProjResolution<F>, good: &[usize], cutoff: usize) -> DimensionReport {
    for (j, term) in res.terms.iter().enumerate() {
        if !term.iter().all(|v| good.contains(v)) {
            return DimensionReport::Finite(j);
        }
    }
    if res.terms.len() > cutoff || res.complete {
        DimensionReport::AboveCutoff(cutoff)
    } else {
        DimensionReport::Finite(res.terms.len())
    }
}

pub fn dominant_dim_algebra<F: Field>(a: &Arc<AssocAlgebra<F>>, cutoff: usize) -> DimensionReport {
    (0..a.n_vertices()).fold(DimensionReport::AboveCutoff(cutoff), |acc, i| {
        min_report(acc, dominant_dim(&ModuleRep::projective(a, i), cutoff))
    })
}

fn min_report(a: DimensionReport, b: DimensionReport) -> DimensionReport {
    match (a, b) {
        (DimensionReport::Finite(x), DimensionReport::Finite(y)) => DimensionReport::Finite(x.min(y)),
        (DimensionReport::Finite(x), _) | (_, DimensionReport::Finite(x)) => DimensionReport::Finite(x),
        (c, _) => c,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub value: DimensionReport,
    /// `id(A_A)`.
    pub right_id: DimensionReport,
    /// `id(_A A)`.
    pub left_id: DimensionReport,
}

pub fn gorenstein_dim<F: Field>(a: &Arc<AssocAlgebra<F>>, cutoff: usize) -> Result<GorensteinReport> {
    let n = a.n_vertices();
    let right_id = (0..n).fold(DimensionReport::Finite(0), |acc, i| {
        acc.max(injective_dim(&ModuleRep::projective(a, i), cutoff))
    });
    let left_id = (0..n).fold(DimensionReport::Finite(0), |acc, i| {
        acc.max(projective_dim(&ModuleRep::injective(a, i), cutoff))
    });
    let value = match (right_id, left_id) {
        (DimensionReport::Finite(r), DimensionReport::Finite(l)) if r != l => {
            return Err(Error::InternalInconsistency(format!(
                "left and right injective dimensions of the regular module differ: {l} vs {r}"
            )))
        }
        (DimensionReport::Finite(r), DimensionReport::Finite(_)) => DimensionReport::Finite(r),
        _ => DimensionReport::AboveCutoff(cutoff),
    };
    Ok(GorensteinReport {
        value,
        right_id,
        left_id,
    })
}

/// `Ext^i(M, A) = 0` for `1 <= i <= gdim`.
pub fn is_gorenstein_projective<F: Field>(m: &ModuleRep<F>, gdim: DimensionReport) -> Result<bool> {
    let Some(g) = gdim.finite() else {
        return Err(Error::PreconditionUnverified(
            "Gorenstein dimension not established within the cutoff".into(),
        ));
    };
    let reg = ModuleRep::regular(m.algebra());
    let res = min_proj_resolution(m, g);
    for i in 1..=g {
        if ext_from_resolution(&res, &reg, i)?.dim != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A universal extension `0 -> X -> E -> D^t -> 0` with `t = dim Ext^1(D, X)`.
#[derive(Clone, Debug)]
pub struct UniversalExtension<F: Field> {
    pub middle: ModuleRep<F>,
    pub inclusion: ModuleMorphism<F>,
    pub projection: ModuleMorphism<F>,
    pub multiplicity: usize,
}

pub fn universal_extension<F: Field>(x: &ModuleRep<F>, d: &ModuleRep<F>) -> Result<UniversalExtension<F>> {
    x.same_algebra(d)?;
    let f = x.field().clone();
    let a = x.algebra();
    let res = min_proj_resolution(d, 0);
    let ext = ext_from_resolution(&res, x, 1)?;
    let t = ext.dim;
    if t == 0 {
        return Ok(UniversalExtension {
            middle: x.clone(),
            inclusion: ModuleMorphism::identity(&f, x.dims()),
            projection: ModuleMorphism::zero(&f, x.dims(), &vec![0; x.dims().len()]),
            multiplicity: 0,
        });
    }
    let pres = d.presentation();
    let cover = &pres.cover;
    let mut pieces = vec![x.clone()];
    pieces.extend(std::iter::repeat_n(cover.clone(), t));
    let y = ModuleRep::direct_sum(a, &pieces);
    let n = a.n_vertices();
    let mut parts = Vec::with_capacity(n);
    for v in 0..n {
        let kv = &pres.kernel.parts[v];
        let (xd, pd) = (x.dims()[v], cover.dims()[v]);
        let mut vecs = Vec::new();
        for (s, cocycle) in ext.cocycles.iter().enumerate() {
            for j in 0..kv.dim() {
                let mut vec = vec![f.zero(); xd + t * pd];
                let fx = cocycle.block(v).row(j);
                vec[..xd].clone_from_slice(fx);
                for (c, val) in kv.basis().row(j).iter().enumerate() {
                    vec[xd + s * pd + c] = val.neg();
                }
                vecs.push(vec);
            }
        }
        parts.push(Subspace::from_vecs(&f, xd + t * pd, &vecs));
    }
    let sub = Submodule { parts };
    let sq = y.sub_quotient(&sub)?;
    let mut incl = Vec::with_capacity(n);
    let mut proj = Vec::with_capacity(n);
    for v in 0..n {
        let (xd, pd, dd) = (x.dims()[v], cover.dims()[v], d.dims()[v]);
        let mut ix = Matrix::zeros(&f, xd, xd + t * pd);
        ix.set_block(0, 0, &Matrix::identity(&f, xd));
        incl.push(ix.mul(sq.projection.block(v))?);
        // Y -> d^t vanishes on the submodule, so restrict to the kept coordinates
        let mut yd = Matrix::zeros(&f, xd + t * pd, t * dd);
        for s in 0..t {
            yd.set_block(xd + s * pd, s * dd, pres.epi.block(v));
        }
        let keep = sub.parts[v].complement_units();
        proj.push(yd.select_rows(&keep));
    }
    Ok(UniversalExtension {
        middle: sq.quotient,
        inclusion: ModuleMorphism::from_blocks(incl),
        projection: ModuleMorphism::from_blocks(proj),
        multiplicity: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::truncated_polynomial;
    use crate::field::PrimeField;

    #[test]
    fn dimension_report_max_absorbs_cutoff() {
        use DimensionReport::*;
        assert_eq!(Finite(2).max(Finite(5)), Finite(5));
        assert_eq!(Finite(2).max(AboveCutoff(9)), AboveCutoff(9));
        assert_eq!(AboveCutoff(9).to_string(), ">9");
        assert_eq!(serde_json::to_value(Finite(3)).unwrap(), serde_json::json!({"finite": 3}));
    }

    #[test]
    fn selfinjective_local_algebra() {
        let f = PrimeField::new(101).unwrap();
        let u = truncated_polynomial(&f, 3).unwrap();
        let s = ModuleRep::simple(&u, 0);
        assert_eq!(projective_dim(&s, 6), DimensionReport::AboveCutoff(6));
        assert_eq!(ext_dims(&s, &s, 4).unwrap(), vec![1, 1, 1, 1, 1]);
        assert_eq!(gorenstein_dim(&u, 6).unwrap().value, DimensionReport::Finite(0));
        assert_eq!(projective_injective_vertices(&u), vec![0]);
    }
}
