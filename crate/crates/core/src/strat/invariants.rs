use std::sync::Arc;

use serde::Serialize;

use super::classify::{classify, ClassificationReport};
use super::{standard_modules, IdempotentOrder};
use crate::algebra::AssocAlgebra;
use crate::config::Settings;
use crate::error::Result;
use crate::field::Field;
use crate::module::ModuleRep;

/// Isomorphism invariants of a basic algebra, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraInvariants {
    pub dim: usize,
    pub cartan: Vec<Vec<usize>>,
    pub projective_layers: Vec<Vec<Vec<usize>>>,
    pub injective_layers: Vec<Vec<Vec<usize>>>,
    pub delta_dims: Option<Vec<Vec<usize>>>,
    pub classification: Option<ClassificationReport>,
}

impl AlgebraInvariants {
    pub fn compute<F: Field>(
        a: &Arc<AssocAlgebra<F>>,
        order: Option<&IdempotentOrder>,
        with_flags: bool,
        settings: &Settings,
    ) -> Result<Self> {
        let n = a.n_vertices();
        Ok(AlgebraInvariants {
            dim: a.dim(),
            cartan: a.cartan_matrix(),
            projective_layers: (0..n).map(|v| ModuleRep::projective(a, v).radical_layers()).collect(),
            injective_layers: (0..n).map(|v| ModuleRep::injective(a, v).radical_layers()).collect(),
            delta_dims: order.map(|o| standard_modules(a, o).iter().map(|d| d.dims().to_vec()).collect()),
            classification: if with_flags { Some(classify(a, settings)?) } else { None },
        })
    }

    pub fn n(&self) -> usize {
        self.cartan.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantComparison {
    pub isomorphic: bool,
    /// 1-based images of the vertices of the first algebra.
    pub permutation: Option<Vec<usize>>,
    pub reason: Option<String>,
    pub dims: (usize, usize),
}

fn permute(v: &[usize], p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; v.len()];
    for (u, &x) in v.iter().enumerate() {
        out[p[u]] = x;
    }
    out
}

fn layers_match(x: &[Vec<usize>], y: &[Vec<usize>], p: &[usize]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(l, m)| permute(l, p) == *m)
}

fn full_match(a: &AlgebraInvariants, b: &AlgebraInvariants, p: &[usize]) -> bool {
    (0..a.n()).all(|v| {
        let w = p[v];
        layers_match(&a.projective_layers[v], &b.projective_layers[w], p)
            && layers_match(&a.injective_layers[v], &b.injective_layers[w], p)
            && match (&a.delta_dims, &b.delta_dims) {
                (Some(x), Some(y)) => permute(&x[v], p) == y[w],
                _ => true,
            }
    })
}

fn search(a: &AlgebraInvariants, b: &AlgebraInvariants, p: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let v = p.len();
    if v == a.n() {
        return full_match(a, b, p);
    }
    for w in 0..b.n() {
        if used[w] || a.cartan[v][v] != b.cartan[w][w] {
            continue;
        }
        if (0..v).any(|u| a.cartan[u][v] != b.cartan[p[u]][w] || a.cartan[v][u] != b.cartan[w][p[u]]) {
            continue;
        }
        p.push(w);
        used[w] = true;
        if search(a, b, p, used) {
            return true;
        }
        p.pop();
        used[w] = false;
    }
    false
}

/// Compares invariants up to a permutation of the vertices.
pub fn compare_invariants(a: &AlgebraInvariants, b: &AlgebraInvariants) -> InvariantComparison {
    let dims = (a.dim, b.dim);
    let fail = |r: String| InvariantComparison {
        isomorphic: false,
        permutation: None,
        reason: Some(r),
        dims,
    };
    if a.dim != b.dim {
        return fail(format!("dimensions {} and {} differ", a.dim, b.dim));
    }
    if a.n() != b.n() {
        return fail(format!("{} and {} vertices", a.n(), b.n()));
    }
    if let (Some(x), Some(y)) = (&a.classification, &b.classification) {
        let strip = |c: &ClassificationReport| {
            let mut c = c.clone();
            c.projective_injective_vertices.clear();
            c
        };
        if strip(x) != strip(y) {
            return fail("classification flags differ".into());
        }
    }
    let mut p = Vec::new();
    let mut used = vec![false; b.n()];
    if search(a, b, &mut p, &mut used) {
        InvariantComparison {
            isomorphic: true,
            permutation: Some(p.iter().map(|w| w + 1).collect()),
            reason: None,
            dims,
        }
    } else {
        fail("no vertex permutation matches Cartan matrix and layer data".into())
    }
}

pub fn invariant_isomorphic<F: Field>(
    a: &Arc<AssocAlgebra<F>>,
    oa: Option<&IdempotentOrder>,
    b: &Arc<AssocAlgebra<F>>,
    ob: Option<&IdempotentOrder>,
    settings: &Settings,
) -> Result<InvariantComparison> {
    let orders = oa.is_some() && ob.is_some();
    let ia = AlgebraInvariants::compute(a, oa.filter(|_| orders), true, settings)?;
    let ib = AlgebraInvariants::compute(b, ob.filter(|_| orders), true, settings)?;
    Ok(compare_invariants(&ia, &ib))
}
