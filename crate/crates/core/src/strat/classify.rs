use std::sync::Arc;

use serde::Serialize;

use crate::algebra::AssocAlgebra;
use crate::config::Settings;
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::hom::{is_isomorphic, sample, sample_size, IsoVerdict};
use crate::homology::{
    dominant_dim_algebra, gorenstein_dim, projective_injective_vertices, DimensionReport, GorensteinReport,
};
use crate::matrix::Matrix;
use crate::module::ModuleRep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Yes,
    No,
    Inconclusive,
}

impl Flag {
    pub fn is_yes(self) -> bool {
        self == Flag::Yes
    }
}

impl<F: Field> From<&IsoVerdict<F>> for Flag {
    fn from(v: &IsoVerdict<F>) -> Self {
        match v {
            IsoVerdict::Isomorphic(_) => Flag::Yes,
            IsoVerdict::NotIsomorphic(_) => Flag::No,
            IsoVerdict::Inconclusive(_) => Flag::Inconclusive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub selfinjective: bool,
    pub frobenius: Flag,
    pub symmetric: Flag,
    pub gendo_symmetric: Flag,
    pub gorenstein: GorensteinReport,
    pub dominant_dim: DimensionReport,
    pub minimal_auslander_gorenstein: bool,
    /// 1-based.
    pub projective_injective_vertices: Vec<usize>,
}

impl ClassificationReport {
    pub fn any_inconclusive(&self) -> bool {
        [self.frobenius, self.symmetric, self.gendo_symmetric].contains(&Flag::Inconclusive)
    }
}

/// Looks for a nondegenerate symmetric associative form, i.e. a linear form
/// vanishing on commutators whose Gram matrix is invertible.
pub fn is_symmetric_algebra<F: Field>(a: &AssocAlgebra<F>, settings: &Settings) -> Result<Flag> {
    let f = a.field();
    let d = a.dim();
    let prod = |r: usize, s: usize| -> Vec<F::Elem> {
        let mut v = vec![f.zero(); d];
        for (t, c) in a.basis_mul(r, s) {
            v[*t] = c.clone();
        }
        v
    };
    let mut comm = Vec::new();
    for r in 0..d {
        for s in r + 1..d {
            let (x, y) = (prod(r, s), prod(s, r));
            let c: Vec<F::Elem> = x.iter().zip(&y).map(|(p, q)| p.sub(q)).collect();
            if c.iter().any(|e| !e.is_zero()) {
                comm.push(c);
            }
        }
    }
    let forms = if comm.is_empty() {
        Matrix::identity(f, d).row_vecs()
    } else {
        Matrix::from_rows(f, d, &comm)?.kernel_basis()
    };
    if forms.is_empty() {
        return Ok(Flag::No);
    }
    let products: Vec<Vec<F::Elem>> = (0..d * d).map(|k| prod(k / d, k % d)).collect();
    let gram = |lambda: &[F::Elem]| -> Matrix<F> {
        let data = products
            .iter()
            .map(|p| p.iter().zip(lambda).fold(f.zero(), |acc, (x, y)| acc.add(&x.mul(y))))
            .collect();
        Matrix::new(f, d, d, data).expect("square")
    };
    let combine = |c: &[F::Elem]| -> Vec<F::Elem> {
        (0..d)
            .map(|t| forms.iter().zip(c).fold(f.zero(), |acc, (l, x)| acc.add(&l[t].mul(x))))
            .collect()
    };
    let h = forms.len();
    for l in &forms {
        if gram(l).is_invertible() {
            return Ok(Flag::Yes);
        }
    }
    let mut rng = settings.rng_for(0x5e);
    for _ in 0..settings.random_trials {
        let c: Vec<F::Elem> = (0..h).map(|_| sample(f, &mut rng)).collect();
        if gram(&combine(&c)).is_invertible() {
            return Ok(Flag::Yes);
        }
    }
    if let Some(q) = f.order() {
        if (h as f64) * (q as f64).log10() <= (settings.exhaustive_limit as f64).log10() + 1e-9 {
            let total = q.pow(h as u32);
            for mut idx in 0..total {
                let mut c = Vec::with_capacity(h);
                for _ in 0..h {
                    c.push(f.element(idx % q));
                    idx /= q;
                }
                if gram(&combine(&c)).is_invertible() {
                    return Ok(Flag::Yes);
                }
            }
            return Ok(Flag::No);
        }
    }
    // det of the Gram matrix has degree d in the coefficients
    if 2 * d as u64 >= sample_size(f) {
        Ok(Flag::Inconclusive)
    } else {
        Ok(Flag::No)
    }
}

pub fn classify<F: Field>(a: &Arc<AssocAlgebra<F>>, settings: &Settings) -> Result<ClassificationReport> {
    let n = a.n_vertices();
    let selfinjective = (0..n).all(|v| ModuleRep::projective(a, v).is_injective());
    let frobenius = if selfinjective {
        let reg = ModuleRep::regular(a);
        let dual = ModuleRep::injective_cogenerator(a);
        Flag::from(&is_isomorphic(&reg, &dual, settings)?)
    } else {
        Flag::No
    };
    let symmetric = match frobenius {
        Flag::No => Flag::No,
        _ => is_symmetric_algebra(a, settings)?,
    };
    let gorenstein = gorenstein_dim(a, settings.cutoff)?;
    let dominant_dim = dominant_dim_algebra(a, settings.cutoff);
    let pi = projective_injective_vertices(a);
    let dom_ok = match dominant_dim {
        DimensionReport::Finite(k) => k >= 2,
        DimensionReport::AboveCutoff(_) => true,
    };
    let gendo_symmetric = if !dom_ok || pi.is_empty() {
        Flag::No
    } else if pi.len() == n {
        symmetric
    } else {
        is_symmetric_algebra(&a.corner(&pi)?.algebra, settings)?
    };
    let minimal_auslander_gorenstein = match (gorenstein.value, dominant_dim) {
        (DimensionReport::Finite(g), DimensionReport::Finite(d)) => g == d && g >= 2,
        _ => false,
    };
    Ok(ClassificationReport {
        selfinjective,
        frobenius,
        symmetric,
        gendo_symmetric,
        gorenstein,
        dominant_dim,
        minimal_auslander_gorenstein,
        projective_injective_vertices: pi.iter().map(|v| v + 1).collect(),
    })
}
