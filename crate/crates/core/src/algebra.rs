//! Basic algebras in path-basis form.
//!
//! Every basis element is a path word `e_s * a_1 * ... * a_k * e_t` in a set of
//! arrows that spans `J / J^2`. Paths compose left to right.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Matrix, Subspace};
use crate::raw::{RawAlgebra, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A path; vertices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl PathWord {
    pub fn trivial(i: usize) -> Self {
        PathWord {
            source: i,
            target: i,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

pub struct AssocAlgebra<F: Field> {
    field: F,
    n_vertices: usize,
    arrows: Vec<Arrow>,
    words: Vec<PathWord>,
    labels: Vec<String>,
    table: Vec<Vec<(usize, F::Elem)>>,
    vertex_basis: Vec<usize>,
    arrow_basis: Vec<usize>,
    provenance: Option<serde_json::Value>,
    fingerprint: u64,
    opposite: OnceLock<Arc<AssocAlgebra<F>>>,
}

impl<F: Field> Clone for AssocAlgebra<F> {
    fn clone(&self) -> Self {
        AssocAlgebra {
            field: self.field.clone(),
            n_vertices: self.n_vertices,
            arrows: self.arrows.clone(),
            words: self.words.clone(),
            labels: self.labels.clone(),
            table: self.table.clone(),
            vertex_basis: self.vertex_basis.clone(),
            arrow_basis: self.arrow_basis.clone(),
            provenance: self.provenance.clone(),
            fingerprint: self.fingerprint,
            opposite: OnceLock::new(),
        }
    }
}

impl<F: Field> fmt::Debug for AssocAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AssocAlgebra")
            .field("field", &self.field.spec())
            .field("dim", &self.dim())
            .field("vertices", &self.n_vertices)
            .field("basis", &self.labels)
            .finish()
    }
}

impl<F: Field> PartialEq for AssocAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.field == other.field
            && self.arrows == other.arrows
            && self.words == other.words
            && self.table == other.table
    }
}

impl<F: Field> Eq for AssocAlgebra<F> {}

/// Result of normalizing structure constants: the algebra in path-basis form
/// and the new basis expressed in the old coordinates (one row per element).
#[derive(Clone, Debug)]
pub struct Normalized<F: Field> {
    pub algebra: AssocAlgebra<F>,
    pub to_old: Matrix<F>,
}

fn word_label(arrows: &[Arrow], w: &PathWord) -> String {
    if w.arrows.is_empty() {
        format!("e{}", w.source + 1)
    } else {
        w.arrows
            .iter()
            .map(|&a| arrows[a].label.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl<F: Field> AssocAlgebra<F> {
    /// Builds from a path basis and its sparse multiplication table
    /// (`table[r * dim + s]`), checking unit and associativity.
    pub fn from_paths(
        field: &F,
        n_vertices: usize,
        arrows: Vec<Arrow>,
        words: Vec<PathWord>,
        table: Vec<Vec<(usize, F::Elem)>>,
        provenance: Option<serde_json::Value>,
    ) -> Result<Self> {
        let a = Self::from_paths_unchecked(field, n_vertices, arrows, words, table, provenance)?;
        a.to_raw().check()?;
        Ok(a)
    }

    pub(crate) fn from_paths_unchecked(
        field: &F,
        n_vertices: usize,
        arrows: Vec<Arrow>,
        words: Vec<PathWord>,
        table: Vec<Vec<(usize, F::Elem)>>,
        provenance: Option<serde_json::Value>,
    ) -> Result<Self> {
        let d = words.len();
        if table.len() != d * d {
            return Err(Error::DimensionMismatch("multiplication table size".into()));
        }
        for a in &arrows {
            if a.source >= n_vertices || a.target >= n_vertices {
                return Err(Error::InvalidQuiver(format!("arrow {} leaves the quiver", a.label)));
            }
        }
        let find = |w: &PathWord| words.iter().position(|x| x == w);
        let mut vertex_basis = Vec::with_capacity(n_vertices);
        for i in 0..n_vertices {
            vertex_basis.push(find(&PathWord::trivial(i)).ok_or_else(|| {
                Error::InvalidAlgebra(format!("basis lacks the trivial path at vertex {}", i + 1))
            })?);
        }
        let mut arrow_basis = Vec::with_capacity(arrows.len());
        for (k, a) in arrows.iter().enumerate() {
            let w = PathWord {
                source: a.source,
                target: a.target,
                arrows: vec![k],
            };
            arrow_basis.push(
                find(&w).ok_or_else(|| Error::InvalidAlgebra(format!("arrow {} is not a basis element", a.label)))?,
            );
        }
        let labels = words.iter().map(|w| word_label(&arrows, w)).collect();
        let mut h = DefaultHasher::new();
        field.spec().hash(&mut h);
        n_vertices.hash(&mut h);
        arrows.hash(&mut h);
        words.hash(&mut h);
        table.hash(&mut h);
        Ok(AssocAlgebra {
            field: field.clone(),
            n_vertices,
            arrows,
            words,
            labels,
            table,
            vertex_basis,
            arrow_basis,
            provenance,
            fingerprint: h.finish(),
            opposite: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.words.len()
    }
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn words(&self) -> &[PathWord] {
        &self.words
    }
    pub fn word(&self, r: usize) -> &PathWord {
        &self.words[r]
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn provenance(&self) -> Option<&serde_json::Value> {
        self.provenance.as_ref()
    }
    pub fn with_provenance(mut self, p: serde_json::Value) -> Self {
        self.provenance = Some(p);
        self
    }
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
    pub fn vertex_basis(&self, i: usize) -> usize {
        self.vertex_basis[i]
    }
    pub fn arrow_basis(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    pub fn basis_mul(&self, r: usize, s: usize) -> &[(usize, F::Elem)] {
        &self.table[r * self.dim() + s]
    }

    pub fn table(&self) -> &[Vec<(usize, F::Elem)>] {
        &self.table
    }

    pub fn to_raw(&self) -> RawAlgebra<F> {
        RawAlgebra::from_sparse_unchecked(&self.field, self.dim(), self.table.clone(), self.unit())
    }

    pub fn zero_vec(&self) -> Vector<F> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vec(&self, r: usize) -> Vector<F> {
        let mut v = self.zero_vec();
        v[r] = self.field.one();
        v
    }

    pub fn unit(&self) -> Vector<F> {
        let mut v = self.zero_vec();
        for &b in &self.vertex_basis {
            v[b] = self.field.one();
        }
        v
    }

    pub fn idempotent(&self, i: usize) -> Vector<F> {
        self.basis_vec(self.vertex_basis[i])
    }

    pub fn idempotents(&self) -> Vec<Vector<F>> {
        (0..self.n_vertices).map(|i| self.idempotent(i)).collect()
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        let mut out = self.zero_vec();
        for (r, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (s, b) in y.iter().enumerate() {
                if b.is_zero() || self.words[r].target != self.words[s].source {
                    continue;
                }
                let ab = a.mul(b);
                for (t, c) in self.basis_mul(r, s) {
                    out[*t] = out[*t].add(&ab.mul(c));
                }
            }
        }
        out
    }

    /// Basis indices of the paths from `i` to `j`.
    pub fn words_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&r| self.words[r].source == i && self.words[r].target == j)
            .collect()
    }

    /// Basis indices of the paths starting at `i`, i.e. a basis of `e_i A`.
    pub fn words_from(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&r| self.words[r].source == i).collect()
    }

    /// Basis indices of the paths ending at `j`, i.e. a basis of `A e_j`.
    pub fn words_to(&self, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&r| self.words[r].target == j).collect()
    }

    /// Basis of the radical: the positive-length paths.
    pub fn radical_basis(&self) -> Vec<Vector<F>> {
        (0..self.dim())
            .filter(|&r| !self.words[r].is_trivial())
            .map(|r| self.basis_vec(r))
            .collect()
    }

    /// `C[i][j] = dim e_i A e_j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.n_vertices;
        let mut c = vec![vec![0; n]; n];
        for w in &self.words {
            c[w.source][w.target] += 1;
        }
        c
    }

    pub fn loewy_length(&self) -> usize {
        let raw = self.to_raw();
        let f = &self.field;
        let j = Subspace::from_vecs(f, self.dim(), &self.radical_basis());
        let mut power = j.clone();
        let mut k = 1;
        while power.dim() > 0 {
            power = raw.span_products(&power, &j);
            k += 1;
        }
        k
    }

    /// The opposite algebra: same basis with every word reversed.
    pub fn opposite(self: &Arc<Self>) -> Arc<Self> {
        self.opposite
            .get_or_init(|| {
                let op = Arc::new(self.build_opposite());
                let _ = op.opposite.set(Arc::clone(self));
                op
            })
            .clone()
    }

    fn build_opposite(&self) -> Self {
        let d = self.dim();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                label: a.label.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        let words = self
            .words
            .iter()
            .map(|w| PathWord {
                source: w.target,
                target: w.source,
                arrows: w.arrows.iter().rev().copied().collect(),
            })
            .collect();
        let mut table = Vec::with_capacity(d * d);
        for r in 0..d {
            for s in 0..d {
                table.push(self.basis_mul(s, r).to_vec());
            }
        }
        Self::from_paths_unchecked(&self.field, self.n_vertices, arrows, words, table, self.provenance.clone())
            .expect("opposite of a valid algebra")
    }

    /// Renumbers vertices: new vertex `k` is old vertex `order[k]`.
    pub fn reorder(&self, order: &[usize]) -> Result<Self> {
        let n = self.n_vertices;
        let mut inv = vec![usize::MAX; n];
        if order.len() != n {
            return Err(Error::InvalidOrder(format!("{} entries for {n} vertices", order.len())));
        }
        for (k, &o) in order.iter().enumerate() {
            if o >= n || inv[o] != usize::MAX {
                return Err(Error::InvalidOrder(format!("{order:?} is not a permutation")));
            }
            inv[o] = k;
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                label: a.label.clone(),
                source: inv[a.source],
                target: inv[a.target],
            })
            .collect();
        let words = self
            .words
            .iter()
            .map(|w| PathWord {
                source: inv[w.source],
                target: inv[w.target],
                arrows: w.arrows.clone(),
            })
            .collect();
        Self::from_paths_unchecked(&self.field, n, arrows, words, self.table.clone(), self.provenance.clone())
    }

    /// Normalizes structure constants with a given complete set of primitive
    /// orthogonal idempotents.
    pub fn from_raw(
        raw: &RawAlgebra<F>,
        idempotents: &[Vector<F>],
        provenance: Option<serde_json::Value>,
    ) -> Result<Normalized<F>> {
        normalize(raw, idempotents, provenance)
    }

    /// The corner algebra `eAe` for `e` the sum of the given vertex idempotents,
    /// with vertices kept in the given order.
    pub fn corner(&self, vertices: &[usize]) -> Result<Normalized<F>> {
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&r| vertices.contains(&self.words[r].source) && vertices.contains(&self.words[r].target))
            .collect();
        let pos = |t: usize| keep.iter().position(|&k| k == t);
        let m = keep.len();
        let mut products = Vec::with_capacity(m * m);
        for &r in &keep {
            for &s in &keep {
                let mut v = vec![self.field.zero(); m];
                if self.words[r].target == self.words[s].source {
                    for (t, c) in self.basis_mul(r, s) {
                        v[pos(*t).expect("corner closed")] = c.clone();
                    }
                }
                products.push(v);
            }
        }
        let unit_idx: Vec<usize> = vertices.iter().map(|&i| pos(self.vertex_basis[i]).unwrap()).collect();
        let mut unit = vec![self.field.zero(); m];
        for &u in &unit_idx {
            unit[u] = self.field.one();
        }
        let raw = RawAlgebra::new(&self.field, m, products, unit)?;
        let idems: Vec<Vector<F>> = unit_idx.iter().map(|&u| raw.unit_vector(u)).collect();
        normalize(&raw, &idems, None)
    }
}

fn normalize<F: Field>(
    raw: &RawAlgebra<F>,
    idempotents: &[Vector<F>],
    provenance: Option<serde_json::Value>,
) -> Result<Normalized<F>> {
    let f = raw.field().clone();
    let d = raw.dim();
    let n = idempotents.len();
    if idempotents.iter().any(|e| e.len() != d) {
        return Err(Error::DimensionMismatch("idempotent length".into()));
    }
    let mut sum = vec![f.zero(); d];
    for (i, e) in idempotents.iter().enumerate() {
        for (j, g) in idempotents.iter().enumerate() {
            let p = raw.mul(e, g);
            let ok = if i == j { &p == e } else { p.iter().all(|x| x.is_zero()) };
            if !ok {
                return Err(Error::InvalidAlgebra(format!(
                    "idempotents {} and {} are not orthogonal idempotents",
                    i + 1,
                    j + 1
                )));
            }
        }
        for (s, x) in sum.iter_mut().zip(e) {
            *s = s.add(x);
        }
    }
    if sum.as_slice() != raw.unit() {
        return Err(Error::InvalidAlgebra("idempotents do not sum to the unit".into()));
    }
    let rad = raw.radical();
    for (i, e) in idempotents.iter().enumerate() {
        let c = raw.corner_space(e, e);
        if c.dim() != c.intersect(&rad).dim() + 1 {
            return Err(Error::NotPrimitive(i + 1));
        }
    }
    let rad2 = raw.span_products(&rad, &rad);
    let sandwich = |x: &Subspace<F>, i: usize, j: usize| -> Subspace<F> {
        let vecs: Vec<Vector<F>> = (0..x.dim())
            .map(|k| raw.mul(&raw.mul(&idempotents[i], x.basis().row(k)), &idempotents[j]))
            .collect();
        Subspace::from_vecs(&f, d, &vecs)
    };
    let mut arrows = Vec::new();
    let mut arrow_vecs: Vec<Vector<F>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ej = sandwich(&rad, i, j);
            let mut span = sandwich(&rad2, i, j);
            for k in 0..ej.dim() {
                let v = ej.basis().row(k);
                if !span.contains(v) {
                    span = span.sum(&Subspace::from_vecs(&f, d, &[v.to_vec()]));
                    arrows.push(Arrow {
                        label: format!("r{}", arrows.len() + 1),
                        source: i,
                        target: j,
                    });
                    arrow_vecs.push(v.to_vec());
                }
            }
        }
    }
    let mut words: Vec<PathWord> = (0..n).map(PathWord::trivial).collect();
    let mut vecs: Vec<Vector<F>> = idempotents.to_vec();
    let mut span = Subspace::from_vecs(&f, d, &vecs);
    let mut frontier: Vec<usize> = (0..n).collect();
    while !frontier.is_empty() && span.dim() < d {
        let mut next = Vec::new();
        for &w in &frontier {
            for (a, arr) in arrows.iter().enumerate() {
                if arr.source != words[w].target {
                    continue;
                }
                let v = raw.mul(&vecs[w], &arrow_vecs[a]);
                if span.contains(&v) {
                    continue;
                }
                span = span.sum(&Subspace::from_vecs(&f, d, &[v.clone()]));
                let mut path = words[w].arrows.clone();
                path.push(a);
                words.push(PathWord {
                    source: words[w].source,
                    target: arr.target,
                    arrows: path,
                });
                vecs.push(v);
                next.push(words.len() - 1);
            }
        }
        frontier = next;
    }
    if span.dim() != d {
        return Err(Error::InternalInconsistency(format!(
            "paths span only {} of {d} dimensions",
            span.dim()
        )));
    }
    let to_old = Matrix::from_rows(&f, d, &vecs)?;
    let inv = to_old
        .inverse()
        .ok_or_else(|| Error::InternalInconsistency("path basis not invertible".into()))?;
    let mut table = Vec::with_capacity(d * d);
    for r in 0..d {
        for s in 0..d {
            if words[r].target != words[s].source {
                table.push(Vec::new());
                continue;
            }
            let c = inv.vec_mul(&raw.mul(&vecs[r], &vecs[s]));
            table.push(
                c.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect(),
            );
        }
    }
    let algebra = AssocAlgebra::from_paths_unchecked(&f, n, arrows, words, table, provenance)?;
    Ok(Normalized { algebra, to_old })
}
