//! Finite-dimensional right modules, given as representations of the quiver of
//! a path-basis algebra: a space `M_i` per vertex and a matrix per arrow.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::algebra::AssocAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Matrix, Subspace};
use crate::morphism::ModuleMorphism;
use crate::raw::Vector;

pub struct ModuleRep<F: Field> {
    algebra: Arc<AssocAlgebra<F>>,
    dims: Vec<usize>,
    arrows: Vec<Matrix<F>>,
    words: OnceLock<Vec<Matrix<F>>>,
    presentation: OnceLock<Arc<Presentation<F>>>,
}

impl<F: Field> Clone for ModuleRep<F> {
    fn clone(&self) -> Self {
        ModuleRep {
            algebra: Arc::clone(&self.algebra),
            dims: self.dims.clone(),
            arrows: self.arrows.clone(),
            words: self.words.clone(),
            presentation: self.presentation.clone(),
        }
    }
}

impl<F: Field> fmt::Debug for ModuleRep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleRep").field("dims", &self.dims).field("arrows", &self.arrows).finish()
    }
}

/// A submodule given by one subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule<F: Field> {
    pub parts: Vec<Subspace<F>>,
}

impl<F: Field> Submodule<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.dim()).collect()
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(|p| p.dim()).sum()
    }

    pub fn sum(&self, other: &Self) -> Self {
        Submodule {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.sum(b)).collect(),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Submodule {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.intersect(b)).collect(),
        }
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a.contains_space(b))
    }
}

/// A submodule and the corresponding quotient, with the canonical maps.
#[derive(Clone, Debug)]
pub struct SubQuotient<F: Field> {
    pub sub: ModuleRep<F>,
    pub quotient: ModuleRep<F>,
    pub inclusion: ModuleMorphism<F>,
    pub projection: ModuleMorphism<F>,
}

/// Projective cover `P_0 -> M` and the top of its kernel.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    /// Vertex and value in `M_v` of each top generator.
    pub gens: Vec<(usize, Vector<F>)>,
    pub cover: ModuleRep<F>,
    /// For each vertex `t`, the `(generator, basis word)` labelling each basis vector of `(P_0)_t`.
    pub cover_index: Vec<Vec<(usize, usize)>>,
    pub epi: ModuleMorphism<F>,
    pub kernel: Submodule<F>,
    /// Top generators of the kernel: vertex `w_l` and the components `x_{kl}`
    /// as algebra elements in `e_{v_k} A e_{w_l}`.
    pub relations: Vec<(usize, Vec<Vector<F>>)>,
    section: Vec<(Vec<usize>, Matrix<F>)>,
}

impl<F: Field> ModuleRep<F> {
    /// Validates that the arrow matrices satisfy the algebra's relations.
    pub fn new(algebra: &Arc<AssocAlgebra<F>>, dims: Vec<usize>, arrows: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != algebra.n_vertices() || arrows.len() != algebra.arrows().len() {
            return Err(Error::InvalidModule("wrong number of vertices or arrows".into()));
        }
        for (a, m) in algebra.arrows().iter().zip(&arrows) {
            if m.rows() != dims[a.source] || m.cols() != dims[a.target] {
                return Err(Error::InvalidModule(format!("matrix for arrow {} has the wrong shape", a.label)));
            }
        }
        let m = Self::new_unchecked(algebra, dims, arrows);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: &Arc<AssocAlgebra<F>>, dims: Vec<usize>, arrows: Vec<Matrix<F>>) -> Self {
        debug_assert_eq!(dims.len(), algebra.n_vertices());
        debug_assert_eq!(arrows.len(), algebra.arrows().len());
        ModuleRep {
            algebra: Arc::clone(algebra),
            dims,
            arrows,
            words: OnceLock::new(),
            presentation: OnceLock::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        for r in 0..a.dim() {
            let w = a.word(r);
            for (k, arr) in a.arrows().iter().enumerate() {
                if arr.source != w.target {
                    continue;
                }
                let lhs = self.word_matrix(r).mul(&self.arrows[k])?;
                let rhs = self.rho(&a.basis_mul(r, a.arrow_basis(k)).to_vec(), w.source, arr.target);
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action violates the relation for {} * {}",
                        a.labels()[r],
                        arr.label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<AssocAlgebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn arrow_matrix(&self, a: usize) -> &Matrix<F> {
        &self.arrows[a]
    }
    pub fn arrow_matrices(&self) -> &[Matrix<F>] {
        &self.arrows
    }

    pub fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Action of basis word `r` as a block `M_source -> M_target`.
    pub fn word_matrix(&self, r: usize) -> &Matrix<F> {
        &self.words.get_or_init(|| {
            let a = &self.algebra;
            (0..a.dim())
                .map(|r| {
                    let w = a.word(r);
                    let mut m = Matrix::identity(a.field(), self.dims[w.source]);
                    for &k in &w.arrows {
                        m = m.mul(&self.arrows[k]).expect("composable arrows");
                    }
                    m
                })
                .collect()
        })[r]
    }

    /// Action of an algebra element, restricted to `M_s -> M_t`; only paths
    /// from `s` to `t` contribute.
    pub fn rho(&self, x: &[(usize, F::Elem)], s: usize, t: usize) -> Matrix<F> {
        let f = self.field();
        let mut out = Matrix::zeros(f, self.dims[s], self.dims[t]);
        for (r, c) in x {
            let w = self.algebra.word(*r);
            if w.source == s && w.target == t && !c.is_zero() {
                out = out.add(&self.word_matrix(*r).scale(c)).expect("shape");
            }
        }
        out
    }

    /// `rho` for a dense algebra vector.
    pub fn rho_dense(&self, x: &[F::Elem], s: usize, t: usize) -> Matrix<F> {
        let sparse: Vec<(usize, F::Elem)> =
            x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        self.rho(&sparse, s, t)
    }

    pub fn zero(algebra: &Arc<AssocAlgebra<F>>) -> Self {
        let f = algebra.field();
        let arrows = algebra.arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect();
        Self::new_unchecked(algebra, vec![0; algebra.n_vertices()], arrows)
    }

    /// `P(i) = e_i A`, with basis the paths starting at `i`.
    pub fn projective(algebra: &Arc<AssocAlgebra<F>>, i: usize) -> Self {
        let a = algebra;
        let f = a.field();
        let n = a.n_vertices();
        let parts: Vec<Vec<usize>> = (0..n).map(|t| a.words_between(i, t)).collect();
        let dims = parts.iter().map(|p| p.len()).collect();
        let arrows = a
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, arr)| {
                let src = &parts[arr.source];
                let dst = &parts[arr.target];
                let mut m = Matrix::zeros(f, src.len(), dst.len());
                for (row, &r) in src.iter().enumerate() {
                    for (u, c) in a.basis_mul(r, a.arrow_basis(k)) {
                        let col = dst.iter().position(|x| x == u).expect("path from i");
                        m.set(row, col, c.clone());
                    }
                }
                m
            })
            .collect();
        Self::new_unchecked(a, dims, arrows)
    }

    pub fn simple(algebra: &Arc<AssocAlgebra<F>>, i: usize) -> Self {
        let f = algebra.field();
        let dims: Vec<usize> = (0..algebra.n_vertices()).map(|t| usize::from(t == i)).collect();
        let arrows = algebra
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.source], dims[a.target]))
            .collect();
        Self::new_unchecked(algebra, dims, arrows)
    }

    /// `I(i) = D(A e_i)`.
    pub fn injective(algebra: &Arc<AssocAlgebra<F>>, i: usize) -> Self {
        Self::projective(&algebra.opposite(), i).dual()
    }

    /// `A_A = P(1) + ... + P(n)`.
    pub fn regular(algebra: &Arc<AssocAlgebra<F>>) -> Self {
        let ps: Vec<Self> = (0..algebra.n_vertices()).map(|i| Self::projective(algebra, i)).collect();
        Self::direct_sum(algebra, &ps)
    }

    /// `D(A_A)`, the sum of the indecomposable injectives.
    pub fn injective_cogenerator(algebra: &Arc<AssocAlgebra<F>>) -> Self {
        Self::regular(&algebra.opposite()).dual()
    }

    pub fn direct_sum(algebra: &Arc<AssocAlgebra<F>>, mods: &[Self]) -> Self {
        let f = algebra.field();
        let n = algebra.n_vertices();
        let dims = (0..n).map(|i| mods.iter().map(|m| m.dims[i]).sum()).collect();
        let arrows = (0..algebra.arrows().len())
            .map(|k| {
                let blocks: Vec<Matrix<F>> = mods.iter().map(|m| m.arrows[k].clone()).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        Self::new_unchecked(algebra, dims, arrows)
    }

    /// Direct sum with the canonical inclusions and projections.
    pub fn direct_sum_with_maps(
        algebra: &Arc<AssocAlgebra<F>>,
        mods: &[Self],
    ) -> (Self, Vec<ModuleMorphism<F>>, Vec<ModuleMorphism<F>>) {
        let f = algebra.field();
        let sum = Self::direct_sum(algebra, mods);
        let n = algebra.n_vertices();
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut offs = vec![0usize; n];
        for m in mods {
            let mut ib = Vec::with_capacity(n);
            let mut pb = Vec::with_capacity(n);
            for i in 0..n {
                let mut e = Matrix::zeros(f, m.dims[i], sum.dims[i]);
                e.set_block(0, offs[i], &Matrix::identity(f, m.dims[i]));
                pb.push(e.transpose());
                ib.push(e);
                offs[i] += m.dims[i];
            }
            incl.push(ModuleMorphism::from_blocks(ib));
            proj.push(ModuleMorphism::from_blocks(pb));
        }
        (sum, incl, proj)
    }

    /// `D(M) = Hom_K(M, K)` as a right module over the opposite algebra.
    pub fn dual(&self) -> Self {
        let op = self.algebra.opposite();
        let arrows = self.arrows.iter().map(|m| m.transpose()).collect();
        Self::new_unchecked(&op, self.dims.clone(), arrows)
    }

    pub fn zero_sub(&self) -> Submodule<F> {
        Submodule {
            parts: self.dims.iter().map(|&d| Subspace::zero(self.field(), d)).collect(),
        }
    }

    pub fn full_sub(&self) -> Submodule<F> {
        Submodule {
            parts: self.dims.iter().map(|&d| Subspace::full(self.field(), d)).collect(),
        }
    }

    /// The submodule generated by elements `(vertex, value in M_vertex)`.
    pub fn generate(&self, gens: &[(usize, Vector<F>)]) -> Submodule<F> {
        let f = self.field().clone();
        let mut parts: Vec<Subspace<F>> = self.dims.iter().map(|&d| Subspace::zero(&f, d)).collect();
        let mut queue: Vec<(usize, Vector<F>)> = Vec::new();
        let push = |parts: &mut Vec<Subspace<F>>, queue: &mut Vec<(usize, Vector<F>)>, i: usize, v: Vector<F>| {
            if !parts[i].contains(&v) {
                parts[i] = parts[i].sum(&Subspace::from_vecs(&f, self.dims[i], &[v.clone()]));
                queue.push((i, v));
            }
        };
        for (i, v) in gens {
            push(&mut parts, &mut queue, *i, v.clone());
        }
        while let Some((s, v)) = queue.pop() {
            for (k, a) in self.algebra.arrows().iter().enumerate() {
                if a.source == s {
                    let w = self.arrows[k].vec_mul(&v);
                    push(&mut parts, &mut queue, a.target, w);
                }
            }
        }
        Submodule { parts }
    }

    /// The submodule generated by a whole vertex-graded subspace family.
    pub fn generate_sub(&self, sub: &Submodule<F>) -> Submodule<F> {
        let gens: Vec<(usize, Vector<F>)> = sub
            .parts
            .iter()
            .enumerate()
            .flat_map(|(i, p)| (0..p.dim()).map(move |k| (i, p.basis().row(k).to_vec())))
            .collect();
        self.generate(&gens)
    }

    pub fn is_submodule(&self, sub: &Submodule<F>) -> bool {
        self.algebra.arrows().iter().enumerate().all(|(k, a)| {
            let p = &sub.parts[a.source];
            (0..p.dim()).all(|r| sub.parts[a.target].contains(&self.arrows[k].vec_mul(p.basis().row(r))))
        })
    }

    pub fn sub_quotient(&self, sub: &Submodule<F>) -> Result<SubQuotient<F>> {
        if sub.parts.len() != self.dims.len()
            || sub.parts.iter().zip(&self.dims).any(|(p, &d)| p.ambient() != d)
            || !self.is_submodule(sub)
        {
            return Err(Error::NotASubmodule);
        }
        let f = self.field();
        let n = self.dims.len();
        let sub_arrows = self
            .algebra
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (ps, pt) = (&sub.parts[a.source], &sub.parts[a.target]);
                let rows: Vec<Vector<F>> = (0..ps.dim())
                    .map(|r| pt.coords(&self.arrows[k].vec_mul(ps.basis().row(r))).expect("closed"))
                    .collect();
                Matrix::from_rows(f, pt.dim(), &rows).expect("shape")
            })
            .collect();
        let sub_mod = Self::new_unchecked(&self.algebra, sub.dims(), sub_arrows);
        let inclusion = ModuleMorphism::from_blocks(sub.parts.iter().map(|p| p.basis().clone()).collect());
        let keep: Vec<Vec<usize>> = sub.parts.iter().map(|p| p.complement_units()).collect();
        let proj: Vec<Matrix<F>> = (0..n)
            .map(|i| {
                let p = &sub.parts[i];
                let rows: Vec<Vector<F>> = (0..self.dims[i])
                    .map(|j| {
                        let mut v = vec![f.zero(); self.dims[i]];
                        v[j] = f.one();
                        let c: Vector<F> = p.pivots().iter().map(|&q| v[q].clone()).collect();
                        let s = p.basis().vec_mul(&c);
                        keep[i].iter().map(|&q| v[q].sub(&s[q])).collect()
                    })
                    .collect();
                Matrix::from_rows(f, keep[i].len(), &rows).expect("shape")
            })
            .collect();
        let q_arrows = self
            .algebra
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                self.arrows[k]
                    .select_rows(&keep[a.source])
                    .mul(&proj[a.target])
                    .expect("shape")
            })
            .collect();
        let quotient = Self::new_unchecked(&self.algebra, keep.iter().map(|k| k.len()).collect(), q_arrows);
        Ok(SubQuotient {
            sub: sub_mod,
            quotient,
            inclusion,
            projection: ModuleMorphism::from_blocks(proj),
        })
    }

    pub fn quotient(&self, sub: &Submodule<F>) -> Result<Self> {
        Ok(self.sub_quotient(sub)?.quotient)
    }

    pub fn submodule(&self, sub: &Submodule<F>) -> Result<Self> {
        Ok(self.sub_quotient(sub)?.sub)
    }

    /// `U J` for a submodule `U`.
    pub fn radical_of(&self, sub: &Submodule<F>) -> Submodule<F> {
        let f = self.field();
        let mut vecs: Vec<Vec<Vector<F>>> = vec![Vec::new(); self.dims.len()];
        for (k, a) in self.algebra.arrows().iter().enumerate() {
            let p = &sub.parts[a.source];
            for r in 0..p.dim() {
                vecs[a.target].push(self.arrows[k].vec_mul(p.basis().row(r)));
            }
        }
        Submodule {
            parts: vecs
                .iter()
                .enumerate()
                .map(|(i, v)| Subspace::from_vecs(f, self.dims[i], v))
                .collect(),
        }
    }

    pub fn radical(&self) -> Submodule<F> {
        self.radical_of(&self.full_sub())
    }

    pub fn socle(&self) -> Submodule<F> {
        let f = self.field();
        let parts = (0..self.dims.len())
            .map(|s| {
                let outs: Vec<&Matrix<F>> = self
                    .algebra
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.source == s)
                    .map(|(k, _)| &self.arrows[k])
                    .collect();
                if outs.is_empty() || self.dims[s] == 0 {
                    return Subspace::full(f, self.dims[s]);
                }
                let mut big = outs[0].clone();
                for m in &outs[1..] {
                    big = big.hstack(m).expect("rows");
                }
                Subspace::from_vecs(f, self.dims[s], &big.left_kernel())
            })
            .collect();
        Submodule { parts }
    }

    pub fn top(&self) -> Self {
        self.quotient(&self.radical()).expect("radical is a submodule")
    }

    pub fn top_dims(&self) -> Vec<usize> {
        let r = self.radical();
        self.dims.iter().zip(r.dims()).map(|(a, b)| a - b).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle().dims()
    }

    /// Dimension vectors of `rad^k M / rad^{k+1} M`.
    pub fn radical_layers(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = self.full_sub();
        while cur.dim() > 0 {
            let next = self.radical_of(&cur);
            out.push(cur.dims().iter().zip(next.dims()).map(|(a, b)| a - b).collect());
            cur = next;
        }
        out
    }

    /// Dimension vectors of the socle series layers, bottom first.
    pub fn socle_layers(&self) -> Vec<Vec<usize>> {
        self.dual().radical_layers()
    }

    pub fn presentation(&self) -> Arc<Presentation<F>> {
        self.presentation.get_or_init(|| Arc::new(self.build_presentation())).clone()
    }

    fn build_presentation(&self) -> Presentation<F> {
        let a = &self.algebra;
        let f = self.field();
        let n = a.n_vertices();
        let rad = self.radical();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in rad.parts[i].complement_units() {
                let mut v = vec![f.zero(); self.dims[i]];
                v[j] = f.one();
                gens.push((i, v));
            }
        }
        let projs: Vec<Self> = gens.iter().map(|(v, _)| Self::projective(a, *v)).collect();
        let cover = Self::direct_sum(a, &projs);
        let cover_index: Vec<Vec<(usize, usize)>> = (0..n)
            .map(|t| {
                gens.iter()
                    .enumerate()
                    .flat_map(|(k, (v, _))| a.words_between(*v, t).into_iter().map(move |r| (k, r)))
                    .collect()
            })
            .collect();
        let epi_blocks: Vec<Matrix<F>> = (0..n)
            .map(|t| {
                let rows: Vec<Vector<F>> = cover_index[t]
                    .iter()
                    .map(|&(k, r)| self.word_matrix(r).vec_mul(&gens[k].1))
                    .collect();
                Matrix::from_rows(f, self.dims[t], &rows).expect("shape")
            })
            .collect();
        let kernel = Submodule {
            parts: (0..n)
                .map(|t| Subspace::from_vecs(f, cover.dims[t], &epi_blocks[t].left_kernel()))
                .collect(),
        };
        let krad = cover.radical_of(&kernel);
        let mut relations = Vec::new();
        for t in 0..n {
            let mut span = krad.parts[t].clone();
            let kt = &kernel.parts[t];
            for r in 0..kt.dim() {
                let v = kt.basis().row(r);
                if span.contains(v) {
                    continue;
                }
                span = span.sum(&Subspace::from_vecs(f, cover.dims[t], &[v.to_vec()]));
                let mut comps = vec![a.zero_vec(); gens.len()];
                for (pos, &(k, w)) in cover_index[t].iter().enumerate() {
                    comps[k][w] = v[pos].clone();
                }
                relations.push((t, comps));
            }
        }
        let section = (0..n)
            .map(|t| {
                let rows = epi_blocks[t].transpose().rref().pivots;
                let s = epi_blocks[t].select_rows(&rows);
                (rows, s.inverse().expect("epi onto M_t"))
            })
            .collect();
        Presentation {
            gens,
            cover,
            cover_index,
            epi: ModuleMorphism::from_blocks(epi_blocks),
            kernel,
            relations,
            section,
        }
    }

    /// `(P_0, P_0 -> M, Omega^1 M)`.
    pub fn projective_cover(&self) -> (Self, ModuleMorphism<F>, Self) {
        let p = self.presentation();
        let syz = p.cover.submodule(&p.kernel).expect("kernel is a submodule");
        (p.cover.clone(), p.epi.clone(), syz)
    }

    pub fn syzygy(&self) -> Self {
        self.projective_cover().2
    }

    /// Top generator vertices of the projective cover.
    pub fn cover_vertices(&self) -> Vec<usize> {
        self.presentation().gens.iter().map(|g| g.0).collect()
    }

    pub fn is_projective(&self) -> bool {
        self.presentation().kernel.dim() == 0
    }

    pub fn is_injective(&self) -> bool {
        self.dual().is_projective()
    }
}

impl<F: Field> ModuleRep<F> {
    /// A random module for property tests: a quotient of one or two
    /// indecomposable projectives, or a submodule of one or two injectives,
    /// cut out by up to two random elements.
    pub fn random<R: Rng + ?Sized>(algebra: &Arc<AssocAlgebra<F>>, rng: &mut R) -> Self {
        let n = algebra.n_vertices();
        let proj = rng.random_bool(0.5);
        let k = rng.random_range(1..=2);
        let parts: Vec<Self> = (0..k)
            .map(|_| {
                let v = rng.random_range(0..n);
                if proj {
                    Self::projective(algebra, v)
                } else {
                    Self::injective(algebra, v)
                }
            })
            .collect();
        let base = Self::direct_sum(algebra, &parts);
        let f = base.field().clone();
        let nonzero: Vec<usize> = (0..n).filter(|&v| base.dims[v] > 0).collect();
        let gens: Vec<(usize, Vector<F>)> = (0..rng.random_range(0..=2))
            .map(|_| {
                let v = nonzero[rng.random_range(0..nonzero.len())];
                (v, (0..base.dims[v]).map(|_| f.random(rng)).collect())
            })
            .collect();
        let sub = base.generate(&gens);
        if proj || sub.dim() == 0 {
            base.quotient(&sub).expect("generated submodule")
        } else {
            base.submodule(&sub).expect("generated submodule")
        }
    }
}

impl<F: Field> Presentation<F> {
    /// The morphism `M -> N` sending generator `k` to `images[k]`, assuming
    /// the relations hold.
    pub fn morphism_from_images(&self, m: &ModuleRep<F>, n: &ModuleRep<F>, images: &[Vector<F>]) -> ModuleMorphism<F> {
        let f = m.field();
        let blocks = (0..m.dims.len())
            .map(|t| {
                let (rows, inv) = &self.section[t];
                let phi: Vec<Vector<F>> = rows
                    .iter()
                    .map(|&row| {
                        let (k, r) = self.cover_index[t][row];
                        n.word_matrix(r).vec_mul(&images[k])
                    })
                    .collect();
                let phi = Matrix::from_rows(f, n.dims[t], &phi).expect("shape");
                inv.mul(&phi).expect("shape")
            })
            .collect();
        ModuleMorphism::from_blocks(blocks)
    }

    /// Matrix of `Hom(P_0, N) -> Hom(P_1, N)`; rows index the images of the
    /// generators, columns the images of the relations.
    pub fn hom_differential(&self, n: &ModuleRep<F>) -> Matrix<F> {
        let f = n.field();
        let row_dims: Vec<usize> = self.gens.iter().map(|(v, _)| n.dims[*v]).collect();
        let col_dims: Vec<usize> = self.relations.iter().map(|(w, _)| n.dims[*w]).collect();
        let mut d = Matrix::zeros(f, row_dims.iter().sum(), col_dims.iter().sum());
        let mut c0 = 0;
        for (l, (w, comps)) in self.relations.iter().enumerate() {
            let mut r0 = 0;
            for (k, (v, _)) in self.gens.iter().enumerate() {
                let block = n.rho_dense(&comps[k], *v, *w);
                d.set_block(r0, c0, &block);
                r0 += row_dims[k];
            }
            c0 += col_dims[l];
        }
        d
    }

    /// Offsets of each generator's block in the unknown vector.
    pub fn gen_offsets(&self, n: &ModuleRep<F>) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.gens.len() + 1);
        let mut o = 0;
        out.push(0);
        for (v, _) in &self.gens {
            o += n.dims[*v];
            out.push(o);
        }
        out
    }
}
