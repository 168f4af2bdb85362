//! Hom spaces and everything built on them: isomorphism tests, traces,
//! Krull–Schmidt decomposition and endomorphism algebras.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{AssocAlgebra, Normalized};
use crate::config::Settings;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Matrix, Subspace};
use crate::module::{ModuleRep, Presentation, Submodule};
use crate::morphism::ModuleMorphism;
use crate::raw::{RawAlgebra, Vector};

/// A basis of `Hom(M, N)` with a coordinate map.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub basis: Vec<ModuleMorphism<F>>,
    free: Vec<usize>,
    pres: Arc<Presentation<F>>,
}

impl<F: Field> HomSpace<F> {
    pub fn compute(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<Self> {
        m.same_algebra(n)?;
        let pres = m.presentation();
        let d = pres.hom_differential(n);
        let t = d.transpose();
        let free = t.kernel_free_columns();
        let offs = pres.gen_offsets(n);
        let basis = t
            .kernel_basis()
            .iter()
            .map(|sol| {
                let images: Vec<Vector<F>> = (0..pres.gens.len()).map(|k| sol[offs[k]..offs[k + 1]].to_vec()).collect();
                pres.morphism_from_images(m, n, &images)
            })
            .collect();
        Ok(HomSpace { basis, free, pres })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a morphism `M -> N` in this basis.
    pub fn coords(&self, h: &ModuleMorphism<F>) -> Vector<F> {
        let images: Vec<F::Elem> = self
            .pres
            .gens
            .iter()
            .flat_map(|(v, g)| h.apply_block(*v, g))
            .collect();
        self.free.iter().map(|&c| images[c].clone()).collect()
    }

    pub fn combination(&self, field: &F, m: &ModuleRep<F>, n: &ModuleRep<F>, coeffs: &[F::Elem]) -> ModuleMorphism<F> {
        ModuleMorphism::combination(field, &self.basis, coeffs, m.dims(), n.dims())
    }
}

pub fn hom_basis<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<Vec<ModuleMorphism<F>>> {
    Ok(HomSpace::compute(m, n)?.basis)
}

pub fn dim_hom<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>) -> Result<usize> {
    Ok(HomSpace::compute(m, n)?.dim())
}

/// Checks `f_s X^N_a = X^M_a f_t` for every arrow.
pub fn is_homomorphism<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>, h: &ModuleMorphism<F>) -> bool {
    if h.check_shape(m.dims(), n.dims()).is_err() {
        return false;
    }
    m.algebra().arrows().iter().enumerate().all(|(k, a)| {
        let l = h.block(a.source).mul(n.arrow_matrix(k)).expect("shape");
        let r = m.arrow_matrix(k).mul(h.block(a.target)).expect("shape");
        l == r
    })
}

/// The sum of the images of all maps `X -> M`.
pub fn trace_submodule<F: Field>(x: &ModuleRep<F>, m: &ModuleRep<F>) -> Result<Submodule<F>> {
    let hs = hom_basis(x, m)?;
    let f = m.field();
    let parts = (0..m.dims().len())
        .map(|t| {
            let mut vecs = Vec::new();
            for h in &hs {
                vecs.extend(h.block(t).row_vecs());
            }
            Subspace::from_vecs(f, m.dims()[t], &vecs)
        })
        .collect();
    Ok(Submodule { parts })
}

#[derive(Clone, Debug)]
pub enum IsoVerdict<F: Field> {
    Isomorphic(ModuleMorphism<F>),
    NotIsomorphic(String),
    Inconclusive(String),
}

impl<F: Field> IsoVerdict<F> {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    /// `Ok(true|false)`, or an `Inconclusive` error.
    pub fn decided(&self) -> Result<bool> {
        match self {
            IsoVerdict::Isomorphic(_) => Ok(true),
            IsoVerdict::NotIsomorphic(_) => Ok(false),
            IsoVerdict::Inconclusive(s) => Err(Error::Inconclusive(s.clone())),
        }
    }
}

/// Size of the coefficient sample set used for random combinations.
pub(crate) fn sample_size<F: Field>(f: &F) -> u64 {
    f.order().unwrap_or(2 * RATIONAL_RANGE as u64 + 1)
}

const RATIONAL_RANGE: i64 = 1000;

pub(crate) fn sample<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R) -> F::Elem {
    match f.order() {
        Some(_) => f.random(rng),
        None => f.from_i64(rng.random_range(-RATIONAL_RANGE..=RATIONAL_RANGE)),
    }
}

/// Searches `Hom(M, N)` for an invertible element, after cheap refutations.
pub fn is_isomorphic<F: Field>(m: &ModuleRep<F>, n: &ModuleRep<F>, settings: &Settings) -> Result<IsoVerdict<F>> {
    m.same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::NotIsomorphic(format!(
            "dimension vectors {:?} and {:?} differ",
            m.dims(),
            n.dims()
        )));
    }
    if m.top_dims() != n.top_dims() {
        return Ok(IsoVerdict::NotIsomorphic(format!("tops {:?} and {:?} differ", m.top_dims(), n.top_dims())));
    }
    if m.socle_dims() != n.socle_dims() {
        return Ok(IsoVerdict::NotIsomorphic(format!(
            "socles {:?} and {:?} differ",
            m.socle_dims(),
            n.socle_dims()
        )));
    }
    let f = m.field();
    if m.is_zero() {
        return Ok(IsoVerdict::Isomorphic(ModuleMorphism::zero(f, m.dims(), n.dims())));
    }
    let hs = HomSpace::compute(m, n)?;
    let (emm, enn) = (dim_hom(m, m)?, dim_hom(n, n)?);
    if hs.dim() != emm || emm != enn {
        return Ok(IsoVerdict::NotIsomorphic(format!(
            "dim Hom(M,M) = {emm}, dim Hom(M,N) = {}, dim Hom(N,N) = {enn}",
            hs.dim()
        )));
    }
    match find_invertible(f, m, n, &hs, settings) {
        Search::Found(h) => Ok(IsoVerdict::Isomorphic(h)),
        Search::Exhausted => Ok(IsoVerdict::NotIsomorphic(
            "no invertible element in Hom(M,N) (exhaustive search)".into(),
        )),
        Search::NotFound { trials } => {
            let s = sample_size(f);
            let deg = m.dim() as u64;
            if 2 * deg >= s {
                Ok(IsoVerdict::Inconclusive(format!(
                    "no invertible element found in {trials} random trials over a field of size {s} for dimension {deg}"
                )))
            } else {
                Ok(IsoVerdict::NotIsomorphic(format!(
                    "no invertible element found in Hom(M,N) after {trials} random trials (failure probability below 2^-{trials})"
                )))
            }
        }
    }
}

enum Search<F: Field> {
    Found(ModuleMorphism<F>),
    Exhausted,
    NotFound { trials: usize },
}

fn find_invertible<F: Field>(
    f: &F,
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
    hs: &HomSpace<F>,
    settings: &Settings,
) -> Search<F> {
    let h = hs.dim();
    if h == 0 {
        return Search::Exhausted;
    }
    for b in &hs.basis {
        if b.is_iso() {
            return Search::Found(b.clone());
        }
    }
    for i in 0..h {
        for j in i + 1..h {
            let s = hs.basis[i].add(&hs.basis[j]).expect("shape");
            if s.is_iso() {
                return Search::Found(s);
            }
        }
    }
    let mut rng = settings.rng_for(0x150);
    for _ in 0..settings.random_trials {
        let c: Vector<F> = (0..h).map(|_| sample(f, &mut rng)).collect();
        let cand = hs.combination(f, m, n, &c);
        if cand.is_iso() {
            return Search::Found(cand);
        }
    }
    if let Some(q) = f.order() {
        if (h as f64) * (q as f64).log10() <= (settings.exhaustive_limit as f64).log10() + 1e-9 {
            let mut idx = vec![0u64; h];
            loop {
                let c: Vector<F> = idx.iter().map(|&i| f.element(i)).collect();
                let cand = hs.combination(f, m, n, &c);
                if cand.is_iso() {
                    return Search::Found(cand);
                }
                let mut k = 0;
                while k < h {
                    idx[k] += 1;
                    if idx[k] < q {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == h {
                    return Search::Exhausted;
                }
            }
        }
    }
    Search::NotFound {
        trials: settings.random_trials,
    }
}

/// An indecomposable summand of `M`, as a submodule with its split projection.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub module: ModuleRep<F>,
    pub inclusion: ModuleMorphism<F>,
    pub projection: ModuleMorphism<F>,
}

/// Splits `M` into indecomposable submodules whose direct sum is `M`.
pub fn split_indecomposables<F: Field>(m: &ModuleRep<F>, settings: &Settings) -> Result<Vec<Summand<F>>> {
    let f = m.field().clone();
    let mut rng = settings.rng_for(0xDEC);
    let mut pending = vec![m.full_sub()];
    let mut done: Vec<Submodule<F>> = Vec::new();
    while let Some(u) = pending.pop() {
        if u.dim() == 0 {
            continue;
        }
        let um = m.submodule(&u)?;
        match split_once(&f, &um, settings, &mut rng)? {
            None => done.push(u),
            Some((a, b)) => {
                // express the pieces in the coordinates of M
                for piece in [b, a] {
                    let parts = piece
                        .parts
                        .iter()
                        .enumerate()
                        .map(|(t, p)| {
                            let vecs: Vec<Vector<F>> = (0..p.dim())
                                .map(|r| u.parts[t].basis().vec_mul(p.basis().row(r)))
                                .collect();
                            Subspace::from_vecs(&f, m.dims()[t], &vecs)
                        })
                        .collect();
                    pending.push(Submodule { parts });
                }
            }
        }
    }
    done.sort_by_key(|u| u.dims().iter().map(|d| usize::MAX - d).collect::<Vec<_>>());
    let n = m.dims().len();
    let mut change: Vec<Matrix<F>> = Vec::with_capacity(n);
    for t in 0..n {
        let mut b = Matrix::zeros(&f, 0, m.dims()[t]);
        for u in &done {
            b = b.vstack(u.parts[t].basis())?;
        }
        change.push(
            b.inverse()
                .ok_or_else(|| Error::InternalInconsistency("summands do not span".into()))?,
        );
    }
    let mut offs = vec![0usize; n];
    let mut out = Vec::with_capacity(done.len());
    for u in &done {
        let sq = m.sub_quotient(u)?;
        let proj = (0..n)
            .map(|t| {
                let d = u.parts[t].dim();
                let cols: Vec<usize> = (offs[t]..offs[t] + d).collect();
                offs[t] += d;
                change[t].select_cols(&cols)
            })
            .collect();
        out.push(Summand {
            module: sq.sub,
            inclusion: sq.inclusion,
            projection: ModuleMorphism::from_blocks(proj),
        });
    }
    Ok(out)
}

/// Either a Fitting splitting `M = A + B` or a certificate that `End(M)` is local.
fn split_once<F: Field, R: Rng + ?Sized>(
    f: &F,
    m: &ModuleRep<F>,
    settings: &Settings,
    rng: &mut R,
) -> Result<Option<(Submodule<F>, Submodule<F>)>> {
    let end = hom_basis(m, m)?;
    let mut nil_part = Vec::with_capacity(end.len());
    let mut local = true;
    for b in &end {
        match single_eigenvalue(f, m, b)? {
            Shape::Split(a, c) => return Ok(Some((a, c))),
            Shape::Local(lambda) => {
                nil_part.push(b.add(&ModuleMorphism::identity(f, m.dims()).scale(&lambda.neg()))?)
            }
            Shape::Unsplit => local = false,
        }
    }
    if local && nilpotent_span(f, m, &nil_part)? {
        return Ok(None);
    }
    let h = end.len();
    for i in 0..h {
        for j in i + 1..h {
            if let Shape::Split(a, c) = single_eigenvalue(f, m, &end[i].add(&end[j])?)? {
                return Ok(Some((a, c)));
            }
        }
    }
    for _ in 0..settings.random_trials {
        let c: Vector<F> = (0..h).map(|_| sample(f, rng)).collect();
        let cand = ModuleMorphism::combination(f, &end, &c, m.dims(), m.dims());
        if let Shape::Split(a, c) = single_eigenvalue(f, m, &cand)? {
            return Ok(Some((a, c)));
        }
    }
    Err(Error::DecompositionFailed(format!(
        "module with dimension vector {:?}: no splitting endomorphism found and the local certificate fails",
        m.dims()
    )))
}

enum Shape<F: Field> {
    Local(F::Elem),
    Split(Submodule<F>, Submodule<F>),
    Unsplit,
}

fn single_eigenvalue<F: Field>(f: &F, m: &ModuleRep<F>, phi: &ModuleMorphism<F>) -> Result<Shape<F>> {
    let full = phi.full_matrix(f);
    let ev = full.eigenvalues();
    let Some(lambda) = ev.first() else {
        return Ok(Shape::Unsplit);
    };
    let psi = full.shift(lambda);
    let dim = m.dim();
    let p = psi.pow(dim)?;
    if p.is_zero() {
        return Ok(Shape::Local(lambda.clone()));
    }
    if ev.len() < 2 && p.is_invertible() {
        return Ok(Shape::Unsplit);
    }
    // Fitting: M = Im psi^N + Ker psi^N, both submodules
    let mut im = Vec::new();
    let mut ker = Vec::new();
    let mut off = 0;
    for (t, &d) in m.dims().iter().enumerate() {
        let block = p.submatrix(off, off + d, off, off + d);
        im.push(block.row_space());
        ker.push(Subspace::from_vecs(f, d, &block.left_kernel()));
        off += d;
        debug_assert_eq!(im[t].dim() + ker[t].dim(), d);
    }
    let (a, b) = (Submodule { parts: im }, Submodule { parts: ker });
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(Shape::Unsplit);
    }
    Ok(Shape::Split(a, b))
}

/// Whether the span of the given endomorphisms is closed under composition
/// and nilpotent.
fn nilpotent_span<F: Field>(f: &F, m: &ModuleRep<F>, gens: &[ModuleMorphism<F>]) -> Result<bool> {
    let flat = |h: &ModuleMorphism<F>| -> Vector<F> { h.blocks().iter().flat_map(|b| b.data().to_vec()).collect() };
    let total: usize = m.dims().iter().map(|d| d * d).sum();
    let span = Subspace::from_vecs(f, total, &gens.iter().map(flat).collect::<Vec<_>>());
    for a in gens {
        for b in gens {
            if !span.contains(&flat(&a.then(b)?)) {
                return Ok(false);
            }
        }
    }
    // powers of the span must reach zero
    let mut power: Vec<ModuleMorphism<F>> = gens.to_vec();
    for _ in 0..=m.dim() {
        let vecs: Vec<Vector<F>> = power.iter().map(flat).collect();
        let sp = Subspace::from_vecs(f, total, &vecs);
        if sp.dim() == 0 {
            return Ok(true);
        }
        let mut next = Vec::new();
        for a in &power {
            for b in gens {
                let c = a.then(b)?;
                if !c.is_zero() {
                    next.push(c);
                }
            }
        }
        // keep a basis only
        let vecs: Vec<Vector<F>> = next.iter().map(flat).collect();
        let sp = Subspace::from_vecs(f, total, &vecs);
        let mut kept = Vec::new();
        let mut acc = Subspace::zero(f, total);
        for (h, v) in next.into_iter().zip(vecs) {
            if !acc.contains(&v) {
                acc = acc.sum(&Subspace::from_vecs(f, total, &[v]));
                kept.push(h);
            }
            if acc.dim() == sp.dim() {
                break;
            }
        }
        power = kept;
    }
    Ok(false)
}

/// Indecomposable summands grouped up to isomorphism.
pub fn decompose<F: Field>(m: &ModuleRep<F>, settings: &Settings) -> Result<Vec<(ModuleRep<F>, usize)>> {
    let pieces = split_indecomposables(m, settings)?;
    let mut groups: Vec<(ModuleRep<F>, usize)> = Vec::new();
    for s in pieces {
        let mut placed = false;
        for g in groups.iter_mut() {
            if is_isomorphic(&g.0, &s.module, settings)?.decided()? {
                g.1 += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push((s.module, 1));
        }
    }
    Ok(groups)
}

/// `End(N_1 + ... + N_r)` for pairwise non-isomorphic indecomposables, with
/// `e_i` the projection onto `N_i`. The product is composition, `f g = f o g`,
/// so `e_i R e_j = Hom(N_j, N_i)`.
#[derive(Clone, Debug)]
pub struct EndAlgebra<F: Field> {
    pub algebra: Arc<AssocAlgebra<F>>,
    pub summands: Vec<ModuleRep<F>>,
    pub to_old: Matrix<F>,
}

pub fn endomorphism_algebra<F: Field>(summands: &[ModuleRep<F>]) -> Result<EndAlgebra<F>> {
    let Some(first) = summands.first() else {
        return Err(Error::InvalidModule("endomorphism algebra of the zero module".into()));
    };
    let f = first.field().clone();
    let r = summands.len();
    // spaces[i][j] = Hom(N_j, N_i)
    let mut spaces: Vec<Vec<HomSpace<F>>> = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            row.push(HomSpace::compute(&summands[j], &summands[i])?);
        }
        spaces.push(row);
    }
    let mut index = Vec::new();
    for (i, row) in spaces.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            for t in 0..s.dim() {
                index.push((i, j, t));
            }
        }
    }
    let d = index.len();
    let pos = |i: usize, j: usize, t: usize| index.iter().position(|&x| x == (i, j, t)).expect("index");
    let mut products = Vec::with_capacity(d * d);
    for &(i, j, t) in &index {
        for &(k, l, u) in &index {
            let mut v = vec![f.zero(); d];
            if j == k {
                // f o g with g: N_l -> N_k first
                let comp = spaces[k][l].basis[u].then(&spaces[i][j].basis[t])?;
                for (s, c) in spaces[i][l].coords(&comp).into_iter().enumerate() {
                    v[pos(i, l, s)] = c;
                }
            }
            products.push(v);
        }
    }
    let mut unit = vec![f.zero(); d];
    let mut idems = Vec::with_capacity(r);
    for i in 0..r {
        let id = ModuleMorphism::identity(&f, summands[i].dims());
        let mut e = vec![f.zero(); d];
        for (s, c) in spaces[i][i].coords(&id).into_iter().enumerate() {
            e[pos(i, i, s)] = c.clone();
            unit[pos(i, i, s)] = c;
        }
        idems.push(e);
    }
    let raw = RawAlgebra::new(&f, d, products, unit)?;
    let Normalized { algebra, to_old } = AssocAlgebra::from_raw(&raw, &idems, None)?;
    Ok(EndAlgebra {
        algebra: Arc::new(algebra),
        summands: summands.to_vec(),
        to_old,
    })
}

/// Pairwise non-isomorphic indecomposable summands, in order of first appearance.
pub fn basic_summands<F: Field>(m: &ModuleRep<F>, settings: &Settings) -> Result<Vec<ModuleRep<F>>> {
    Ok(decompose(m, settings)?.into_iter().map(|g| g.0).collect())
}
