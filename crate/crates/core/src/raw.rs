//! Algebras given only by structure constants: radical computation and
//! idempotent splitting.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Matrix, Subspace};

pub type Vector<F> = Vec<<F as Field>::Elem>;

/// A unital associative algebra on a basis `b_0..b_{d-1}`, products stored sparsely.
#[derive(Clone, Debug)]
pub struct RawAlgebra<F: Field> {
    field: F,
    dim: usize,
    table: Vec<Vec<(usize, F::Elem)>>,
    unit: Vector<F>,
}

fn sparse<F: Field>(v: &[F::Elem]) -> Vec<(usize, F::Elem)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

impl<F: Field> RawAlgebra<F> {
    /// `products[r * dim + s]` holds the coordinates of `b_r b_s`.
    pub fn new(field: &F, dim: usize, products: Vec<Vector<F>>, unit: Vector<F>) -> Result<Self> {
        if products.len() != dim * dim || products.iter().any(|p| p.len() != dim) || unit.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "structure constants do not match dimension {dim}"
            )));
        }
        let table = products.iter().map(|p| sparse::<F>(p)).collect();
        let a = RawAlgebra {
            field: field.clone(),
            dim,
            table,
            unit,
        };
        a.check()?;
        Ok(a)
    }

    pub(crate) fn from_sparse_unchecked(
        field: &F,
        dim: usize,
        table: Vec<Vec<(usize, F::Elem)>>,
        unit: Vector<F>,
    ) -> Self {
        RawAlgebra {
            field: field.clone(),
            dim,
            table,
            unit,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn basis_mul(&self, r: usize, s: usize) -> &[(usize, F::Elem)] {
        &self.table[r * self.dim + s]
    }

    pub fn unit_vector(&self, r: usize) -> Vector<F> {
        let mut v = vec![self.field.zero(); self.dim];
        v[r] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        let mut out = vec![self.field.zero(); self.dim];
        for (r, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (s, b) in y.iter().enumerate() {
                if b.is_zero() {
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

    /// Associativity on all basis triples and two-sided unit.
    pub fn check(&self) -> Result<()> {
        let d = self.dim;
        for r in 0..d {
            let er = self.unit_vector(r);
            if self.mul(&self.unit, &er) != er || self.mul(&er, &self.unit) != er {
                return Err(Error::InvalidAlgebra(format!("unit fails on basis element {r}")));
            }
        }
        for r in 0..d {
            for s in 0..d {
                let rs = self.basis_mul(r, s);
                for t in 0..d {
                    let mut left = vec![self.field.zero(); d];
                    for (u, c) in rs {
                        for (w, c2) in self.basis_mul(*u, t) {
                            left[*w] = left[*w].add(&c.mul(c2));
                        }
                    }
                    let mut right = vec![self.field.zero(); d];
                    for (u, c) in self.basis_mul(s, t) {
                        for (w, c2) in self.basis_mul(r, *u) {
                            right[*w] = right[*w].add(&c.mul(c2));
                        }
                    }
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on basis triple ({r}, {s}, {t})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `z -> x z` acting on row vectors.
    pub fn left_mult(&self, x: &[F::Elem]) -> Matrix<F> {
        let rows: Vec<Vector<F>> = (0..self.dim)
            .map(|s| self.mul(x, &self.unit_vector(s)))
            .collect();
        Matrix::from_rows(&self.field, self.dim, &rows).expect("square")
    }

    pub fn span_products(&self, xs: &Subspace<F>, ys: &Subspace<F>) -> Subspace<F> {
        let mut vecs = Vec::new();
        for i in 0..xs.dim() {
            for j in 0..ys.dim() {
                vecs.push(self.mul(xs.basis().row(i), ys.basis().row(j)));
            }
        }
        Subspace::from_vecs(&self.field, self.dim, &vecs)
    }

    /// The Jacobson radical.
    pub fn radical(&self) -> Subspace<F> {
        if self.field.characteristic() == 0 {
            self.radical_trace_form()
        } else {
            self.radical_p_trace()
        }
    }

    fn radical_trace_form(&self) -> Subspace<F> {
        let d = self.dim;
        let traces: Vector<F> = (0..d)
            .map(|t| {
                (0..d).fold(self.field.zero(), |acc, s| {
                    match self.basis_mul(t, s).iter().find(|(u, _)| *u == s) {
                        Some((_, c)) => acc.add(c),
                        None => acc,
                    }
                })
            })
            .collect();
        let mut gram = Matrix::zeros(&self.field, d, d);
        for r in 0..d {
            for s in 0..d {
                let v = self
                    .basis_mul(r, s)
                    .iter()
                    .fold(self.field.zero(), |acc, (t, c)| acc.add(&c.mul(&traces[*t])));
                gram.set(r, s, v);
            }
        }
        Subspace::from_vecs(&self.field, d, &gram.left_kernel())
    }

    /// Iterated p-power trace functionals over `F_p`.
    fn radical_p_trace(&self) -> Subspace<F> {
        let d = self.dim;
        let p = self.field.characteristic();
        let mut l = 0u32;
        while p.checked_pow(l + 1).is_some_and(|q| q <= d as u64) {
            l += 1;
        }
        let mut ideal = Subspace::full(&self.field, d);
        for i in 0..=l {
            if ideal.dim() == 0 {
                break;
            }
            let pi = p.pow(i);
            let m = pi * p;
            let mut g = Matrix::zeros(&self.field, ideal.dim(), d);
            for k in 0..ideal.dim() {
                let v = ideal.basis().row(k).to_vec();
                for s in 0..d {
                    let z = self.mul(&v, &self.unit_vector(s));
                    let lz = self.left_mult(&z);
                    let lifted: Vec<u64> = lz
                        .data()
                        .iter()
                        .map(|x| self.field.residue(x).expect("prime field"))
                        .collect();
                    let tr = trace_of_power(&lifted, d, pi, m);
                    debug_assert_eq!(tr % pi, 0);
                    g.set(k, s, self.field.from_i64(((tr / pi) % p) as i64));
                }
            }
            let vecs: Vec<Vector<F>> = g
                .left_kernel()
                .iter()
                .map(|c| ideal.basis().vec_mul(c))
                .collect();
            ideal = Subspace::from_vecs(&self.field, d, &vecs);
        }
        ideal
    }

    /// Quotient by a two-sided ideal, on the complement of its pivot columns.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<RawAlgebra<F>> {
        let keep = ideal.complement_units();
        let q = keep.len();
        let reduce = |v: &[F::Elem]| -> Vector<F> {
            // subtract the ideal part: v - coords(v at pivots) * basis
            let c: Vector<F> = ideal.pivots().iter().map(|&p| v[p].clone()).collect();
            let sub = ideal.basis().vec_mul(&c);
            let w: Vector<F> = v.iter().zip(&sub).map(|(a, b)| a.sub(b)).collect();
            keep.iter().map(|&k| w[k].clone()).collect()
        };
        let mut products = Vec::with_capacity(q * q);
        for &r in &keep {
            for &s in &keep {
                products.push(reduce(&self.mul(&self.unit_vector(r), &self.unit_vector(s))));
            }
        }
        RawAlgebra::new(&self.field, q, products, reduce(&self.unit))
    }

    /// The subspace `x A y`.
    pub fn corner_space(&self, x: &[F::Elem], y: &[F::Elem]) -> Subspace<F> {
        let vecs: Vec<Vector<F>> = (0..self.dim)
            .map(|r| self.mul(&self.mul(x, &self.unit_vector(r)), y))
            .collect();
        Subspace::from_vecs(&self.field, self.dim, &vecs)
    }

    /// A complete set of primitive orthogonal idempotents.
    pub fn lift_primitive_idempotents<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        random_trials: usize,
    ) -> Result<Vec<Vector<F>>> {
        let rad = self.radical();
        let mut done = Vec::new();
        let mut stack = vec![self.unit.clone()];
        while let Some(e) = stack.pop() {
            let corner = self.corner_space(&e, &e);
            let corner_rad = corner.intersect(&rad);
            if corner.dim() == corner_rad.dim() + 1 {
                done.push(e);
                continue;
            }
            match self.split_idempotent(&e, &corner, rng, random_trials)? {
                Some((f1, f2)) => {
                    stack.push(f1);
                    stack.push(f2);
                }
                None => {
                    return Err(Error::LiftingFailed(
                        "no splitting element found; the residue algebra may not be split".into(),
                    ))
                }
            }
        }
        let mut keyed: Vec<(usize, Vec<String>, Vector<F>)> = done
            .into_iter()
            .map(|e| {
                let d = self.corner_space(&e, &self.unit).dim();
                let key = e.iter().map(|x| x.to_string()).collect();
                (d, key, e)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        Ok(keyed.into_iter().map(|t| t.2).collect())
    }

    fn split_idempotent<R: Rng + ?Sized>(
        &self,
        e: &[F::Elem],
        corner: &Subspace<F>,
        rng: &mut R,
        random_trials: usize,
    ) -> Result<Option<(Vector<F>, Vector<F>)>> {
        let k = corner.dim();
        let basis: Vec<Vector<F>> = (0..k).map(|i| corner.basis().row(i).to_vec()).collect();
        let mut candidates: Vec<Vector<F>> = basis.clone();
        for i in 0..k {
            for j in i + 1..k {
                candidates.push(basis[i].iter().zip(&basis[j]).map(|(a, b)| a.add(b)).collect());
            }
        }
        let mut tried = 0;
        let mut idx = 0;
        loop {
            let y = if idx < candidates.len() {
                idx += 1;
                candidates[idx - 1].clone()
            } else if tried < random_trials {
                tried += 1;
                let mut y = vec![self.field.zero(); self.dim];
                for b in &basis {
                    let c = self.field.random(rng);
                    for (t, x) in b.iter().enumerate() {
                        y[t] = y[t].add(&c.mul(x));
                    }
                }
                y
            } else {
                return Ok(None);
            };
            if let Some(split) = self.fitting_split(e, corner, &y)? {
                return Ok(Some(split));
            }
        }
    }

    /// Splits `e` using the Fitting decomposition of left multiplication by `y` on `eAe`.
    fn fitting_split(
        &self,
        e: &[F::Elem],
        corner: &Subspace<F>,
        y: &[F::Elem],
    ) -> Result<Option<(Vector<F>, Vector<F>)>> {
        let k = corner.dim();
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let img = self.mul(y, corner.basis().row(i));
            rows.push(corner.coords(&img).ok_or_else(|| {
                Error::InternalInconsistency("corner not closed under multiplication".into())
            })?);
        }
        let ly = Matrix::from_rows(&self.field, k, &rows)?;
        let ev = ly.eigenvalues();
        if ev.is_empty() {
            return Ok(None);
        }
        let psi = ly.shift(&ev[0]).pow(k)?;
        if psi.is_zero() {
            return Ok(None);
        }
        let image = psi.row_space();
        let kernel = Subspace::from_vecs(&self.field, k, &psi.left_kernel());
        if kernel.dim() == 0 {
            return Ok(None);
        }
        let both = image.basis().vstack(kernel.basis())?;
        let ce = corner
            .coords(e)
            .ok_or_else(|| Error::InternalInconsistency("idempotent outside its corner".into()))?;
        let split = both
            .solve_left(&ce)?
            .ok_or_else(|| Error::InternalInconsistency("Fitting decomposition incomplete".into()))?;
        let f1c = image.basis().vec_mul(&split[..image.dim()]);
        let f1 = corner.basis().vec_mul(&f1c);
        let f2: Vector<F> = e.iter().zip(&f1).map(|(a, b)| a.sub(b)).collect();
        if f1.iter().all(|x| x.is_zero()) || f2.iter().all(|x| x.is_zero()) {
            return Ok(None);
        }
        Ok(Some((f1, f2)))
    }
}

/// `tr(A^e) mod m` for an `n x n` integer matrix, using 128-bit products.
fn trace_of_power(a: &[u64], n: usize, e: u64, m: u64) -> u64 {
    let mul = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = x[i * n + k] as u128;
                if xik == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = (out[i * n + j] as u128 + xik * y[k * n + j] as u128) % m as u128;
                    out[i * n + j] = v as u64;
                }
            }
        }
        out
    };
    let mut base: Vec<u64> = a.iter().map(|x| x % m).collect();
    let mut acc: Vec<u64> = (0..n * n).map(|i| if i % (n + 1) == 0 { 1 % m } else { 0 }).collect();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    (0..n).fold(0u64, |s, i| (s + acc[i * n + i]) % m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Settings;
    use crate::field::{PrimeField, Rationals};

    /// K[x]/(x^n) on the basis 1, x, ..., x^{n-1}.
    fn truncated<F: Field>(f: &F, n: usize) -> RawAlgebra<F> {
        let mut products = Vec::new();
        for r in 0..n {
            for s in 0..n {
                let mut v = vec![f.zero(); n];
                if r + s < n {
                    v[r + s] = f.one();
                }
                products.push(v);
            }
        }
        let mut unit = vec![f.zero(); n];
        unit[0] = f.one();
        RawAlgebra::new(f, n, products, unit).unwrap()
    }

    /// K x K on the basis of the two idempotents.
    fn split_pair<F: Field>(f: &F) -> RawAlgebra<F> {
        let (o, z) = (f.one(), f.zero());
        let products = vec![
            vec![o.clone(), z.clone()],
            vec![z.clone(), z.clone()],
            vec![z.clone(), z.clone()],
            vec![z.clone(), o.clone()],
        ];
        RawAlgebra::new(f, 2, products, vec![o.clone(), o]).unwrap()
    }

    #[test]
    fn radical_of_truncated_polynomials() {
        let q = Rationals;
        let a = truncated(&q, 3);
        let j = a.radical();
        assert_eq!(j.dim(), 2);
        assert!(!j.contains(&a.unit_vector(0)));
        assert!(j.contains(&a.unit_vector(1)) && j.contains(&a.unit_vector(2)));
        // the p-trace method must agree, also when p <= dim
        for p in [2u32, 3, 101] {
            let f = PrimeField::new(p).unwrap();
            let a = truncated(&f, 5);
            assert_eq!(a.radical().dim(), 4, "p = {p}");
        }
    }

    #[test]
    fn semisimple_and_quotient() {
        let q = Rationals;
        assert_eq!(split_pair(&q).radical().dim(), 0);
        let f = PrimeField::new(2).unwrap();
        assert_eq!(split_pair(&f).radical().dim(), 0);
        let a = truncated(&q, 4);
        let quo = a.quotient(&a.radical()).unwrap();
        assert_eq!(quo.dim(), 1);
        assert_eq!(quo.radical().dim(), 0);
    }

    #[test]
    fn invalid_tables_rejected() {
        let q = Rationals;
        let (o, z) = (q.one(), q.zero());
        // b0 b0 = b1 with b1 acting as a unit is not associative with unit b0
        let products = vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()], vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]];
        assert!(RawAlgebra::new(&q, 2, products, vec![o, z]).is_err());
    }

    #[test]
    fn idempotent_lifting() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = Settings::default().rng();
        let local = truncated(&f, 3);
        assert_eq!(local.lift_primitive_idempotents(&mut rng, 20).unwrap().len(), 1);
        let pair = split_pair(&f);
        let es = pair.lift_primitive_idempotents(&mut rng, 20).unwrap();
        assert_eq!(es.len(), 2);
        for (i, x) in es.iter().enumerate() {
            for (j, y) in es.iter().enumerate() {
                let xy = pair.mul(x, y);
                if i == j {
                    assert_eq!(&xy, x);
                } else {
                    assert!(xy.iter().all(|c| c.is_zero()));
                }
            }
        }
    }

    #[test]
    fn trace_of_power_small() {
        // [[1,1],[0,1]]^3 = [[1,3],[0,1]]
        assert_eq!(trace_of_power(&[1, 1, 0, 1], 2, 3, 1000), 2);
        assert_eq!(trace_of_power(&[2, 0, 0, 3], 2, 2, 1000), 13);
    }
}
