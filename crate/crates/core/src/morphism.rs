use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// A module homomorphism stored as one block `M_i -> N_i` per vertex, acting
/// on row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism<F: Field> {
    blocks: Vec<Matrix<F>>,
}

impl<F: Field> ModuleMorphism<F> {
    pub fn from_blocks(blocks: Vec<Matrix<F>>) -> Self {
        ModuleMorphism { blocks }
    }

    pub fn zero(field: &F, src: &[usize], dst: &[usize]) -> Self {
        ModuleMorphism {
            blocks: src.iter().zip(dst).map(|(&m, &n)| Matrix::zeros(field, m, n)).collect(),
        }
    }

    pub fn identity(field: &F, dims: &[usize]) -> Self {
        ModuleMorphism {
            blocks: dims.iter().map(|&m| Matrix::identity(field, m)).collect(),
        }
    }

    pub fn blocks(&self) -> &[Matrix<F>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Matrix<F> {
        &self.blocks[i]
    }

    pub fn source_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.rows()).collect()
    }

    pub fn target_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.cols()).collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .zip(&next.blocks)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleMorphism { blocks })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleMorphism { blocks })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        ModuleMorphism {
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    /// `sum_t coeffs[t] * basis[t]`.
    pub fn combination(field: &F, basis: &[Self], coeffs: &[F::Elem], src: &[usize], dst: &[usize]) -> Self {
        let mut out = Self::zero(field, src, dst);
        for (f, c) in basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.blocks.iter_mut().zip(&f.blocks) {
                *o = o.add(&b.scale(c)).expect("same shape");
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_invertible())
    }

    pub fn inverse(&self) -> Option<Self> {
        let blocks = self.blocks.iter().map(|b| b.inverse()).collect::<Option<Vec<_>>>()?;
        Some(ModuleMorphism { blocks })
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn trace(&self, field: &F) -> F::Elem {
        self.blocks.iter().fold(field.zero(), |acc, b| acc.add(&b.trace()))
    }

    /// The block-diagonal matrix on the full spaces.
    pub fn full_matrix(&self, field: &F) -> Matrix<F> {
        Matrix::block_diag(field, &self.blocks)
    }

    /// Applies to a vector given per vertex.
    pub fn apply_block(&self, i: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        self.blocks[i].vec_mul(v)
    }

    pub fn check_shape(&self, src: &[usize], dst: &[usize]) -> Result<()> {
        if self.source_dims() != src || self.target_dims() != dst {
            return Err(Error::DimensionMismatch("morphism shape".into()));
        }
        Ok(())
    }
}
