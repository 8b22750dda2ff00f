//! Morphisms `H^{⊗m} → H^{⊗n}` of the symmetric monoidal category of finite
//! dimensional vector spaces, restricted to tensor powers of one object `H`.
//!
//! A [`Mor`] is an exact `d^n × d^m` matrix. Tensor factors are flattened
//! row-major: `e_{i_1} ⊗ … ⊗ e_{i_k}` has index `((i_1·d + i_2)·d + …)·d + i_k`.
//! The braiding is the plain swap of factors, so `c = c⁻¹`.

use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mor {
    dim: usize,
    src: usize,
    dst: usize,
    matrix: Matrix,
}

fn power(d: usize, k: usize) -> usize {
    d.pow(k as u32)
}

impl Mor {
    pub fn new(dim: usize, src: usize, dst: usize, matrix: Matrix) -> Result<Mor> {
        if matrix.rows() != power(dim, dst) || matrix.cols() != power(dim, src) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix cannot represent H^{src} -> H^{dst} with dim H = {dim}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Mor { dim, src, dst, matrix })
    }

    pub fn identity(field: Field, dim: usize, arity: usize) -> Mor {
        Mor { dim, src: arity, dst: arity, matrix: Matrix::identity(field, power(dim, arity)) }
    }

    pub fn zero(field: Field, dim: usize, src: usize, dst: usize) -> Mor {
        Mor { dim, src, dst, matrix: Matrix::zeros(field, power(dim, dst), power(dim, src)) }
    }

    /// The symmetry exchanging factors `pos` and `pos + 1` (1-based) of
    /// `H^{⊗total}`.
    pub fn swap(field: Field, dim: usize, total: usize, pos: usize) -> Result<Mor> {
        if pos < 1 || pos >= total {
            return Err(Error::PositionOutOfRange { total, pos });
        }
        let n = dim * dim;
        let c = Matrix::from_triplets(
            field,
            n,
            n,
            (0..dim).flat_map(|i| (0..dim).map(move |j| (j * dim + i, i * dim + j, field.one()))),
        )?;
        let twist = Mor { dim, src: 2, dst: 2, matrix: c };
        let left = Mor::identity(field, dim, pos - 1);
        let right = Mor::identity(field, dim, total - pos - 1);
        left.tensor(&twist)?.tensor(&right)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Mor) -> Result<Mor> {
        if self.dim != g.dim {
            return Err(Error::ArityMismatch(format!("dim {} vs dim {}", self.dim, g.dim)));
        }
        if g.dst != self.src {
            return Err(Error::ArityMismatch(format!(
                "cannot compose H^{}->H^{} after H^{}->H^{}",
                self.src, self.dst, g.src, g.dst
            )));
        }
        Ok(Mor { dim: self.dim, src: g.src, dst: self.dst, matrix: self.matrix.mul(&g.matrix)? })
    }

    /// `self ⊗ g`.
    pub fn tensor(&self, g: &Mor) -> Result<Mor> {
        if self.dim != g.dim {
            return Err(Error::ArityMismatch(format!("dim {} vs dim {}", self.dim, g.dim)));
        }
        Ok(Mor {
            dim: self.dim,
            src: self.src + g.src,
            dst: self.dst + g.dst,
            matrix: self.matrix.kron(&g.matrix)?,
        })
    }

    pub fn add(&self, g: &Mor) -> Result<Mor> {
        self.same_type(g)?;
        Ok(Mor { matrix: self.matrix.add(&g.matrix)?, ..self.clone() })
    }

    pub fn sub(&self, g: &Mor) -> Result<Mor> {
        self.same_type(g)?;
        Ok(Mor { matrix: self.matrix.sub(&g.matrix)?, ..self.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> Result<Mor> {
        Ok(Mor { matrix: self.matrix.scale(s)?, ..self.clone() })
    }

    fn same_type(&self, g: &Mor) -> Result<()> {
        if (self.dim, self.src, self.dst) != (g.dim, g.src, g.dst) {
            return Err(Error::ArityMismatch(format!(
                "H^{}->H^{} vs H^{}->H^{}",
                self.src, self.dst, g.src, g.dst
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mor {
        Mor { dim: self.dim, src: self.dst, dst: self.src, matrix: self.matrix.transpose() }
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.src == self.dst && self.compose(self)? == *self)
    }

    pub fn invert(&self) -> Result<Mor> {
        if self.src != self.dst {
            return Err(Error::ArityMismatch(format!("H^{}->H^{} is not an endomorphism", self.src, self.dst)));
        }
        Ok(Mor { matrix: self.matrix.inverse()?, ..self.clone() })
    }

    /// Splits an idempotent through its image: `inj ∘ proj = self` and
    /// `proj ∘ inj = id`.
    pub fn split(&self) -> Result<Splitting> {
        if !self.is_idempotent()? {
            return Err(Error::NotIdempotent);
        }
        let (inj, proj) = self.matrix.rank_factorization();
        Ok(Splitting { rank: proj.rows(), nabla: self.clone(), inj, proj })
    }
}

/// Entrywise exact equality including arities.
pub fn mor_equal(f: &Mor, g: &Mor) -> bool {
    f == g
}

/// Composes a chain written left to right: `chain(&[f, g, h]) = f ∘ g ∘ h`.
pub fn chain(parts: &[&Mor]) -> Result<Mor> {
    let (last, rest) = parts.split_last().ok_or_else(|| Error::ArityMismatch("empty composite".into()))?;
    rest.iter().rev().try_fold((*last).clone(), |acc, f| f.compose(&acc))
}

/// Tensors factors left to right: `tensor_all(&[f, g]) = f ⊗ g`.
pub fn tensor_all(parts: &[&Mor]) -> Result<Mor> {
    let (first, rest) = parts.split_first().ok_or_else(|| Error::ArityMismatch("empty tensor".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, g| acc.tensor(g))
}

/// An idempotent together with a factorization through its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub nabla: Mor,
    pub rank: usize,
    /// `d^k × rank`
    pub inj: Matrix,
    /// `rank × d^k`
    pub proj: Matrix,
}

impl Splitting {
    pub fn check(&self) -> Result<bool> {
        let back = self.inj.mul(&self.proj)? == *self.nabla.matrix();
        let id = self.proj.mul(&self.inj)?.is_identity() || self.rank == 0;
        Ok(back && id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn int_mor(dim: usize, src: usize, dst: usize, vals: &[i64]) -> Mor {
        let m = Matrix::from_dense(
            Q,
            power(dim, dst),
            power(dim, src),
            vals.iter().map(|v| Q.from_i64(*v)).collect(),
        )
        .unwrap();
        Mor::new(dim, src, dst, m).unwrap()
    }

    #[test]
    fn identity_is_unit() {
        let f = int_mor(2, 1, 1, &[1, 2, 3, 4]);
        let id = Mor::identity(Q, 2, 1);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
    }

    #[test]
    fn tensor_of_identities() {
        let id = Mor::identity(Q, 3, 1);
        assert_eq!(id.tensor(&id).unwrap(), Mor::identity(Q, 3, 2));
    }

    #[test]
    fn swap_is_an_involution_acting_on_basis() {
        let s = Mor::swap(Q, 2, 2, 1).unwrap();
        assert!(s.compose(&s).unwrap().matrix().is_identity());
        // e_0 ⊗ e_1 has index 1; e_1 ⊗ e_0 has index 2.
        assert_eq!(s.matrix().get(2, 1), Q.one());
        assert_eq!(s.matrix().get(1, 1), Q.zero());
        assert_eq!(s.invert().unwrap(), s);
    }

    #[test]
    fn swap_position_checked() {
        assert_eq!(Mor::swap(Q, 2, 2, 0), Err(Error::PositionOutOfRange { total: 2, pos: 0 }));
        assert_eq!(Mor::swap(Q, 2, 2, 2), Err(Error::PositionOutOfRange { total: 2, pos: 2 }));
    }

    #[test]
    fn arity_mismatch_reported() {
        let f = Mor::identity(Q, 2, 1);
        let g = Mor::identity(Q, 2, 2);
        assert!(matches!(f.compose(&g), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn split_identity_and_zero() {
        let s = Mor::identity(Q, 3, 1).split().unwrap();
        assert_eq!(s.rank, 3);
        assert!(s.inj.is_identity() && s.proj.is_identity());
        let z = Mor::zero(Q, 3, 1, 1).split().unwrap();
        assert_eq!(z.rank, 0);
        assert!(z.check().unwrap());
    }

    #[test]
    fn split_rejects_non_idempotent() {
        let f = int_mor(2, 1, 1, &[1, 1, 0, 1]);
        assert_eq!(f.split(), Err(Error::NotIdempotent));
    }

    #[test]
    fn unequal_morphisms() {
        assert!(!mor_equal(&Mor::identity(Q, 2, 1), &Mor::zero(Q, 2, 1, 1)));
        assert!(!mor_equal(&Mor::identity(Q, 1, 1), &Mor::identity(Q, 1, 2)));
    }

    #[test]
    fn chain_composes_right_to_left() {
        let a = int_mor(2, 1, 1, &[0, 1, 0, 0]);
        let b = int_mor(2, 1, 1, &[0, 0, 1, 0]);
        assert_eq!(chain(&[&a, &b]).unwrap(), a.compose(&b).unwrap());
        assert_eq!(tensor_all(&[&a, &b]).unwrap(), a.tensor(&b).unwrap());
    }
}
