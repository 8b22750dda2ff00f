//! Exact sparse matrices and the elimination kernels built on them.
//!
//! Storage is row-major with each row a column-sorted list of nonzero
//! entries, so equal matrices are structurally equal. Structure tensors of
//! group-like examples are almost permutation matrices, and tensor powers up
//! to `H^{⊗4}` stay cheap this way. Elimination densifies: rationals go
//! through fraction-free Gauss–Jordan (Bareiss), prime fields through plain
//! Gauss–Jordan. Pivots are always the first nonzero entry in the column, so
//! every factorization is reproducible.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{denominator_lcm, Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let data = (0..n).map(|i| vec![(i, field.one())]).collect();
        Matrix { field, rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions
    /// are summed.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Matrix> {
        let mut acc: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({i}, {j}) outside a {rows}x{cols} matrix"
                )));
            }
            if v.field() != field {
                return Err(Error::MixedFields);
            }
            let slot = acc[i].entry(j).or_insert_with(|| field.zero());
            *slot = &*slot + &v;
        }
        Ok(Matrix { field, rows, cols, data: acc.into_iter().map(prune).collect() })
    }

    pub fn from_dense(field: Field, rows: usize, cols: usize, values: Vec<Scalar>) -> Result<Matrix> {
        if values.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        let triplets = values
            .into_iter()
            .enumerate()
            .map(|(k, v)| (k / cols.max(1), k % cols.max(1), v));
        Matrix::from_triplets(field, rows, cols, triplets)
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let data = (0..rows)
            .map(|i| {
                (0..cols)
                    .filter_map(|j| {
                        let v = f(i, j);
                        (!v.is_zero()).then_some((j, v))
                    })
                    .collect()
            })
            .collect();
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) -> Result<()> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::ShapeMismatch(format!("({i}, {j}) outside {}x{}", self.rows, self.cols)));
        }
        if v.field() != self.field {
            return Err(Error::MixedFields);
        }
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (j, v)),
        }
        Ok(())
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, j.to_owned(), v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, row)| row.len() == 1 && row[0].0 == i && row[0].1.is_one())
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &rhs.data[*k] {
                        let prod = a * b;
                        match acc.get_mut(j) {
                            Some(slot) => *slot = &*slot + &prod,
                            None => {
                                acc.insert(*j, prod);
                            }
                        }
                    }
                }
                prune(acc)
            })
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: rhs.cols, data })
    }

    /// Kronecker product; row index of `e_i ⊗ e_j` is `i * rhs.rows + j`.
    pub fn kron(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut data = Vec::with_capacity(rows);
        for arow in &self.data {
            for brow in &rhs.data {
                let mut row = Vec::with_capacity(arow.len() * brow.len());
                for (ja, a) in arow {
                    for (jb, b) in brow {
                        row.push((ja * rhs.cols + jb, a * b));
                    }
                }
                data.push(row);
            }
        }
        Ok(Matrix { field: self.field, rows, cols, data })
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![Vec::new(); self.cols];
        for (i, j, v) in self.entries() {
            data[j].push((i, v.clone()));
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let zero = self.field.zero();
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, (Option<&Scalar>, Option<&Scalar>)> = BTreeMap::new();
                for (j, v) in a {
                    acc.entry(*j).or_default().0 = Some(v);
                }
                for (j, v) in b {
                    acc.entry(*j).or_default().1 = Some(v);
                }
                acc.into_iter()
                    .map(|(j, (x, y))| (j, op(x.unwrap_or(&zero), y.unwrap_or(&zero))))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Scalar) -> Result<Matrix> {
        if s.field() != self.field {
            return Err(Error::MixedFields);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, v * s)).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let position: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut r: Vec<(usize, Scalar)> = row
                    .iter()
                    .filter_map(|(j, v)| position.get(j).map(|k| (*k, v.clone())))
                    .collect();
                r.sort_by_key(|(k, _)| *k);
                r
            })
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().map(|i| self.data[*i].clone()).collect();
        Matrix { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let dense = self.to_dense();
        match self.field {
            Field::Rational => rref_bareiss(dense, self.cols),
            Field::Prime { .. } => rref_gauss(dense, self.cols),
        }
        .into_rref(self.field, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let augmented = Matrix::from_triplets(
            self.field,
            n,
            2 * n,
            self.entries()
                .map(|(i, j, v)| (i, j, v.clone()))
                .chain((0..n).map(|i| (i, n + i, self.field.one()))),
        )?;
        let r = augmented.rref();
        let rank = r.pivots.iter().take_while(|p| **p < n).count();
        if rank < n {
            return Err(Error::Singular { rank, size: n });
        }
        let rows: Vec<usize> = (0..n).collect();
        let inverse_cols: Vec<usize> = (n..2 * n).collect();
        Ok(r.basis.select_rows(&rows).select_columns(&inverse_cols))
    }

    /// Basis of the null space, returned as a canonical (RREF) list of row
    /// vectors of length `cols`.
    pub fn kernel(&self) -> Rref {
        let r = self.rref();
        let pivot_set: BTreeMap<usize, usize> = r.pivots.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let mut triplets = Vec::new();
        let mut k = 0;
        for free in 0..self.cols {
            if pivot_set.contains_key(&free) {
                continue;
            }
            triplets.push((k, free, self.field.one()));
            for (row, pc) in r.pivots.iter().enumerate() {
                let v = r.basis.get(row, free);
                if !v.is_zero() {
                    triplets.push((k, *pc, v.neg()));
                }
            }
            k += 1;
        }
        Matrix::from_triplets(self.field, k, self.cols, triplets)
            .expect("kernel triplets in range")
            .rref()
    }

    /// Basis of `{ y : y · self = 0 }` as canonical row vectors.
    pub fn left_kernel(&self) -> Rref {
        self.transpose().kernel()
    }

    /// Canonical basis (as rows) of the column space.
    pub fn column_space(&self) -> Rref {
        self.transpose().rref()
    }

    /// `self = inj · proj` with `inj` the pivot columns of `self` and `proj`
    /// the nonzero rows of its RREF.
    pub fn rank_factorization(&self) -> (Matrix, Matrix) {
        let r = self.rref();
        (self.select_columns(&r.pivots), r.basis)
    }
}

fn prune(acc: BTreeMap<usize, Scalar>) -> Vec<(usize, Scalar)> {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// A matrix in reduced row echelon form with its zero rows dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub pivots: Vec<usize>,
    pub basis: Matrix,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Selection matrix `E` with `basis · E = I` (picks the pivot columns).
    pub fn pivot_selector(&self) -> Matrix {
        let field = self.basis.field();
        Matrix::from_triplets(
            field,
            self.basis.cols(),
            self.pivots.len(),
            self.pivots.iter().enumerate().map(|(k, c)| (*c, k, field.one())),
        )
        .expect("pivot columns in range")
    }
}

struct RawRref {
    pivots: Vec<usize>,
    rows: Vec<Vec<Scalar>>,
}

impl RawRref {
    fn into_rref(self, field: Field, cols: usize) -> Rref {
        let rows = self.rows.len();
        let basis = Matrix::from_dense(field, rows, cols, self.rows.into_iter().flatten().collect())
            .expect("rref rows have full width");
        Rref { pivots: self.pivots, basis }
    }
}

fn rref_bareiss(dense: Vec<Vec<Scalar>>, cols: usize) -> RawRref {
    // Clear denominators row by row; row scaling leaves the row space alone.
    let mut a: Vec<Vec<BigInt>> = dense
        .iter()
        .map(|row| {
            let qs: Vec<&BigRational> = row.iter().map(|s| s.as_rational().expect("rational field")).collect();
            let l = denominator_lcm(qs.iter().copied());
            qs.iter().map(|q| (*q * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let m = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(i) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, i);
        let piv = a[r][c].clone();
        for i in 0..m {
            if i == r {
                continue;
            }
            let factor = a[i][c].clone();
            for j in 0..cols {
                let num = &piv * &a[i][j] - &factor * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free step must divide exactly");
                a[i][j] = q;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    let rows = a
        .into_iter()
        .take(r)
        .map(|row| {
            row.into_iter()
                .map(|x| Scalar::Rat(BigRational::new(x, prev.clone())))
                .collect()
        })
        .collect();
    RawRref { pivots, rows }
}

fn rref_gauss(mut a: Vec<Vec<Scalar>>, cols: usize) -> RawRref {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(i) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, i);
        let inv = a[r][c].inverse().expect("pivot is nonzero");
        for j in 0..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..m {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in 0..cols {
                let t = &factor * &a[r][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    RawRref { pivots, rows: a }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rational.from_i64(n)
    }

    fn m(rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        Matrix::from_dense(Field::Rational, rows, cols, vals.iter().map(|v| q(*v)).collect()).unwrap()
    }

    #[test]
    fn product_and_kron() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 2, &[0, 1, 1, 0]);
        assert_eq!(a.mul(&b).unwrap(), m(2, 2, &[2, 1, 4, 3]));
        let k = Matrix::identity(Field::Rational, 2).kron(&b).unwrap();
        assert_eq!(k.get(0, 1), q(1));
        assert_eq!(k.get(2, 3), q(1));
        assert_eq!(k.get(0, 2), q(0));
    }

    #[test]
    fn add_sub_cancel() {
        let a = m(2, 3, &[1, 0, 2, 0, -1, 3]);
        let b = m(2, 3, &[1, 5, 0, 0, 1, 3]);
        assert_eq!(a.sub(&a).unwrap(), Matrix::zeros(Field::Rational, 2, 3));
        assert_eq!(a.add(&b).unwrap(), m(2, 3, &[2, 5, 2, 0, 0, 6]));
        assert_eq!(a.sub(&b).unwrap(), m(2, 3, &[0, -5, 2, 0, -2, 0]));
    }

    #[test]
    fn rank_and_inverse() {
        let a = m(3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
        assert_eq!(a.rank(), 3);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let s = m(2, 2, &[1, 2, 2, 4]);
        assert_eq!(s.inverse(), Err(Error::Singular { rank: 1, size: 2 }));
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(2, 4, &[1, 2, 0, 1, 0, 0, 1, 1]);
        let k = a.kernel();
        assert_eq!(k.rank(), 2);
        assert!(a.mul(&k.basis.transpose()).unwrap().is_zero());
    }

    #[test]
    fn rank_factorization_of_idempotent() {
        // projection onto x-axis along (1, 1): [[1, -1], [0, 0]]
        let p = m(2, 2, &[1, -1, 0, 0]);
        let (inj, proj) = p.rank_factorization();
        assert_eq!(inj.mul(&proj).unwrap(), p);
        assert!(proj.mul(&inj).unwrap().is_identity());
    }

    #[test]
    fn prime_field_elimination() {
        let f = Field::prime(5).unwrap();
        let a = Matrix::from_dense(f, 2, 2, vec![f.from_i64(1), f.from_i64(2), f.from_i64(3), f.from_i64(1)]).unwrap();
        // det = 1 - 6 = -5 ≡ 0
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn mixed_field_product_rejected() {
        let f = Field::prime(5).unwrap();
        let a = Matrix::identity(f, 2);
        let b = Matrix::identity(Field::Rational, 2);
        assert_eq!(a.mul(&b), Err(Error::MixedFields));
        assert_eq!(a.kron(&b), Err(Error::MixedFields));
    }
}
