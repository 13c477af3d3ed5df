use std::fmt;

use rand::Rng;

use super::point::PointF2;
use crate::error::{check_dim, invalid, Result};

/// A dense matrix over F_2 stored as a list of bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixF2 {
    rows: Vec<PointF2>,
    n_cols: usize,
}

impl MatrixF2 {
    #[must_use]
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            rows: (0..n_rows).map(|_| PointF2::zero(n_cols)).collect(),
            n_cols,
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| PointF2::unit(n, i)).collect(),
            n_cols: n,
        }
    }

    /// Builds a matrix from rows, which must share one dimension.
    pub fn from_rows(rows: Vec<PointF2>) -> Result<Self> {
        let n_cols = rows
            .first()
            .map(PointF2::n)
            .ok_or_else(|| invalid("matrix needs at least one row"))?;
        for r in &rows {
            check_dim(n_cols, r.n())?;
        }
        Ok(Self { rows, n_cols })
    }

    /// Builds the `m x k` matrix whose columns are `cols` (each in F_2^m).
    #[must_use]
    pub fn from_columns(m: usize, cols: &[PointF2]) -> Self {
        let mut out = Self::zeros(m, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.n(), m);
            for i in c.ones() {
                out.rows[i].set(j, true);
            }
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(n_rows: usize, n_cols: usize, rng: &mut R) -> Self {
        Self {
            rows: (0..n_rows).map(|_| PointF2::random(n_cols, rng)).collect(),
            n_cols,
        }
    }

    /// A uniformly random symmetric matrix with zero diagonal.
    pub fn random_alternating<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.random::<bool>() {
                    m.set(i, j, true);
                    m.set(j, i, true);
                }
            }
        }
        m
    }

    /// A uniformly random strictly upper triangular matrix.
    pub fn random_strict_upper<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.random::<bool>() {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[inline]
    #[must_use]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    #[must_use]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    #[must_use]
    pub fn rows(&self) -> &[PointF2] {
        &self.rows
    }

    #[inline]
    #[must_use]
    pub fn row(&self, i: usize) -> &PointF2 {
        &self.rows[i]
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit);
    }

    #[must_use]
    pub fn is_square(&self) -> bool {
        self.n_rows() == self.n_cols
    }

    /// `A x`.
    ///
    /// # Panics
    /// On dimension mismatch.
    #[must_use]
    pub fn mul_vec(&self, x: &PointF2) -> PointF2 {
        assert_eq!(self.n_cols, x.n(), "dimension mismatch in mul_vec");
        let mut out = PointF2::zero(self.n_rows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    /// `x^T A`, i.e. `A^T x`.
    #[must_use]
    pub fn mul_vec_left(&self, x: &PointF2) -> PointF2 {
        assert_eq!(self.n_rows(), x.n());
        let mut out = PointF2::zero(self.n_cols);
        for i in x.ones() {
            out ^= &self.rows[i];
        }
        out
    }

    /// `<x, A y>` over F_2.
    #[must_use]
    pub fn bilinear(&self, x: &PointF2, y: &PointF2) -> bool {
        x.dot(&self.mul_vec(y))
    }

    /// `<x, A x>` over F_2.
    #[must_use]
    pub fn quadratic(&self, x: &PointF2) -> bool {
        let mut acc = false;
        for i in x.ones() {
            acc ^= self.rows[i].dot(x);
        }
        acc
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.n_cols, other.n_rows())?;
        let rows = self.rows.iter().map(|r| other.mul_vec_left(r)).collect();
        Ok(Self {
            rows,
            n_cols: other.n_cols,
        })
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols, self.n_rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.n_rows(), other.n_rows())?;
        check_dim(self.n_cols, other.n_cols)?;
        let rows = self
            .rows
            .iter()
            .zip(other.rows.iter())
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self {
            rows,
            n_cols: self.n_cols,
        })
    }

    /// `A + A^T` for a square matrix.
    #[must_use]
    pub fn symmetrized(&self) -> Self {
        self.add(&self.transpose()).expect("square matrix")
    }

    #[must_use]
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    #[must_use]
    pub fn diagonal(&self) -> PointF2 {
        let n = self.n_rows().min(self.n_cols);
        let mut d = PointF2::zero(n.max(1));
        for i in 0..n {
            if self.get(i, i) {
                d.set(i, true);
            }
        }
        d
    }

    #[must_use]
    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n_rows().min(self.n_cols)).all(|i| !self.get(i, i))
    }

    #[must_use]
    pub fn is_strictly_upper(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.ones().all(|j| j > i))
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(PointF2::is_zero)
    }

    /// Inverse of a square matrix, `None` when singular.
    #[must_use]
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.n_rows();
        let mut aug: Vec<PointF2> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&PointF2::unit(n, i)))
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| aug[r].get(col))?;
            aug.swap(col, pivot);
            let prow = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != col && row.get(col) {
                    *row ^= &prow;
                }
            }
        }
        Some(Self {
            rows: aug.iter().map(|r| r.split(n).1).collect(),
            n_cols: n,
        })
    }

    /// Rank over F_2.
    #[must_use]
    pub fn rank(&self) -> usize {
        super::elim::reduce_unchecked(self.rows.clone()).len()
    }
}

/// Finds the strictly upper triangular `M` with `M + M^T = B`.
pub fn symmetric_split(b: &MatrixF2) -> Result<MatrixF2> {
    if !b.is_square() {
        return Err(invalid("symmetric_split needs a square matrix"));
    }
    if !b.is_symmetric() {
        return Err(invalid("symmetric_split needs a symmetric matrix"));
    }
    if !b.has_zero_diagonal() {
        return Err(invalid("symmetric_split needs a zero diagonal"));
    }
    let n = b.n_rows();
    let mut m = MatrixF2::zeros(n, n);
    for i in 0..n {
        for j in b.row(i).ones().filter(|&j| j > i) {
            m.set(i, j, true);
        }
    }
    Ok(m)
}

impl fmt::Debug for MatrixF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixF2 {}x{} [", self.n_rows(), self.n_cols)?;
        for r in &self.rows {
            let s: String = (0..self.n_cols)
                .map(|j| if r.get(j) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}
