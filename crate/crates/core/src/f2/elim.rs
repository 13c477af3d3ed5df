//! Gaussian elimination over F_2.
//!
//! Pivots are taken at the lowest set coordinate, so the reduced echelon form
//! prefers pivots among the first coordinates. Every basis vector has a zero at
//! every other vector's pivot, and the basis is sorted by pivot.

use super::matrix::MatrixF2;
use super::point::PointF2;
use crate::error::{check_dim, Result};

/// Reduced echelon form of the span of `vectors`, together with its rank.
pub fn row_reduce(vectors: &[PointF2]) -> Result<(Vec<PointF2>, usize)> {
    let Some(first) = vectors.first() else {
        return Ok((Vec::new(), 0));
    };
    let n = first.n();
    for v in vectors {
        check_dim(n, v.n())?;
    }
    let basis = reduce_unchecked(vectors.to_vec());
    let rank = basis.len();
    Ok((basis, rank))
}

pub(crate) fn reduce_unchecked(mut rows: Vec<PointF2>) -> Vec<PointF2> {
    let mut basis: Vec<PointF2> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mut v in rows.drain(..) {
        for (b, &p) in basis.iter().zip(pivots.iter()) {
            if v.get(p) {
                v ^= b;
            }
        }
        let Some(p) = v.lowest_set() else { continue };
        for b in basis.iter_mut() {
            if b.get(p) {
                *b ^= &v;
            }
        }
        let pos = pivots.partition_point(|&q| q < p);
        pivots.insert(pos, p);
        basis.insert(pos, v);
    }
    basis
}

/// Pivot coordinates of a reduced basis.
pub(crate) fn pivots_of(basis: &[PointF2]) -> Vec<usize> {
    basis
        .iter()
        .map(|b| b.lowest_set().expect("nonzero basis vector"))
        .collect()
}

/// Reduces `x` against a reduced basis, clearing every pivot coordinate.
pub(crate) fn reduce_against(x: &PointF2, basis: &[PointF2]) -> PointF2 {
    let mut v = x.clone();
    for b in basis {
        let p = b.lowest_set().expect("nonzero basis vector");
        if v.get(p) {
            v ^= b;
        }
    }
    v
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[PointF2]) -> Result<usize> {
    row_reduce(vectors).map(|(_, r)| r)
}

/// Basis of `{x : <v, x> = 0 for every v in vectors}` in F_2^n, in reduced form.
pub fn null_space(n: usize, vectors: &[PointF2]) -> Result<Vec<PointF2>> {
    for v in vectors {
        check_dim(n, v.n())?;
    }
    let basis = reduce_unchecked(vectors.to_vec());
    let pivots = pivots_of(&basis);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::with_capacity(n - basis.len());
    for j in (0..n).filter(|&j| !is_pivot[j]) {
        let mut x = PointF2::unit(n, j);
        for (b, &p) in basis.iter().zip(pivots.iter()) {
            if b.get(j) {
                x.set(p, true);
            }
        }
        out.push(x);
    }
    Ok(reduce_unchecked(out))
}

/// Extends an independent list in F_2^{2n} so that its projection onto the
/// first `n` coordinates has rank `n`. The returned list starts with the input
/// vectors; the added vectors have the form `(e_i, 0)`.
pub fn complete_basis_full_rank_projection(basis: &[PointF2]) -> Result<Vec<PointF2>> {
    let Some(first) = basis.first() else {
        return Err(crate::error::invalid(
            "cannot infer dimension from an empty basis",
        ));
    };
    let two_n = first.n();
    if two_n % 2 != 0 {
        return Err(crate::error::invalid("ambient dimension must be even"));
    }
    Ok(complete_projection(two_n / 2, basis))
}

pub(crate) fn complete_projection(n: usize, basis: &[PointF2]) -> Vec<PointF2> {
    let reduced = reduce_unchecked(basis.to_vec());
    let mut covered = vec![false; n];
    for p in pivots_of(&reduced) {
        if p < n {
            covered[p] = true;
        }
    }
    let mut out = basis.to_vec();
    for (i, _) in covered.iter().enumerate().filter(|(_, &c)| !c) {
        out.push(PointF2::unit(2 * n, i));
    }
    out
}

/// Reads the linear map `T` out of a basis of F_2^{2n} whose projection onto the
/// first `n` coordinates has full rank: after reduction the first `n` vectors are
/// `(e_i, u_i)` and `T e_i = u_i`.
pub fn read_linear_map(n: usize, extended: &[PointF2]) -> Result<MatrixF2> {
    for v in extended {
        check_dim(2 * n, v.n())?;
    }
    let reduced = reduce_unchecked(extended.to_vec());
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let v = reduced
            .get(i)
            .filter(|v| v.lowest_set() == Some(i))
            .ok_or_else(|| {
                crate::error::invalid("projection onto the first n coordinates is not full rank")
            })?;
        let (_, u) = v.split(n);
        cols.push(u);
    }
    Ok(MatrixF2::from_columns(n, &cols))
}

/// Solves `A x = b`. Returns `None` when the system is inconsistent; free
/// variables are set to zero.
pub fn solve_linear_system(a: &MatrixF2, b: &PointF2) -> Result<Option<PointF2>> {
    check_dim(a.n_rows(), b.n())?;
    let c = a.n_cols();
    let aug: Vec<PointF2> = a
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.concat(&PointF2::zero(1));
            r.set(c, b.get(i));
            r
        })
        .collect();
    let reduced = reduce_unchecked(aug);
    let mut x = PointF2::zero(c);
    for r in &reduced {
        let p = r.lowest_set().expect("nonzero");
        if p == c {
            return Ok(None);
        }
        if r.get(c) {
            x.set(p, true);
        }
    }
    Ok(Some(x))
}
