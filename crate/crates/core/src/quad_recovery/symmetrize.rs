use crate::error::{check_dim, invalid, Result};
use crate::f2::{null_space, solve_linear_system, MatrixF2, PointF2, SubspaceF2};

/// Output of [`symmetrize_on`].
#[derive(Clone, Debug, PartialEq)]
pub struct Symmetrized {
    pub w: SubspaceF2,
    /// Symmetric, zero diagonal, `B w = T w` for every `w ∈ W`.
    pub b: MatrixF2,
    /// Coset anchor; may differ from the input by an element of `V`.
    pub c1: PointF2,
    pub c2: PointF2,
}

/// Global symmetrization (`V = F_2^n`, no offset).
pub fn symmetrize(t: &MatrixF2) -> Result<(SubspaceF2, MatrixF2)> {
    let n = t.n_rows();
    let zero = PointF2::zero(n);
    let s = symmetrize_on(t, &SubspaceF2::full(n), &zero, &zero)?
        .ok_or_else(|| invalid("global symmetrization cannot run out of points"))?;
    Ok((s.w, s.b))
}

/// Finds `W ≤ V` and an alternating `B` with `B w = T w` on `W`, for data
/// describing `x ↦ T(x + c1) + c2` on the coset `c1 + V`.
///
/// `W' = {w ∈ V : <(T+T^T)w, y> = 0 ∀ y ∈ V}`. On `W'` the diagonal
/// `w ↦ <w, Tw>` is linear, and a point `c1 + w` can only carry weight when
/// `<c1 + w, Tw + c2> = 0`, i.e. `<w, Tw> + <w, T^T c1 + c2> = <c1, c2>`.
/// `W` is the part of `W'` where both the diagonal and `<w, T^T c1 + c2>`
/// vanish; when `<c1, c2> = 1` the anchor moves to `c1 + w0` (and `c2` to
/// `c2 + T w0`) for some `w0 ∈ W'` on which the condition holds. Returns
/// `None` if no point of `c1 + W'` satisfies it.
pub fn symmetrize_on(
    t: &MatrixF2,
    v: &SubspaceF2,
    c1: &PointF2,
    c2: &PointF2,
) -> Result<Option<Symmetrized>> {
    if !t.is_square() {
        return Err(invalid("symmetrize needs a square matrix"));
    }
    let n = t.n_rows();
    check_dim(n, v.n())?;
    check_dim(n, c1.n())?;
    check_dim(n, c2.n())?;
    let s = t.add(&t.transpose())?;
    let vb = v.basis();
    let d = vb.len();
    let w_prime: Vec<PointF2> = if d == 0 {
        Vec::new()
    } else {
        let rows: Vec<PointF2> = vb
            .iter()
            .map(|vj| {
                PointF2::from_bits(
                    &vb.iter()
                        .map(|vi| vj.dot(&s.mul_vec(vi)))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        null_space(d, &rows)?
            .iter()
            .map(|a| combine(vb, a, n))
            .collect()
    };
    let k = w_prime.len();
    let u = &t.mul_vec_left(c1) ^ c2;
    let (mut c1, mut c2) = (c1.clone(), c2.clone());
    let w_basis: Vec<PointF2> = if k == 0 {
        if c1.dot(&c2) {
            return Ok(None);
        }
        Vec::new()
    } else {
        let diag = PointF2::from_bits(
            &w_prime
                .iter()
                .map(|b| b.dot(&t.mul_vec(b)))
                .collect::<Vec<_>>(),
        );
        let lin = PointF2::from_bits(&w_prime.iter().map(|b| b.dot(&u)).collect::<Vec<_>>());
        if c1.dot(&c2) {
            let sys = MatrixF2::from_rows(vec![diag.clone(), lin.clone()])?;
            let Some(a0) = solve_linear_system(&sys, &PointF2::from_bits(&[false, true]))? else {
                return Ok(None);
            };
            let w0 = combine(&w_prime, &a0, n);
            c2 ^= &t.mul_vec(&w0);
            c1 ^= &w0;
        }
        null_space(k, &[diag, lin])?
            .iter()
            .map(|a| combine(&w_prime, a, n))
            .collect()
    };
    let w = SubspaceF2::span(n, &w_basis)?;
    let b = alternating_extension(t, &w)?;
    Ok(Some(Symmetrized { w, b, c1, c2 }))
}

fn combine(basis: &[PointF2], coeffs: &PointF2, n: usize) -> PointF2 {
    let mut x = PointF2::zero(n);
    for i in coeffs.ones() {
        x ^= &basis[i];
    }
    x
}

/// The alternating `B` with `B w = T w` for `w ∈ W` and `<u, B u'> = 0` for
/// `u, u'` in the unit-vector complement of `W`'s reduced basis. Requires the
/// form `<w', T w>` to be alternating on `W`.
fn alternating_extension(t: &MatrixF2, w: &SubspaceF2) -> Result<MatrixF2> {
    let n = t.n_rows();
    let wb = w.basis();
    let pivots: Vec<usize> = wb
        .iter()
        .map(|b| b.lowest_set().expect("nonzero basis vector"))
        .collect();
    let mut cols: Vec<PointF2> = wb.to_vec();
    cols.extend(
        (0..n)
            .filter(|j| !pivots.contains(j))
            .map(|j| PointF2::unit(n, j)),
    );
    let d = wb.len();
    let tw: Vec<PointF2> = wb.iter().map(|b| t.mul_vec(b)).collect();
    let mut g = MatrixF2::zeros(n, n);
    for i in 0..n {
        for j in 0..d {
            let v = cols[i].dot(&tw[j]);
            g.set(i, j, v);
            g.set(j, i, v);
        }
    }
    let c = MatrixF2::from_columns(n, &cols);
    let ci = c
        .inverse()
        .ok_or_else(|| invalid("completed basis must be invertible"))?;
    ci.transpose().mul(&g)?.mul(&ci)
}
