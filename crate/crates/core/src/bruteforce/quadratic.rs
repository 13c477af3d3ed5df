use rayon::prelude::*;

use crate::error::Result;
use crate::f2::{MatrixF2, PointF2};
use crate::fourier::wht_in_place;
use crate::functions::{check_enum_n, QuadraticPhase, TruthTable};

/// Largest `n` for [`best_quadratic_correlation`].
pub const MAX_BEST_QUADRATIC_N: usize = 6;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// The phase maximizing `|<f, (-1)^q>|` over all quadratic phases, with the sign
/// chosen so the returned correlation is `max |<f, (-1)^q>|`.
///
/// Each strictly upper `M` costs one transform of `f(x) (-1)^{<x, Mx>}`; the
/// best `(α, c)` for that `M` is read off the spectrum. Ties go to the
/// smallest `M` index, then the smallest `α`.
pub fn best_quadratic_correlation(f: &TruthTable) -> Result<(QuadraticPhase, f64)> {
    let n = f.n();
    check_enum_n("best quadratic correlation", n, MAX_BEST_QUADRATIC_N)?;
    let pairs = pairs(n);
    let len = 1usize << n;
    let (value, m_index, alpha, negative) = (0..1u64 << pairs.len())
        .into_par_iter()
        .map(|m| {
            let mut v: Vec<f64> = (0..len)
                .map(|x| {
                    let odd = pairs
                        .iter()
                        .enumerate()
                        .filter(|(b, (i, j))| m >> b & 1 == 1 && x >> i & 1 == 1 && x >> j & 1 == 1)
                        .count()
                        % 2
                        == 1;
                    if odd {
                        -f.get(x)
                    } else {
                        f.get(x)
                    }
                })
                .collect();
            wht_in_place(&mut v);
            let mut best = 0;
            for (a, c) in v.iter().enumerate() {
                if c.abs() > v[best].abs() {
                    best = a;
                }
            }
            (v[best].abs() / len as f64, m, best, v[best] < 0.0)
        })
        .reduce(
            || (f64::NEG_INFINITY, u64::MAX, 0, false),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let mut mat = MatrixF2::zeros(n, n);
    for (b, &(i, j)) in pairs.iter().enumerate() {
        if m_index >> b & 1 == 1 {
            mat.set(i, j, true);
        }
    }
    let q = QuadraticPhase::new(mat, PointF2::from_u64(n, alpha as u64), negative)?;
    Ok((q, value))
}
