use rand::Rng;
use rayon::prelude::*;

use crate::error::{check_dim, invalid, Result};
use crate::f2::{MatrixF2, PointF2, SubspaceF2};
use crate::fourier::{goldreich_levin_coset_with, GlParams};
use crate::functions::{check_unit, Oracle, QuadraticAverage, Twisted};
use crate::rng::{fork, stream};

/// Largest `codim(W)` whose cosets are enumerated.
pub const MAX_LINEAR_PARTS_CODIM: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearPartsParams {
    pub sigma: f64,
    pub delta: f64,
    pub bucket_samples: Option<u64>,
    pub coeff_samples: Option<u64>,
    /// Samples behind the sign choice on cosets without a decoded term.
    pub sign_samples: u64,
}

impl LinearPartsParams {
    #[must_use]
    pub fn practical(sigma: f64, delta: f64) -> Self {
        Self {
            sigma,
            delta,
            bucket_samples: Some(4096),
            coeff_samples: Some(4096),
            sign_samples: 4096,
        }
    }
}

/// Result of [`find_linear_parts`].
#[derive(Clone, Debug, PartialEq)]
pub struct LinearParts {
    pub average: QuadraticAverage,
    /// Cosets where decoding found a term.
    pub decoded: usize,
    pub failed: usize,
    /// Estimated `E f Q 1_failed` under the kept and the discarded sign choice.
    pub sign_kept: f64,
    pub sign_discarded: f64,
}

/// Per-coset linear parts for a quadratic part `A` on the cosets of `W`.
///
/// On the coset `y + W` the twisted function `f(x)(-1)^{<x, Ax>}` is decoded
/// over `W` at threshold `σ/2`; the top term `(α, κ)` gives `l_y = α` and
/// `c_y = <α, y> + [κ < 0]`. Cosets without a term get `l_y = 0` and one
/// shared sign, chosen by estimating both options.
pub fn find_linear_parts<R: Rng + ?Sized>(
    f: &dyn Oracle,
    w: &SubspaceF2,
    a: &MatrixF2,
    params: &LinearPartsParams,
    rng: &mut R,
) -> Result<LinearParts> {
    let n = f.n();
    check_dim(n, w.n())?;
    check_dim(n, a.n_rows())?;
    check_unit("sigma", params.sigma)?;
    if w.codim() > MAX_LINEAR_PARTS_CODIM {
        return Err(invalid(format!(
            "codim(W) = {} exceeds {MAX_LINEAR_PARTS_CODIM}",
            w.codim()
        )));
    }
    let twisted = Twisted::new(f, |x| a.quadratic(x));
    let reps = w.coset_reps()?;
    let gl = GlParams {
        gamma: params.sigma / 2.0,
        delta: params.delta / reps.len() as f64,
        bits_per_level: 4,
        bucket_samples: params.bucket_samples,
        coeff_samples: params.coeff_samples,
    };
    let seed = fork(rng);
    let found: Vec<Option<(PointF2, bool)>> = reps
        .par_iter()
        .enumerate()
        .map(|(i, y)| {
            let mut r = stream(seed, "coset", i as u64);
            let list = goldreich_levin_coset_with(&twisted, w, y, &gl, &mut r)?;
            Ok(list
                .first()
                .map(|t| (t.alpha.clone(), t.alpha.dot(y) ^ (t.coeff < 0.0))))
        })
        .collect::<Result<_>>()?;
    let failed: Vec<&PointF2> = reps
        .iter()
        .zip(&found)
        .filter(|(_, f)| f.is_none())
        .map(|(y, _)| y)
        .collect();
    let mut sign = false;
    let (mut kept, mut discarded) = (0.0, 0.0);
    if !failed.is_empty() {
        let mut acc = 0.0;
        for _ in 0..params.sign_samples {
            let x = PointF2::random(n, rng);
            if found[rep_index(w, &reps, &x)].is_none() {
                let v = f.query(&x);
                acc += if a.quadratic(&x) { -v } else { v };
            }
        }
        let s = acc / params.sign_samples as f64;
        sign = s < 0.0;
        (kept, discarded) = (s.abs(), -s.abs());
    }
    let decoded = found.iter().filter(|f| f.is_some()).count();
    let terms: Vec<_> = reps
        .iter()
        .zip(found)
        .map(|(y, f)| (y.clone(), f.unwrap_or_else(|| (PointF2::zero(n), sign))))
        .collect();
    Ok(LinearParts {
        average: QuadraticAverage::new(w.clone(), a.clone(), terms)?,
        decoded,
        failed: failed.len(),
        sign_kept: kept,
        sign_discarded: discarded,
    })
}

fn rep_index(w: &SubspaceF2, reps: &[PointF2], x: &PointF2) -> usize {
    let key = w.canonical_rep(x);
    reps.binary_search(&key).unwrap_or_else(|_| {
        reps.iter()
            .position(|r| r == &key)
            .expect("every coset has a representative")
    })
}
