use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use super::bogolyubov::{bogolyubov, BogolyubovParams};
use super::model_test::model_test;
use super::params::ModelParams;
use crate::bsg::{BsgParams, PhiSampler};
use crate::error::{invalid, Result};
use crate::f2::{
    complete_basis_full_rank_projection, read_linear_map, MatrixF2, PointF2, SubspaceF2,
};
use crate::functions::{FnOracle, TruthTable};
use crate::quad_recovery::{symmetrize_on, Symmetrized};
use crate::rng::{fork, point_seed, StreamRng};

/// Which threshold [`bogolyubov`] runs with once the density is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BogolyubovRule {
    Paper,
    Practical,
}

/// Sample sizes of [`local_linear_choice`].
#[derive(Clone, Debug, PartialEq)]
pub struct LocalChoiceParams {
    /// Up to this `n` every point is model-tested; above it a pool is sampled.
    pub dense_max_n: usize,
    /// Accepted points collected on the sampled path.
    pub pool: usize,
    /// Assumed density of accepted points: the sampled path gives up after `pool/θ` draws.
    pub theta: f64,
    /// Quadruple sums `(y, ζ(y))` to store.
    pub stored: usize,
    /// Quadruple draws before giving up.
    pub max_draws: u64,
    /// Random bases tried when fitting `T` to the stored pairs.
    pub consensus_rounds: usize,
    pub bogolyubov: BogolyubovRule,
    pub delta: f64,
}

impl LocalChoiceParams {
    #[must_use]
    pub fn practical(n: usize) -> Self {
        Self {
            dense_max_n: 10,
            pool: 256,
            theta: 0.05,
            stored: 12 * n.max(1),
            max_draws: 1_000_000,
            consensus_rounds: 64,
            bogolyubov: BogolyubovRule::Practical,
            delta: 0.05,
        }
    }

    /// `t = n^2 + log2(10/δ)` stored sums, paper Bogolyubov threshold.
    #[must_use]
    pub fn paper(n: usize, delta: f64) -> Self {
        Self {
            stored: n * n + (10.0 / delta).log2().ceil() as usize,
            dense_max_n: 0,
            bogolyubov: BogolyubovRule::Paper,
            delta,
            ..Self::practical(n)
        }
    }
}

/// A linear choice on a coset: `φ(x) ≈ T(x + c1) + c2` for `x ∈ c1 + V`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalChoiceResult {
    pub v: SubspaceF2,
    pub t: MatrixF2,
    pub c1: PointF2,
    pub c2: PointF2,
    /// Output of the Bogolyubov step.
    pub v0: SubspaceF2,
    /// Density of model-accepted points (exact on the dense path).
    pub density: f64,
    /// Model-accepted points used.
    pub pool: Vec<PointF2>,
    /// Stored quadruple sums `(y, ζ(y))`.
    pub pairs: Vec<(PointF2, PointF2)>,
    /// Stored pairs consistent with `T`.
    pub inliers: usize,
}

/// Builds a linear choice on a coset from model-accepted points.
///
/// The accepted set `A` feeds [`bogolyubov`], giving `V0`. Sums
/// `y = x1 + x2 + x3 + x4` of accepted points landing in `V0` are stored with
/// `ζ(y) = Σ φ(x_i)`; `T` is the linear map agreeing with the most stored
/// pairs among maps fitted on random bases, and `V` is the span of the
/// agreeing `y`. The anchor `(c1, c2)` is the most populated coset of
/// `{(x, Tx) : x ∈ V}` among the graph points of `A`. Returns `None` when too
/// few points are accepted or too few sums land in `V0`.
pub fn local_linear_choice<R: Rng + ?Sized>(
    sampler: &PhiSampler<'_>,
    bsg: &BsgParams,
    u: &PointF2,
    model: &ModelParams,
    params: &LocalChoiceParams,
    rng: &mut R,
) -> Result<Option<LocalChoiceResult>> {
    let n = sampler.n();
    if u.n() != n || model.gamma.n_cols() != n {
        return Err(invalid("anchor or model has the wrong dimension"));
    }
    let seed_h = fork(rng);
    let test = |x: &PointF2| {
        let mut r = StreamRng::seed_from_u64(point_seed(seed_h, x));
        model_test(sampler, u, x, bsg, model, &mut r)
    };
    let dense = n <= params.dense_max_n;
    let (pool, density, v0) = if dense {
        let points: Vec<PointF2> = (0..1u64 << n).map(|i| PointF2::from_u64(n, i)).collect();
        sampler.prefetch(&points);
        let hits: Vec<bool> = points.par_iter().map(test).collect();
        let pool: Vec<PointF2> = points
            .into_iter()
            .zip(&hits)
            .filter(|(_, &h)| h)
            .map(|(x, _)| x)
            .collect();
        let density = pool.len() as f64 / (1u64 << n) as f64;
        if pool.len() < 4 {
            return Ok(None);
        }
        let table = TruthTable::new(n, hits.iter().map(|&h| f64::from(u8::from(h))).collect())?;
        let bp = bogolyubov_params(params, density);
        let v0 = bogolyubov(&table.oracle(), &bp, rng)?;
        (pool, density, v0)
    } else {
        let budget = (params.pool as f64 / params.theta).ceil() as u64;
        let mut pool = Vec::new();
        let mut drawn = 0u64;
        while drawn < budget && pool.len() < params.pool {
            let x = PointF2::random(n, rng);
            drawn += 1;
            if test(&x) {
                pool.push(x);
            }
        }
        if pool.len() < 4 {
            return Ok(None);
        }
        let density = pool.len() as f64 / drawn as f64;
        let h = FnOracle::new(n, 1.0, |x: &PointF2| f64::from(u8::from(test(x))));
        let v0 = bogolyubov(&h, &bogolyubov_params(params, density), rng)?;
        (pool, density, v0)
    };
    let mut pairs = Vec::with_capacity(params.stored);
    let mut draws = 0u64;
    while pairs.len() < params.stored && draws < params.max_draws {
        draws += 1;
        let xs: [&PointF2; 4] = std::array::from_fn(|_| &pool[rng.random_range(0..pool.len())]);
        let y = xs.iter().fold(PointF2::zero(n), |acc, x| &acc ^ *x);
        if v0.contains(&y) {
            let z = xs
                .iter()
                .fold(PointF2::zero(n), |acc, x| &acc ^ &sampler.sample_phi(x));
            pairs.push((y, z));
        }
    }
    if pairs.len() < params.stored {
        return Ok(None);
    }
    let (t, inlier_ys) = consensus_fit(n, &pairs, params.consensus_rounds, rng)?;
    let v = SubspaceF2::span(n, &inlier_ys)?;
    let mut classes: HashMap<(PointF2, PointF2), usize> = HashMap::new();
    for x in &pool {
        let c1 = v.canonical_rep(x);
        let c2 = &sampler.sample_phi(x) ^ &t.mul_vec(&(x ^ &c1));
        *classes.entry((c1, c2)).or_default() += 1;
    }
    let ((c1, c2), _) = classes
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .expect("pool is nonempty");
    Ok(Some(LocalChoiceResult {
        v,
        t,
        c1,
        c2,
        v0,
        density,
        pool,
        pairs,
        inliers: inlier_ys.len(),
    }))
}

fn bogolyubov_params(params: &LocalChoiceParams, density: f64) -> BogolyubovParams {
    let rho = density.clamp(1e-12, 1.0 - 1e-12);
    match params.bogolyubov {
        BogolyubovRule::Paper => BogolyubovParams::paper(rho, params.delta),
        BogolyubovRule::Practical => BogolyubovParams::practical(rho, params.delta),
    }
}

/// The linear map agreeing with the most pairs `(y, z)`, among maps read off
/// random bases of the `y`-span, and the `y` of the agreeing pairs.
fn consensus_fit<R: Rng + ?Sized>(
    n: usize,
    pairs: &[(PointF2, PointF2)],
    rounds: usize,
    rng: &mut R,
) -> Result<(MatrixF2, Vec<PointF2>)> {
    let ys: Vec<PointF2> = pairs.iter().map(|(y, _)| y.clone()).collect();
    let d = SubspaceF2::span(n, &ys)?.dim();
    let mut best: Option<(usize, MatrixF2)> = None;
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    for _ in 0..rounds.max(1) {
        order.shuffle(rng);
        let mut chosen: Vec<PointF2> = Vec::with_capacity(d);
        let mut chosen_ys: Vec<PointF2> = Vec::with_capacity(d);
        let mut span = SubspaceF2::zero(n);
        for &i in &order {
            if chosen.len() == d {
                break;
            }
            let (y, z) = &pairs[i];
            if !span.contains(y) {
                chosen.push(y.concat(z));
                chosen_ys.push(y.clone());
                span = SubspaceF2::span(n, &chosen_ys)?;
            }
        }
        let t = if chosen.is_empty() {
            MatrixF2::zeros(n, n)
        } else {
            read_linear_map(n, &complete_basis_full_rank_projection(&chosen)?)?
        };
        let score = pairs.iter().filter(|(y, z)| &t.mul_vec(y) == z).count();
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, t));
        }
    }
    let (_, t) = best.expect("at least one round");
    let inliers = pairs
        .iter()
        .filter(|(y, z)| &t.mul_vec(y) == z)
        .map(|(y, _)| y.clone())
        .collect();
    Ok((t, inliers))
}

/// Symmetrization on the coset `c1 + V` of a local choice.
pub fn local_symmetrize(choice: &LocalChoiceResult) -> Result<Option<Symmetrized>> {
    symmetrize_on(&choice.t, &choice.v, &choice.c1, &choice.c2)
}
