use rand::Rng;
use rayon::prelude::*;

use crate::bsg::{bsg_test, BsgParams, PhiSampler};
use crate::error::{invalid, Result};
use crate::f2::{
    complete_basis_full_rank_projection, read_linear_map, row_reduce, MatrixF2, PointF2,
};
use crate::rng::{fork, stream};

/// Sample sizes of [`find_linear_map`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearMapParams {
    /// Accepted points required before a map is read off.
    pub needed: u64,
    /// Points submitted to the BSG-Test.
    pub samples: u64,
}

impl LinearMapParams {
    /// `t = 2n + 10`, `K = 6t`.
    #[must_use]
    pub fn practical(n: usize) -> Self {
        let t = 2 * n as u64 + 10;
        Self {
            needed: t,
            samples: 6 * t,
        }
    }

    /// `t = 4n^2 + log2(10/δ)`, `K = 100 t / ρ`.
    #[must_use]
    pub fn paper(n: usize, rho: f64, delta: f64) -> Self {
        let t = 4 * (n as u64).pow(2) + (10.0 / delta).log2().ceil() as u64;
        Self {
            needed: t,
            samples: (100.0 * t as f64 / rho).ceil() as u64,
        }
    }
}

/// A linear map with `T x = φ(x)` on the span of the accepted points.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearChoiceMap {
    pub t: MatrixF2,
    /// Points submitted to the BSG-Test.
    pub samples: u64,
    pub accepted: u64,
    /// Rank of the accepted graph points `(x, φ(x))`.
    pub rank: usize,
}

const CHUNK: usize = 32;

/// Runs the BSG-Test against the anchor `u` on `K` uniform points and reads a
/// linear map off the graph points `(x, φ(x))` of the accepted ones. Returns
/// `None` when fewer than `t` points are accepted.
pub fn find_linear_map<R: Rng + ?Sized>(
    sampler: &PhiSampler<'_>,
    bsg: &BsgParams,
    u: &PointF2,
    params: LinearMapParams,
    rng: &mut R,
) -> Result<Option<LinearChoiceMap>> {
    let n = sampler.n();
    if u.n() != n {
        return Err(invalid("anchor has the wrong dimension"));
    }
    if params.needed == 0 || params.samples < params.needed {
        return Err(invalid("need 0 < t <= K"));
    }
    let seed = fork(rng);
    let mut graph: Vec<PointF2> = Vec::new();
    let mut done = 0u64;
    while done < params.samples {
        let end = (done + CHUNK as u64).min(params.samples);
        let hits: Vec<Option<PointF2>> = (done..end)
            .into_par_iter()
            .map(|i| {
                let mut r = stream(seed, "candidate", i);
                let x = PointF2::random(n, &mut r);
                bsg_test(sampler, u, &x, bsg, &mut r).then(|| x.concat(&sampler.sample_phi(&x)))
            })
            .collect();
        graph.extend(hits.into_iter().flatten());
        done = end;
        if (graph.len() as u64) + (params.samples - done) < params.needed {
            return Ok(None);
        }
    }
    if (graph.len() as u64) < params.needed {
        return Ok(None);
    }
    let (basis, rank) = row_reduce(&graph)?;
    let t = if basis.is_empty() {
        MatrixF2::zeros(n, n)
    } else {
        read_linear_map(n, &complete_basis_full_rank_projection(&basis)?)?
    };
    Ok(Some(LinearChoiceMap {
        t,
        samples: params.samples,
        accepted: graph.len() as u64,
        rank,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bsg::{choose_bsg_params, Profile};
    use crate::functions::{QuadraticPhase, TruthTable};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_phase_gives_its_bilinear_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(161);
        let n = 10;
        let q = QuadraticPhase::random(n, &mut rng);
        let table = q.truth_table().unwrap();
        let o = table.oracle();
        let s = PhiSampler::new(&o, Profile::practical().phi_config(0.5).unwrap(), 3);
        let bsg = choose_bsg_params(0.5, &Profile::practical(), &mut rng).unwrap();
        let u = PointF2::random(n, &mut rng);
        let map = find_linear_map(&s, &bsg, &u, LinearMapParams::practical(n), &mut rng)
            .unwrap()
            .unwrap();
        assert_eq!(map.rank, n);
        assert_eq!(map.t, q.bilinear_form());
    }

    #[test]
    fn nothing_accepted_is_bottom() {
        let mut rng = ChaCha8Rng::seed_from_u64(162);
        let table = TruthTable::constant(6, 1.0).unwrap();
        let o = table.oracle();
        let s = PhiSampler::planted(&o, |_| PointF2::unit(6, 0), 16, 1);
        let bsg = choose_bsg_params(0.5, &Profile::practical(), &mut rng).unwrap();
        let u = PointF2::from_u64(6, 1);
        let out = find_linear_map(&s, &bsg, &u, LinearMapParams::practical(6), &mut rng).unwrap();
        assert!(out.is_none());
    }

    #[test]
    fn paper_sizes() {
        let p = LinearMapParams::paper(4, 0.5, 0.1);
        assert_eq!(p.needed, 64 + 7);
        assert_eq!(p.samples, 14200);
    }
}
