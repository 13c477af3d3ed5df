use rand::Rng;

use crate::error::Result;
use crate::f2::PointF2;
use crate::functions::{check_unit, hoeffding_samples, Oracle};

/// Upper limit on cube samples drawn by [`estimate_u3`].
pub const MAX_U3_SAMPLES: u64 = 1 << 24;

/// Result of [`estimate_u3`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct U3Estimate {
    /// Estimate of `‖f‖_{U^3}`.
    pub value: f64,
    /// Sample mean of the 8-point products (may be slightly negative).
    pub eighth_power: f64,
    pub samples: u64,
    pub queries: u64,
}

fn cube_product<R: Rng + ?Sized>(f: &dyn Oracle, rng: &mut R) -> f64 {
    let n = f.n();
    let x = PointF2::random(n, rng);
    let h = [
        PointF2::random(n, rng),
        PointF2::random(n, rng),
        PointF2::random(n, rng),
    ];
    let mut prod = 1.0;
    for w in 0u8..8 {
        let mut p = x.clone();
        for (i, hi) in h.iter().enumerate() {
            if w >> i & 1 == 1 {
                p ^= hi;
            }
        }
        prod *= f.query(&p);
    }
    prod
}

/// Estimates `‖f‖_{U^3}` from samples of `Π_{ω ∈ {0,1}^3} f(x + ω·h)`.
///
/// The mean `P̂` of the products estimates `‖f‖_{U^3}^8`; the returned value is
/// `max(P̂, 0)^{1/8}`. A fixed `O(log(1/δ)/γ^2)` sample count only controls the
/// eighth power, so the count starts there and is multiplied by 4 until the
/// Hoeffding band `[P̂ - τ, P̂ + τ]` maps to an interval of half-width at most
/// `γ` under the eighth root (stage `i` runs at confidence `δ/2^{i+1}`), or
/// [`MAX_U3_SAMPLES`] is reached. Each sample costs 8 queries.
pub fn estimate_u3<R: Rng + ?Sized>(
    f: &dyn Oracle,
    gamma: f64,
    delta: f64,
    rng: &mut R,
) -> Result<U3Estimate> {
    estimate_u3_capped(f, gamma, delta, MAX_U3_SAMPLES, rng)
}

/// [`estimate_u3`] with at most `cap` cube samples.
pub fn estimate_u3_capped<R: Rng + ?Sized>(
    f: &dyn Oracle,
    gamma: f64,
    delta: f64,
    cap: u64,
    rng: &mut R,
) -> Result<U3Estimate> {
    let cap = cap.max(1);
    check_unit("gamma", gamma)?;
    check_unit("delta", delta)?;
    let b8 = f.bound().powi(8);
    let mut stage = 0;
    let mut t = 0u64;
    let mut sum = 0.0;
    let mut target = hoeffding_samples(gamma, delta / 2.0, b8).min(cap);
    loop {
        while t < target {
            sum += cube_product(f, rng);
            t += 1;
        }
        let mean = sum / t as f64;
        let stage_delta = delta / f64::from(1u32 << (stage + 1).min(30));
        let tau = b8 * (2.0 * (2.0 / stage_delta).ln() / t as f64).sqrt();
        let root = |v: f64| v.clamp(0.0, b8).powf(0.125);
        let centre = root(mean);
        let width = (root(mean + tau) - centre).max(centre - root(mean - tau));
        if width <= gamma || t >= cap {
            return Ok(U3Estimate {
                value: centre,
                eighth_power: mean,
                samples: t,
                queries: 8 * t,
            });
        }
        stage += 1;
        target = (t * 4).min(cap);
    }
}
