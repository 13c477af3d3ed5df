use rand::Rng;

use super::oracle::Oracle;
use crate::error::{check_dim, invalid, Result};
use crate::f2::PointF2;

/// A sampled average and the number of samples behind it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub samples: u64,
}

/// Two-sided Hoeffding sample count for an average of variables taking values in
/// an interval of width `2·half_range`:
/// `t = ceil(2 · half_range² · ln(2/δ) / γ²)`. For `±1` variables this is
/// `ceil(2 ln(2/δ) / γ²)`.
#[must_use]
pub fn hoeffding_samples(gamma: f64, delta: f64, half_range: f64) -> u64 {
    (2.0 * half_range * half_range * (2.0 / delta).ln() / (gamma * gamma))
        .ceil()
        .max(1.0) as u64
}

pub(crate) fn check_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must lie in (0, 1), got {v}")))
    }
}

/// Estimates `<f, g> = E_x f(x) g(x)` from uniform samples.
pub fn estimate_correlation<R: Rng + ?Sized>(
    f: &dyn Oracle,
    g: &dyn Oracle,
    gamma: f64,
    delta: f64,
    rng: &mut R,
) -> Result<Estimate> {
    check_dim(f.n(), g.n())?;
    check_unit("gamma", gamma)?;
    check_unit("delta", delta)?;
    let t = hoeffding_samples(gamma, delta, f.bound() * g.bound());
    Ok(Estimate {
        value: sample_correlation(f, g, t, rng),
        samples: t,
    })
}

pub(crate) fn sample_correlation<R: Rng + ?Sized>(
    f: &dyn Oracle,
    g: &dyn Oracle,
    t: u64,
    rng: &mut R,
) -> f64 {
    let n = f.n();
    let mut acc = 0.0;
    for _ in 0..t {
        let x = PointF2::random(n, rng);
        acc += f.query(&x) * g.query(&x);
    }
    acc / t as f64
}
