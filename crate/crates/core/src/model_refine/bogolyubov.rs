use rand::Rng;

use crate::error::{invalid, Result};
use crate::f2::{PointF2, SubspaceF2};
use crate::fourier::{goldreich_levin_with, wht, GlParams};
use crate::functions::{check_unit, Oracle, TruthTable};

/// Knobs of [`bogolyubov`].
#[derive(Clone, Debug, PartialEq)]
pub struct BogolyubovParams {
    /// Characters with `|ĥ(α)| >= gamma` are collected.
    pub gamma: f64,
    pub delta: f64,
    /// Up to this `n` the spectrum of `h` is computed exactly from `2^n` queries.
    pub dense_max_n: usize,
    pub bucket_samples: Option<u64>,
    pub coeff_samples: Option<u64>,
}

impl BogolyubovParams {
    /// `γ = ρ^{3/2}/4`, always sampled.
    #[must_use]
    pub fn paper(rho: f64, delta: f64) -> Self {
        Self {
            gamma: rho.powf(1.5) / 4.0,
            delta,
            dense_max_n: 0,
            bucket_samples: None,
            coeff_samples: None,
        }
    }

    /// `γ = ρ/2`; exact spectrum for `n <= 10`, capped sampling above.
    #[must_use]
    pub fn practical(rho: f64, delta: f64) -> Self {
        Self {
            gamma: rho / 2.0,
            delta,
            dense_max_n: 10,
            bucket_samples: Some(1 << 15),
            coeff_samples: Some(1 << 14),
        }
    }
}

/// The joint kernel of the large spectrum of `h`.
///
/// With `ρ = E h`, every `x` in `V = {x : <α, x> = 0 for all |ĥ(α)| >= γ}`
/// has `h∗h∗h∗h(x) > ρ^4/2` once `γ` is small enough (`ρ^{3/2}/4` suffices).
pub fn bogolyubov<R: Rng + ?Sized>(
    h: &dyn Oracle,
    params: &BogolyubovParams,
    rng: &mut R,
) -> Result<SubspaceF2> {
    check_unit("gamma", params.gamma)?;
    let n = h.n();
    if n == 0 {
        return Err(invalid("bogolyubov needs n >= 1"));
    }
    let large: Vec<PointF2> = if n <= params.dense_max_n {
        let spectrum = wht(&TruthTable::from_oracle(h)?)?;
        spectrum
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() >= params.gamma)
            .map(|(i, _)| PointF2::from_u64(n, i as u64))
            .collect()
    } else {
        let gl = GlParams {
            gamma: params.gamma,
            delta: params.delta,
            bits_per_level: 4,
            bucket_samples: params.bucket_samples,
            coeff_samples: params.coeff_samples,
        };
        goldreich_levin_with(h, &gl, rng)?
            .into_terms()
            .into_iter()
            .map(|t| t.alpha)
            .collect()
    };
    SubspaceF2::from_ortho(n, &large)
}
