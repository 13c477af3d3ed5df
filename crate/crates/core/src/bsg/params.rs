use rand::Rng;

use crate::error::{invalid, Result};
use crate::fourier::GlParams;
use crate::functions::hoeffding_samples;

/// How `φ(x)` is drawn from the Goldreich-Levin list of `f_x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhiRule {
    /// `α_i` with probability `c_i^2`, a uniform point with the remaining mass.
    Squares,
    /// `α_i` with probability proportional to `c_i^2` among the terms with
    /// `|c_i| >= min_coeff`; a uniform point when there are none.
    Thresholded { min_coeff: f64 },
}

/// Desk-scale constants. The structural relations between them are the same
/// as in the literal profile; only the absolute scales are free.
#[derive(Clone, Debug, PartialEq)]
pub struct PracticalProfile {
    pub rho: f64,
    /// Master interval for the edge thresholds.
    pub interval: (f64, f64),
    pub r: usize,
    pub s: usize,
    /// Samples behind each vertex weight estimate.
    pub t_edge: u64,
    /// Threshold of the list decoding behind `φ`.
    pub phi_gamma: f64,
    pub phi_delta: f64,
    pub phi_min_coeff: f64,
    pub gl_bucket_samples: u64,
    pub gl_coeff_samples: u64,
    pub gl_bits_per_level: usize,
}

impl Default for PracticalProfile {
    fn default() -> Self {
        Self {
            rho: 0.2,
            interval: (0.04, 0.12),
            r: 8,
            s: 16,
            t_edge: 256,
            phi_gamma: 0.12,
            phi_delta: 0.05,
            phi_min_coeff: 0.12,
            gl_bucket_samples: 2048,
            gl_coeff_samples: 4096,
            gl_bits_per_level: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    /// The literal constants: `ρ = ε^16/4`, thresholds in `[ε^16/180, ε^16/18]`,
    /// Hoeffding-forced `r`, `s`, `t` for error `ρ^3/100` at confidence `delta`.
    Paper {
        delta: f64,
    },
    Practical(PracticalProfile),
}

impl Profile {
    #[must_use]
    pub fn practical() -> Self {
        Self::Practical(PracticalProfile::default())
    }

    #[must_use]
    pub fn name(&self) -> &'static str {
        match self {
            Self::Paper { .. } => "paper",
            Self::Practical(_) => "practical",
        }
    }

    /// [`Profile::phi_config`] for functions on `F_2^n`. The practical
    /// threshold is raised to at least [`phi_noise_floor`]`(n)`.
    pub fn phi_config_for(&self, epsilon: f64, n: usize) -> Result<PhiConfig> {
        let mut config = self.phi_config(epsilon)?;
        if let Self::Practical(_) = self {
            let floor = phi_noise_floor(n);
            config.gl.gamma = config.gl.gamma.max(floor);
            if let PhiRule::Thresholded { min_coeff } = &mut config.rule {
                *min_coeff = min_coeff.max(floor);
            }
        }
        Ok(config)
    }

    /// Parameters of the sampler behind `φ` for this profile.
    pub fn phi_config(&self, epsilon: f64) -> Result<PhiConfig> {
        check_epsilon(epsilon)?;
        Ok(match self {
            Self::Paper { delta } => {
                let g = epsilon.powi(16) / 18.0;
                let rho = epsilon.powi(16) / 4.0;
                PhiConfig {
                    gl: GlParams::new(g, g),
                    rule: PhiRule::Squares,
                    t_edge: hoeffding_samples(rho.powi(3) / 100.0, *delta, 1.0),
                    edge_delta: *delta,
                }
            }
            Self::Practical(p) => PhiConfig {
                gl: GlParams {
                    bits_per_level: p.gl_bits_per_level,
                    ..GlParams::new(p.phi_gamma, p.phi_delta)
                        .with_sample_caps(p.gl_bucket_samples, p.gl_coeff_samples)
                },
                rule: PhiRule::Thresholded {
                    min_coeff: p.phi_min_coeff,
                },
                t_edge: p.t_edge,
                edge_delta: p.phi_delta,
            },
        })
    }
}

/// Everything a [`crate::bsg::PhiSampler`] needs besides the function.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiConfig {
    pub gl: GlParams,
    pub rule: PhiRule,
    pub t_edge: u64,
    /// Nominal failure probability of one weight estimate, for the log.
    pub edge_delta: f64,
}

/// Thresholds and sample counts of one BSG-Test configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct BsgParams {
    pub rho: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub gamma: f64,
    pub mu: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub r: usize,
    pub s: usize,
    pub t_edge: u64,
    pub interval: (f64, f64),
    /// Index of the drawn sub-interval.
    pub subinterval: u64,
}

impl BsgParams {
    /// Builds the parameters for sub-interval `index` of the master interval
    /// split into `floor(4/ρ^2)` equal parts.
    pub fn from_subinterval(
        rho: f64,
        interval: (f64, f64),
        index: u64,
        r: usize,
        s: usize,
        t_edge: u64,
    ) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(invalid(format!("rho must lie in (0, 1), got {rho}")));
        }
        let (lo, hi) = interval;
        if !(lo > 0.0 && lo < hi) {
            return Err(invalid("master interval must satisfy 0 < lo < hi"));
        }
        if r == 0 || s == 0 || t_edge == 0 {
            return Err(invalid("r, s and t_edge must be positive"));
        }
        let count = subinterval_count(rho);
        if index >= count {
            return Err(invalid(format!(
                "sub-interval index {index} out of range 0..{count}"
            )));
        }
        let width = (hi - lo) / count as f64;
        let left = lo + index as f64 * width;
        let right = if index + 1 == count { hi } else { left + width };
        let gamma = (left + right) / 2.0;
        let mu = (right - left) / 2.0;
        Ok(Self {
            rho,
            rho1: 21.0 * rho.powi(3) / 20.0,
            rho2: 19.0 * rho * rho / 20.0,
            gamma,
            mu,
            gamma1: gamma + mu / 2.0,
            gamma2: gamma - mu / 2.0,
            gamma3: gamma + mu / 2.0,
            r,
            s,
            t_edge,
            interval,
            subinterval: index,
        })
    }

    /// Parameters of the outer sandwich set `A^(1)`: `(γ+μ, γ-μ, γ+μ, 11ρ³/10, 9ρ²/10)`.
    #[must_use]
    pub fn outer_set(&self) -> TParams {
        TParams {
            gamma1: self.gamma + self.mu,
            gamma2: self.gamma - self.mu,
            gamma3: self.gamma + self.mu,
            rho1: 11.0 * self.rho.powi(3) / 10.0,
            rho2: 9.0 * self.rho * self.rho / 10.0,
        }
    }

    /// Parameters of the inner sandwich set `A^(2)`: `(γ, γ, γ, ρ³, ρ²)`.
    #[must_use]
    pub fn inner_set(&self) -> TParams {
        TParams {
            gamma1: self.gamma,
            gamma2: self.gamma,
            gamma3: self.gamma,
            rho1: self.rho.powi(3),
            rho2: self.rho * self.rho,
        }
    }
}

/// The five parameters of a set `T(u, γ1, γ2, γ3, ρ1, ρ2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TParams {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub rho1: f64,
    pub rho2: f64,
}

/// `2^{-n/2} sqrt(2n ln 2)`, capped at `1/2`: the typical largest of `2^n`
/// derivative coefficients of a noisy sign function at scale `2^{-n/2}`.
#[must_use]
pub fn phi_noise_floor(n: usize) -> f64 {
    let n = n as f64;
    (2f64.powf(-n / 2.0) * (2.0 * n * std::f64::consts::LN_2).sqrt()).min(0.5)
}

#[must_use]
pub fn subinterval_count(rho: f64) -> u64 {
    ((4.0 / (rho * rho)).floor() as u64).max(1)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )))
    }
}

/// Draws a uniformly random sub-interval and the matching test parameters.
pub fn choose_bsg_params<R: Rng + ?Sized>(
    epsilon: f64,
    profile: &Profile,
    rng: &mut R,
) -> Result<BsgParams> {
    check_epsilon(epsilon)?;
    match profile {
        Profile::Paper { delta } => {
            if !(*delta > 0.0 && *delta < 1.0) {
                return Err(invalid("delta must lie in (0, 1)"));
            }
            let e16 = epsilon.powi(16);
            let rho = e16 / 4.0;
            let err = rho.powi(3) / 100.0;
            let r = hoeffding_samples(err, *delta, 0.5).min(usize::MAX as u64) as usize;
            let t = hoeffding_samples(err, *delta, 1.0);
            let index = rng.random_range(0..subinterval_count(rho));
            BsgParams::from_subinterval(rho, (e16 / 180.0, e16 / 18.0), index, r, r, t)
        }
        Profile::Practical(p) => {
            let index = rng.random_range(0..subinterval_count(p.rho));
            BsgParams::from_subinterval(p.rho, p.interval, index, p.r, p.s, p.t_edge)
        }
    }
}
