use rand::Rng;
use rayon::prelude::*;

use super::integrate::integrate;
use super::linear_map::{find_linear_map, LinearMapParams};
use super::symmetrize::symmetrize;
use crate::bsg::{choose_bsg_params, record, Diagnostics, PhiSampler, Profile};
use crate::error::{invalid, Result};
use crate::f2::PointF2;
use crate::fourier::{estimate_u3, GlParams};
use crate::functions::{check_unit, estimate_correlation, Oracle, QuadraticPhase};
use crate::rng::{fork, stream};

/// Knobs of [`find_quadratic_with`].
#[derive(Clone, Debug, PartialEq)]
pub struct FindQuadraticConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub profile: Profile,
    pub attempts: u64,
    /// Attempts run concurrently per batch; `1` runs them in order.
    pub threads: usize,
    /// Validation threshold `τ`: a phase is returned only if its estimated
    /// correlation is at least `τ` (estimated to within `τ/2`).
    pub accept_threshold: f64,
    /// Decoding threshold of the integration step.
    pub integrate_gamma: f64,
    /// Skip the `U^3` entry gate.
    pub skip_gate: bool,
}

impl FindQuadraticConfig {
    /// Practical defaults: 50 attempts, `τ = 0.05`, integration at `0.2`.
    #[must_use]
    pub fn practical(epsilon: f64, delta: f64) -> Self {
        Self {
            epsilon,
            delta,
            profile: Profile::practical(),
            attempts: 50,
            threads: 1,
            accept_threshold: 0.05,
            integrate_gamma: 0.2,
            skip_gate: false,
        }
    }

    /// Literal constants with `η = exp(-1/ε^c_exp)`: `τ = η^2/2`, integration
    /// at `η^2`, `ceil(ln(1/δ)/ρ^4)` attempts with `ρ = ε^16/4`.
    #[must_use]
    pub fn paper(epsilon: f64, delta: f64, c_exp: f64) -> Self {
        let eta = (-1.0 / epsilon.powf(c_exp)).exp();
        let rho = epsilon.powi(16) / 4.0;
        let attempts = ((1.0 / delta).ln() / rho.powi(4))
            .ceil()
            .min(u64::MAX as f64) as u64;
        Self {
            epsilon,
            delta,
            profile: Profile::Paper { delta },
            attempts: attempts.max(1),
            threads: 1,
            accept_threshold: eta * eta / 2.0,
            integrate_gamma: eta * eta,
            skip_gate: false,
        }
    }

    fn validate(&self) -> Result<()> {
        check_unit("epsilon", self.epsilon)?;
        check_unit("delta", self.delta)?;
        check_unit("accept_threshold", self.accept_threshold)?;
        check_unit("integrate_gamma", self.integrate_gamma)?;
        if self.attempts == 0 || self.threads == 0 {
            return Err(invalid("attempts and threads must be positive"));
        }
        Ok(())
    }
}

/// Outcome of [`find_quadratic_with`]; `phase` is `None` on bottom.
#[derive(Clone, Debug, PartialEq)]
pub struct FindQuadraticReport {
    pub phase: Option<QuadraticPhase>,
    /// Validation estimate of `<f, (-1)^q>` for the returned phase.
    pub correlation_estimate: f64,
    /// Attempts run (the index of the winning attempt plus one on success).
    pub attempts: u64,
    pub queries: u64,
    pub u3_estimate: f64,
    pub gate_passed: bool,
}

/// A quadratic phase correlating with `f`, or `None`.
pub fn find_quadratic<R: Rng + ?Sized>(
    f: &dyn Oracle,
    epsilon: f64,
    delta: f64,
    profile: &Profile,
    rng: &mut R,
) -> Result<Option<QuadraticPhase>> {
    let config = FindQuadraticConfig {
        profile: profile.clone(),
        ..FindQuadraticConfig::practical(epsilon, delta)
    };
    Ok(find_quadratic_with(f, &config, None, rng)?.phase)
}

/// Entry gate on `‖f‖_{U^3}`, then repeated attempts of
/// φ sampler → linear map → symmetrize → integrate → validate.
pub fn find_quadratic_with<R: Rng + ?Sized>(
    f: &dyn Oracle,
    config: &FindQuadraticConfig,
    diag: Option<&Diagnostics>,
    rng: &mut R,
) -> Result<FindQuadraticReport> {
    config.validate()?;
    if f.n() == 0 {
        return Err(invalid("find_quadratic needs n >= 1"));
    }
    let start = f.query_count();
    let eps = config.epsilon;
    let mut report = FindQuadraticReport {
        phase: None,
        correlation_estimate: 0.0,
        attempts: 0,
        queries: 0,
        u3_estimate: f64::NAN,
        gate_passed: true,
    };
    if !config.skip_gate {
        let u3 = estimate_u3(f, eps / 4.0, config.delta / 2.0, rng)?;
        record(diag, "u3", u3.samples, config.delta / 2.0);
        report.u3_estimate = u3.value;
        if u3.value < 3.0 * eps / 4.0 {
            report.gate_passed = false;
            report.queries = f.query_count() - start;
            return Ok(report);
        }
    }
    let base = fork(rng);
    let validate_delta = config.delta / (2.0 * config.attempts as f64);
    let mut next = 0u64;
    while next < config.attempts {
        let end = (next + config.threads as u64).min(config.attempts);
        let results: Vec<Result<Option<(QuadraticPhase, f64)>>> = if config.threads == 1 {
            vec![attempt(f, config, diag, base, next, validate_delta)]
        } else {
            (next..end)
                .into_par_iter()
                .map(|i| attempt(f, config, diag, base, i, validate_delta))
                .collect()
        };
        for (i, r) in (next..end).zip(results) {
            if let Some((q, c)) = r? {
                report.phase = Some(q);
                report.correlation_estimate = c;
                report.attempts = i + 1;
                report.queries = f.query_count() - start;
                return Ok(report);
            }
        }
        next = end;
    }
    report.attempts = config.attempts;
    report.queries = f.query_count() - start;
    Ok(report)
}

fn attempt(
    f: &dyn Oracle,
    config: &FindQuadraticConfig,
    diag: Option<&Diagnostics>,
    base: u64,
    index: u64,
    validate_delta: f64,
) -> Result<Option<(QuadraticPhase, f64)>> {
    let mut rng = stream(base, "attempt", index);
    let n = f.n();
    let eps = config.epsilon;
    let bsg = choose_bsg_params(eps, &config.profile, &mut rng)?;
    let mut sampler = PhiSampler::new(f, config.profile.phi_config_for(eps, n)?, fork(&mut rng));
    if let Some(d) = diag {
        sampler = sampler.with_diagnostics(d);
    }
    let u = PointF2::random(n, &mut rng);
    if sampler.weight(&u) < bsg.gamma1 {
        return Ok(None);
    }
    let lm = match &config.profile {
        Profile::Paper { delta } => LinearMapParams::paper(n, bsg.rho, *delta),
        Profile::Practical(_) => LinearMapParams::practical(n),
    };
    record(diag, "bsg", lm.samples, config.delta);
    let Some(map) = find_linear_map(&sampler, &bsg, &u, lm, &mut rng)? else {
        return Ok(None);
    };
    let (_, b) = symmetrize(&map.t)?;
    let gl = GlParams::new(config.integrate_gamma, config.delta);
    let Some((q, _)) = integrate(f, &b, &gl, &mut rng)? else {
        return Ok(None);
    };
    let tau = config.accept_threshold;
    let est = estimate_correlation(f, &q.oracle(), tau / 2.0, validate_delta, &mut rng)?;
    record(diag, "correlation", est.samples, validate_delta);
    Ok((est.value >= tau).then_some((q, est.value)))
}
