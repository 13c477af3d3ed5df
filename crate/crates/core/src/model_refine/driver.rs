use rand::Rng;
use rayon::prelude::*;

use super::linear_parts::{find_linear_parts, LinearPartsParams};
use super::local_choice::{local_linear_choice, local_symmetrize, LocalChoiceParams};
use super::params::{paper_model_rows, ModelParams};
use crate::bsg::{choose_bsg_params, record, Diagnostics, PhiSampler, Profile};
use crate::error::{invalid, Result};
use crate::f2::{symmetric_split, MatrixF2, PointF2};
use crate::fourier::estimate_u3;
use crate::functions::{check_unit, estimate_correlation, Oracle, QuadraticAverage};
use crate::rng::{fork, stream};

/// Knobs of [`find_quadratic_average_with`].
#[derive(Clone, Debug, PartialEq)]
pub struct FindAverageConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub profile: Profile,
    pub attempts: u64,
    pub threads: usize,
    /// Rows `m` of the model map `Γ`.
    pub model_rows: usize,
    /// Target the model class of `φ(u)` instead of a uniform `c`.
    pub model_from_anchor: bool,
    pub local: LocalChoiceParams,
    pub linear_parts: LinearPartsParams,
    /// Validation threshold `τ` (estimated to within `τ/2`).
    pub accept_threshold: f64,
    /// Attempts whose `codim(W)` exceeds this are discarded.
    pub max_complexity: usize,
    pub skip_gate: bool,
}

impl FindAverageConfig {
    /// Practical defaults: `m = 1` aimed at `φ(u)`, `σ = 0.3`, `τ = 0.1`,
    /// complexity at most 6, 50 attempts.
    #[must_use]
    pub fn practical(n: usize, epsilon: f64, delta: f64) -> Self {
        Self {
            epsilon,
            delta,
            profile: Profile::practical(),
            attempts: 50,
            threads: 1,
            model_rows: 1,
            model_from_anchor: true,
            local: LocalChoiceParams::practical(n),
            linear_parts: LinearPartsParams::practical(0.3, delta),
            accept_threshold: 0.1,
            max_complexity: 6,
            skip_gate: false,
        }
    }

    /// Literal constants; `σ = exp(-1/ε^c_exp)` and `τ = σ^2/20`.
    #[must_use]
    pub fn paper(n: usize, epsilon: f64, delta: f64, c_exp: f64) -> Self {
        let sigma = (-1.0 / epsilon.powf(c_exp)).exp();
        Self {
            profile: Profile::Paper { delta },
            model_rows: paper_model_rows(epsilon),
            model_from_anchor: false,
            local: LocalChoiceParams::paper(n, delta),
            linear_parts: LinearPartsParams {
                sigma,
                delta,
                bucket_samples: None,
                coeff_samples: None,
                sign_samples: crate::functions::hoeffding_samples(sigma * sigma / 40.0, delta, 1.0),
            },
            accept_threshold: sigma * sigma / 20.0,
            max_complexity: n,
            ..Self::practical(n, epsilon, delta)
        }
    }

    fn validate(&self) -> Result<()> {
        check_unit("epsilon", self.epsilon)?;
        check_unit("delta", self.delta)?;
        check_unit("accept_threshold", self.accept_threshold)?;
        if self.attempts == 0 || self.threads == 0 || self.model_rows == 0 {
            return Err(invalid("attempts, threads and model_rows must be positive"));
        }
        Ok(())
    }
}

/// Outcome of [`find_quadratic_average_with`]; `average` is `None` on bottom.
#[derive(Clone, Debug, PartialEq)]
pub struct FindAverageReport {
    pub average: Option<QuadraticAverage>,
    pub correlation_estimate: f64,
    pub attempts: u64,
    pub queries: u64,
    pub u3_estimate: f64,
    pub gate_passed: bool,
}

/// A quadratic average correlating with `f`, or `None`.
pub fn find_quadratic_average<R: Rng + ?Sized>(
    f: &dyn Oracle,
    epsilon: f64,
    delta: f64,
    profile: &Profile,
    rng: &mut R,
) -> Result<Option<QuadraticAverage>> {
    let config = FindAverageConfig {
        profile: profile.clone(),
        ..FindAverageConfig::practical(f.n(), epsilon, delta)
    };
    Ok(find_quadratic_average_with(f, &config, None, rng)?.average)
}

/// Entry gate on `‖f‖_{U^3}`, then attempts of local linear choice →
/// local symmetrization → per-coset linear parts → validation.
pub fn find_quadratic_average_with<R: Rng + ?Sized>(
    f: &dyn Oracle,
    config: &FindAverageConfig,
    diag: Option<&Diagnostics>,
    rng: &mut R,
) -> Result<FindAverageReport> {
    config.validate()?;
    if f.n() == 0 {
        return Err(invalid("find_quadratic_average needs n >= 1"));
    }
    let start = f.query_count();
    let mut report = FindAverageReport {
        average: None,
        correlation_estimate: 0.0,
        attempts: 0,
        queries: 0,
        u3_estimate: f64::NAN,
        gate_passed: true,
    };
    if !config.skip_gate {
        let u3 = estimate_u3(f, config.epsilon / 4.0, config.delta / 2.0, rng)?;
        record(diag, "u3", u3.samples, config.delta / 2.0);
        report.u3_estimate = u3.value;
        if u3.value < 3.0 * config.epsilon / 4.0 {
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
        let results: Vec<Result<Option<(QuadraticAverage, f64)>>> = if config.threads == 1 {
            vec![attempt(f, config, diag, base, next, validate_delta)]
        } else {
            (next..end)
                .into_par_iter()
                .map(|i| attempt(f, config, diag, base, i, validate_delta))
                .collect()
        };
        for (i, r) in (next..end).zip(results) {
            if let Some((q, c)) = r? {
                report.average = Some(q);
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
    config: &FindAverageConfig,
    diag: Option<&Diagnostics>,
    base: u64,
    index: u64,
    validate_delta: f64,
) -> Result<Option<(QuadraticAverage, f64)>> {
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
    let gamma = MatrixF2::random(config.model_rows, n, &mut rng);
    let c = if config.model_from_anchor {
        gamma.mul_vec(&sampler.sample_phi(&u))
    } else {
        PointF2::random(config.model_rows, &mut rng)
    };
    let model = ModelParams::new(gamma, c)?;
    let Some(choice) = local_linear_choice(&sampler, &bsg, &u, &model, &config.local, &mut rng)?
    else {
        return Ok(None);
    };
    let Some(sym) = local_symmetrize(&choice)? else {
        return Ok(None);
    };
    if sym.w.codim()
        > config
            .max_complexity
            .min(super::linear_parts::MAX_LINEAR_PARTS_CODIM)
    {
        return Ok(None);
    }
    let a = symmetric_split(&sym.b)?;
    let parts = find_linear_parts(f, &sym.w, &a, &config.linear_parts, &mut rng)?;
    let tau = config.accept_threshold;
    let q = parts.average;
    let est = estimate_correlation(f, &q.oracle(), tau / 2.0, validate_delta, &mut rng)?;
    record(diag, "correlation", est.samples, validate_delta);
    Ok((est.value >= tau).then_some((q, est.value)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{correlation_exact, make_noisy_average, QuadraticPhase};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(241);
        let q = QuadraticPhase::random(8, &mut rng);
        let t = q.truth_table().unwrap();
        let report = find_quadratic_average_with(
            &t.oracle(),
            &FindAverageConfig::practical(8, 0.5, 0.05),
            None,
            &mut rng,
        )
        .unwrap();
        let avg = report.average.unwrap();
        let c = correlation_exact(&t, &avg.truth_table().unwrap()).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
        assert!(avg.complexity() <= 1);
    }

    #[test]
    fn noisy_planted_average() {
        let mut rng = ChaCha8Rng::seed_from_u64(242);
        let q = QuadraticAverage::random(10, 2, &mut rng).unwrap();
        let f = make_noisy_average(&q, 0.2, &mut rng).unwrap();
        let config = FindAverageConfig {
            max_complexity: 4,
            ..FindAverageConfig::practical(10, 0.3, 0.05)
        };
        let report = find_quadratic_average_with(&f.oracle(), &config, None, &mut rng).unwrap();
        assert!(report.gate_passed, "{}", report.u3_estimate);
        let avg = report.average.expect("validated average");
        let c = correlation_exact(&f, &avg.truth_table().unwrap()).unwrap();
        assert!(c >= 0.15, "{c}");
        assert!(avg.complexity() <= 4);
    }
}
