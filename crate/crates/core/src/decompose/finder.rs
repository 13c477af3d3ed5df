use super::residual::Term;
use super::rounding::boolean_round_oracle;
use crate::error::Result;
use crate::functions::Oracle;
use crate::model_refine::{find_quadratic_average_with, FindAverageConfig};
use crate::quad_recovery::{find_quadratic_with, FindQuadraticConfig};
use crate::rng::{fork, StreamRng};

/// A term returned by a finder, with the finder's own correlation estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct Found {
    pub term: Term,
    pub correlation_estimate: f64,
}

/// A procedure that, given `f` with `‖f‖_{U^3} >= ε`, returns a term
/// correlating with `f`, or `None`.
pub trait TermFinder: Sync {
    fn find(
        &self,
        f: &dyn Oracle,
        epsilon: f64,
        delta: f64,
        rng: &mut StreamRng,
    ) -> Result<Option<Found>>;
}

/// Quadratic phases through [`find_quadratic_with`], entry gate skipped.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseFinder {
    pub config: FindQuadraticConfig,
}

impl PhaseFinder {
    #[must_use]
    pub fn practical() -> Self {
        Self {
            config: FindQuadraticConfig::practical(0.5, 0.05),
        }
    }
}

impl TermFinder for PhaseFinder {
    fn find(
        &self,
        f: &dyn Oracle,
        epsilon: f64,
        delta: f64,
        rng: &mut StreamRng,
    ) -> Result<Option<Found>> {
        let config = FindQuadraticConfig {
            epsilon,
            delta,
            skip_gate: true,
            ..self.config.clone()
        };
        let report = find_quadratic_with(f, &config, None, rng)?;
        Ok(report.phase.map(|q| Found {
            term: Term::Phase(q),
            correlation_estimate: report.correlation_estimate,
        }))
    }
}

/// Quadratic averages through [`find_quadratic_average_with`], entry gate skipped.
#[derive(Clone, Debug, PartialEq)]
pub struct AverageFinder {
    pub config: FindAverageConfig,
}

impl AverageFinder {
    #[must_use]
    pub fn practical(n: usize) -> Self {
        Self {
            config: FindAverageConfig::practical(n, 0.5, 0.05),
        }
    }
}

impl TermFinder for AverageFinder {
    fn find(
        &self,
        f: &dyn Oracle,
        epsilon: f64,
        delta: f64,
        rng: &mut StreamRng,
    ) -> Result<Option<Found>> {
        let config = FindAverageConfig {
            epsilon,
            delta,
            skip_gate: true,
            ..self.config.clone()
        };
        let report = find_quadratic_average_with(f, &config, None, rng)?;
        Ok(report.average.map(|q| Found {
            term: Term::Average(q),
            correlation_estimate: report.correlation_estimate,
        }))
    }
}

/// Runs `inner` on the Boolean rounding of `f` at `ε/2B`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rounded<F> {
    pub inner: F,
    pub bound: f64,
}

impl<F: TermFinder> TermFinder for Rounded<F> {
    fn find(
        &self,
        f: &dyn Oracle,
        epsilon: f64,
        delta: f64,
        rng: &mut StreamRng,
    ) -> Result<Option<Found>> {
        let rounded = boolean_round_oracle(f, self.bound, fork(rng))?;
        self.inner
            .find(&rounded, epsilon / (2.0 * self.bound), delta, rng)
    }
}
