use rand::Rng;
use serde_json::{json, Map, Value};

use super::finder::{AverageFinder, PhaseFinder, Rounded, TermFinder};
use super::residual::{DecompositionTerm, ResidualOracle, Term};
use crate::error::{invalid, Result};
use crate::f2::PointF2;
use crate::fourier::{estimate_u3_capped, exact_u_norm, MAX_EXACT_U3_N, MAX_U3_SAMPLES};
use crate::functions::io::{AverageJson, PhaseJson};
use crate::functions::{check_unit, estimate_correlation, FnOracle, Oracle, TruthTable};
use crate::rng::{fork, stream};

/// Samples behind the `‖e‖_1` estimate when the residual is not tabulated.
const E_L1_SAMPLES: u64 = 1 << 14;

/// Coefficient of each accepted term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepCoefficient {
    /// The fixed step `η`.
    Fixed,
    /// The measured correlation `<f_t, q̄_t>`. Coefficients may exceed `η`.
    Measured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// The residual norm fell below the threshold.
    NormBelow,
    /// The finder returned nothing.
    FinderBottom,
    /// `k_max` terms were accepted.
    StepLimit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinderMode {
    Phases,
    Averages,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecomposeConfig {
    pub epsilon: f64,
    /// Truncation bound `B > 1`.
    pub bound: f64,
    pub delta: f64,
    pub eta: f64,
    /// Defaults to `ceil(1/η^2)`.
    pub max_steps: Option<usize>,
    /// Residuals with `n` up to this are tabulated: the norm test, the
    /// correlations and the potential are then exact.
    pub exact_max_n: usize,
    /// Cube samples allowed to each sampled norm test.
    pub norm_sample_cap: u64,
    pub coefficient: StepCoefficient,
}

impl DecomposeConfig {
    /// `η = 0.5`, exact audits up to `n = 12`.
    #[must_use]
    pub fn practical(epsilon: f64, bound: f64, delta: f64) -> Self {
        Self {
            epsilon,
            bound,
            delta,
            eta: 0.5,
            max_steps: None,
            exact_max_n: 12,
            norm_sample_cap: MAX_U3_SAMPLES,
            coefficient: StepCoefficient::Fixed,
        }
    }

    /// `ceil(1/η^2)` unless overridden.
    #[must_use]
    pub fn k_max(&self) -> usize {
        self.max_steps
            .unwrap_or_else(|| (1.0 / (self.eta * self.eta)).ceil() as usize)
    }

    fn validate(&self) -> Result<()> {
        check_unit("epsilon", self.epsilon)?;
        check_unit("delta", self.delta)?;
        if !(self.bound.is_finite() && self.bound > 1.0) {
            return Err(invalid(format!("B must exceed 1, got {}", self.bound)));
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(invalid(format!("eta must lie in (0, 1], got {}", self.eta)));
        }
        Ok(())
    }
}

/// Exact potential terms around one step, from the tabulated residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialStep {
    /// `‖f_t‖_2^2`.
    pub f_sq: f64,
    pub f_sq_next: f64,
    /// `‖Δ_t‖_1` with `Δ_t = f_t (h_t - f_t)`.
    pub delta_l1: f64,
    pub delta_l1_next: f64,
    /// `‖f_t‖^2 - ‖f_{t+1}‖^2 + 2‖Δ_t‖_1 - 2‖Δ_{t+1}‖_1 + c^2`.
    pub lhs: f64,
    /// `2c <q̄_t, f_t>`.
    pub rhs: f64,
}

impl PotentialStep {
    /// `lhs >= rhs` up to rounding.
    #[must_use]
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs - 1e-9
    }

    /// Decrease of `‖f‖^2 + 2‖Δ‖_1` over the step.
    #[must_use]
    pub fn drop(&self) -> f64 {
        self.f_sq + 2.0 * self.delta_l1 - self.f_sq_next - 2.0 * self.delta_l1_next
    }
}

/// One accepted step.
#[derive(Clone, Debug, PartialEq)]
pub struct StepLog {
    pub t: usize,
    /// `‖f_t‖_{U^3}` before the step.
    pub norm: f64,
    /// `<f_t, q̄_t>`, exact when the residual is tabulated.
    pub correlation: f64,
    pub finder_estimate: f64,
    pub coeff: f64,
    /// `<f_t, q̄_t> >= η`.
    pub contract_met: bool,
    pub potential: Option<PotentialStep>,
}

/// `g = Σ c_i q̄_i + e + f` with `f = clamp(h_k, ±B)` and `e = h_k - f`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub n: usize,
    pub epsilon: f64,
    pub eta: f64,
    pub bound: f64,
    pub terms: Vec<DecompositionTerm>,
    pub coefficient: StepCoefficient,
    pub stop: StopReason,
    /// `‖f‖_{U^3}` at exit.
    pub residual_u3: f64,
    pub residual_u3_exact: bool,
    /// `‖e‖_1` at exit.
    pub e_l1: f64,
    pub e_l1_exact: bool,
    /// `‖f_k‖^2 + 2‖Δ_k‖_1` at exit, when tabulated.
    pub final_potential: Option<f64>,
    pub steps: Vec<StepLog>,
    /// Failure budget of each norm test and finder call.
    pub delta_per_call: f64,
    pub queries: u64,
}

impl Decomposition {
    #[must_use]
    pub fn k(&self) -> usize {
        self.terms.len()
    }

    /// `Σ c_i q̄_i(x)`.
    #[must_use]
    pub fn approximation(&self, x: &PointF2) -> f64 {
        self.terms.iter().map(|t| t.coeff * t.term.value(x)).sum()
    }

    /// The residual `f` as an oracle over `g`.
    pub fn residual<'a>(&'a self, g: &'a dyn Oracle) -> ResidualOracle<'a> {
        ResidualOracle::new(g, &self.terms, self.bound)
    }

    /// Steps whose correlation fell short of `η`.
    #[must_use]
    pub fn contract_misses(&self) -> usize {
        self.steps.iter().filter(|s| !s.contract_met).count()
    }

    /// Every tabulated step satisfies the pointwise potential inequality in mean.
    #[must_use]
    pub fn potential_holds(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.potential.is_none_or(|p| p.holds()))
    }

    /// `k η^2 + ‖f_k‖^2 + 2‖Δ_k‖_1`, when tabulated.
    #[must_use]
    pub fn aggregate(&self) -> Option<f64> {
        self.final_potential
            .map(|p| self.k() as f64 * self.eta * self.eta + p)
    }

    /// JSON summary: terms, residual diagnostics and the per-step log.
    pub fn to_json(&self) -> Result<Value> {
        let d = self;
        let terms = d
            .terms
            .iter()
            .map(|t| {
                let (key, body) = term_json(&t.term)?;
                let mut m = Map::new();
                m.insert("coeff".into(), json!(t.coeff));
                m.insert(key.into(), body);
                Ok(Value::Object(m))
            })
            .collect::<Result<Vec<_>>>()?;
        let steps: Vec<Value> = d
            .steps
            .iter()
            .map(|s| {
                json!({
                    "t": s.t,
                    "norm": s.norm,
                    "correlation": s.correlation,
                    "coeff": s.coeff,
                    "contract_met": s.contract_met,
                    "potential_holds": s.potential.map(|p| p.holds()),
                })
            })
            .collect();
        Ok(json!({
            "eta": d.eta,
            "terms": terms,
            "residual_u3_estimate": d.residual_u3,
            "e_l1": d.e_l1,
            "k": d.k(),
            "bound": d.bound,
            "stop": format!("{:?}", d.stop),
            "residual_u3_exact": d.residual_u3_exact,
            "e_l1_exact": d.e_l1_exact,
            "measured_coefficients": d.coefficient == StepCoefficient::Measured,
            "contract_misses": d.contract_misses(),
            "steps": steps,
            "queries": d.queries,
        }))
    }
}

fn clamp_all(h: &[f64], b: f64) -> Vec<f64> {
    h.iter().map(|v| v.clamp(-b, b)).collect()
}

/// `(‖f‖_2^2, ‖Δ‖_1)` for `f = clamp(h)`.
fn potential_parts(h: &[f64], b: f64) -> (f64, f64) {
    let len = h.len() as f64;
    let (mut sq, mut d) = (0.0, 0.0);
    for &v in h {
        let f = v.clamp(-b, b);
        sq += f * f;
        d += f * (v - f);
    }
    (sq / len, d / len)
}

/// `g = Σ c_t q̄_t + e + f` by repeatedly subtracting `c_t q̄_t` from the
/// untruncated residual `h_t` and truncating to `[-B, B]`.
///
/// Each round first tests `‖f_t‖_{U^3}`: exactly below `ε` when `n <=
/// exact_max_n`, otherwise an estimate to within `ε/4` below `3ε/4`. Passing
/// rounds call `finder`; `None` ends the loop, as does reaching `k_max` terms.
pub fn decompose<R: Rng + ?Sized>(
    g: &dyn Oracle,
    config: &DecomposeConfig,
    finder: &dyn TermFinder,
    rng: &mut R,
) -> Result<Decomposition> {
    config.validate()?;
    let n = g.n();
    if n == 0 {
        return Err(invalid("decompose needs n >= 1"));
    }
    if g.bound() > 1.0 + 1e-12 {
        return Err(invalid(format!(
            "g must take values in [-1, 1], bound is {}",
            g.bound()
        )));
    }
    let start = g.query_count();
    let (eps, b, eta) = (config.epsilon, config.bound, config.eta);
    let k_max = config.k_max();
    let delta_call = config.delta / (2.0 * k_max.max(1) as f64);
    let seed = fork(rng);
    let exact = n <= config.exact_max_n.min(MAX_EXACT_U3_N);
    let mut h: Option<Vec<f64>> = if exact {
        Some(TruthTable::from_oracle(g)?.into_values())
    } else {
        None
    };
    let mut terms: Vec<DecompositionTerm> = Vec::new();
    let mut steps = Vec::new();
    let (stop, norm) = loop {
        let t = terms.len();
        let mut rng = stream(seed, "step", t as u64);
        let table = match &h {
            Some(h) => Some(TruthTable::new(n, clamp_all(h, b))?),
            None => None,
        };
        let residual = ResidualOracle::new(g, &terms, b);
        let norm = match &table {
            Some(ft) => exact_u_norm(ft, 3)?,
            None => {
                estimate_u3_capped(
                    &residual,
                    eps / 4.0,
                    delta_call,
                    config.norm_sample_cap,
                    &mut rng,
                )?
                .value
            }
        };
        let threshold = if exact { eps } else { 3.0 * eps / 4.0 };
        if norm < threshold {
            break (StopReason::NormBelow, norm);
        }
        if t >= k_max {
            break (StopReason::StepLimit, norm);
        }
        let found = match &table {
            Some(ft) => finder.find(&ft.oracle(), eps, delta_call, &mut rng)?,
            None => finder.find(&residual, eps, delta_call, &mut rng)?,
        };
        let Some(found) = found else {
            break (StopReason::FinderBottom, norm);
        };
        let term = found.term;
        let correlation = match &table {
            Some(ft) => term.correlation_with(ft),
            None => {
                let q = FnOracle::new(n, 1.0, |x| term.value(x));
                estimate_correlation(&residual, &q, eta / 4.0, delta_call, &mut rng)?.value
            }
        };
        let coeff = match config.coefficient {
            StepCoefficient::Fixed => eta,
            StepCoefficient::Measured => {
                if correlation <= 0.0 {
                    break (StopReason::FinderBottom, norm);
                }
                correlation
            }
        };
        let potential = match &mut h {
            Some(h) => {
                let (f_sq, delta_l1) = potential_parts(h, b);
                for (i, v) in h.iter_mut().enumerate() {
                    *v -= coeff * term.value(&PointF2::from_u64(n, i as u64));
                }
                let (f_sq_next, delta_l1_next) = potential_parts(h, b);
                Some(PotentialStep {
                    f_sq,
                    f_sq_next,
                    delta_l1,
                    delta_l1_next,
                    lhs: f_sq - f_sq_next + 2.0 * delta_l1 - 2.0 * delta_l1_next + coeff * coeff,
                    rhs: 2.0 * coeff * correlation,
                })
            }
            None => None,
        };
        steps.push(StepLog {
            t,
            norm,
            correlation,
            finder_estimate: found.correlation_estimate,
            coeff,
            contract_met: correlation >= eta,
            potential,
        });
        terms.push(DecompositionTerm { coeff, term });
    };
    let (e_l1, final_potential) = match &h {
        Some(h) => {
            let e = h.iter().map(|v| (v - v.clamp(-b, b)).abs()).sum::<f64>() / h.len() as f64;
            let (sq, d) = potential_parts(h, b);
            (e, Some(sq + 2.0 * d))
        }
        None => {
            let residual = ResidualOracle::new(g, &terms, b);
            let mut r = stream(seed, "e_l1", 0);
            let s: f64 = (0..E_L1_SAMPLES)
                .map(|_| residual.error(&PointF2::random(n, &mut r)).abs())
                .sum();
            (s / E_L1_SAMPLES as f64, None)
        }
    };
    Ok(Decomposition {
        n,
        epsilon: eps,
        eta,
        bound: b,
        terms,
        coefficient: config.coefficient,
        stop,
        residual_u3: norm,
        residual_u3_exact: exact,
        e_l1,
        e_l1_exact: exact,
        final_potential,
        steps,
        delta_per_call: delta_call,
        queries: g.query_count() - start,
    })
}

/// [`decompose`] with the phase or average finder applied to the Boolean
/// rounding of each residual at `ε/2B`.
pub fn decompose_full<R: Rng + ?Sized>(
    g: &dyn Oracle,
    epsilon: f64,
    bound: f64,
    delta: f64,
    mode: FinderMode,
    rng: &mut R,
) -> Result<Decomposition> {
    decompose_full_with(
        g,
        &DecomposeConfig::practical(epsilon, bound, delta),
        mode,
        rng,
    )
}

/// [`decompose_full`] under an explicit configuration.
pub fn decompose_full_with<R: Rng + ?Sized>(
    g: &dyn Oracle,
    config: &DecomposeConfig,
    mode: FinderMode,
    rng: &mut R,
) -> Result<Decomposition> {
    let bound = config.bound;
    match mode {
        FinderMode::Phases => decompose(
            g,
            config,
            &Rounded {
                inner: PhaseFinder::practical(),
                bound,
            },
            rng,
        ),
        FinderMode::Averages => decompose(
            g,
            config,
            &Rounded {
                inner: AverageFinder::practical(g.n()),
                bound,
            },
            rng,
        ),
    }
}

fn term_json(t: &Term) -> Result<(&'static str, Value)> {
    Ok(match t {
        Term::Phase(q) => ("phase", serde_json::to_value(PhaseJson::from(q))?),
        Term::Average(q) => ("average", serde_json::to_value(AverageJson::from(q))?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{Found, Term};
    use crate::functions::{
        correlation_exact, make_noisy_average, make_noisy_codeword, random_boolean,
        QuadraticAverage, QuadraticPhase,
    };
    use crate::rng::StreamRng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    struct Never;
    impl TermFinder for Never {
        fn find(&self, _: &dyn Oracle, _: f64, _: f64, _: &mut StreamRng) -> Result<Option<Found>> {
            Ok(None)
        }
    }

    struct Always(QuadraticPhase);
    impl TermFinder for Always {
        fn find(&self, _: &dyn Oracle, _: f64, _: f64, _: &mut StreamRng) -> Result<Option<Found>> {
            Ok(Some(Found {
                term: Term::Phase(self.0.clone()),
                correlation_estimate: 0.0,
            }))
        }
    }

    fn max_reconstruction_gap(g: &TruthTable, d: &Decomposition) -> f64 {
        let go = g.oracle();
        let r = d.residual(&go);
        (0..g.len() as u64)
            .map(|i| {
                let x = PointF2::from_u64(g.n(), i);
                (g.at(&x) - (d.approximation(&x) + r.error(&x) + r.query(&x))).abs()
            })
            .fold(0.0, f64::max)
    }

    fn exact_residual_u3(g: &TruthTable, d: &Decomposition) -> f64 {
        let go = g.oracle();
        let r = d.residual(&go);
        exact_u_norm(&TruthTable::from_oracle(&r).unwrap(), 3).unwrap()
    }

    #[test]
    fn small_norm_input_is_left_alone() {
        let mut rng = ChaCha8Rng::seed_from_u64(321);
        let g = random_boolean(12, &mut rng).unwrap();
        let d = decompose(
            &g.oracle(),
            &DecomposeConfig::practical(0.5, 2.0, 0.05),
            &Never,
            &mut rng,
        )
        .unwrap();
        assert_eq!(d.k(), 0);
        assert_eq!(d.stop, StopReason::NormBelow);
        assert_eq!(d.e_l1, 0.0);
        assert!(d.residual_u3 < 0.5);
        assert!((d.residual_u3 - exact_u_norm(&g, 3).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn bottom_stops_the_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(322);
        let g = QuadraticPhase::random(8, &mut rng).truth_table().unwrap();
        let d = decompose(
            &g.oracle(),
            &DecomposeConfig::practical(0.3, 2.0, 0.05),
            &Never,
            &mut rng,
        )
        .unwrap();
        assert_eq!((d.k(), d.stop), (0, StopReason::FinderBottom));
        assert!((d.residual_u3 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exact_phase_is_removed() {
        let mut rng = ChaCha8Rng::seed_from_u64(323);
        let q = QuadraticPhase::random(10, &mut rng);
        let g = q.truth_table().unwrap();
        let d = decompose(
            &g.oracle(),
            &DecomposeConfig::practical(0.3, 2.0, 0.05),
            &PhaseFinder::practical(),
            &mut rng,
        )
        .unwrap();
        assert_eq!(d.stop, StopReason::NormBelow);
        let toward_q: f64 = d
            .terms
            .iter()
            .map(|t| {
                t.coeff
                    * correlation_exact(&g, &t.term.as_phase().unwrap().truth_table().unwrap())
                        .unwrap()
            })
            .sum();
        assert!(toward_q >= 0.5 - 1e-9, "{toward_q}");
        assert!(exact_residual_u3(&g, &d) < 0.3);
        assert!(max_reconstruction_gap(&g, &d) <= 1e-9);
    }

    #[test]
    fn two_phase_mixture_meets_the_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(324);
        let (q1, q2) = (
            QuadraticPhase::random(10, &mut rng),
            QuadraticPhase::random(10, &mut rng),
        );
        let g = TruthTable::from_fn(10, |x| 0.5 * q1.value(x) + 0.5 * q2.value(x)).unwrap();
        let config = DecomposeConfig::practical(0.3, 2.0, 0.05);
        let d = decompose(&g.oracle(), &config, &PhaseFinder::practical(), &mut rng).unwrap();
        assert!(max_reconstruction_gap(&g, &d) <= 1e-9);
        assert!(d.k() as f64 <= 1.0 / (d.eta * d.eta));
        assert!(d.e_l1 <= 1.0 / (2.0 * d.bound));
        let u3 = exact_residual_u3(&g, &d);
        assert!(u3 <= 0.3, "{u3} after {:?}", d.stop);
        assert!(d.potential_holds());
        assert!(d.terms.iter().all(|t| t.coeff <= d.eta));
    }

    #[test]
    fn truncation_keeps_the_potential_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(325);
        let q = QuadraticPhase::random(8, &mut rng);
        let g = q.truth_table().unwrap();
        let config = DecomposeConfig {
            eta: 0.3,
            ..DecomposeConfig::practical(0.3, 1.2, 0.05)
        };
        let d = decompose(&g.oracle(), &config, &Always(q.negated()), &mut rng).unwrap();
        assert_eq!((d.k(), d.stop), (config.k_max(), StopReason::StepLimit));
        assert_eq!(d.contract_misses(), d.k());
        assert!(d.potential_holds());
        let expected_e = 1.0 + 0.3 * d.k() as f64 - 1.2;
        assert!((d.e_l1 - expected_e).abs() < 1e-9, "{}", d.e_l1);
        assert!(max_reconstruction_gap(&g, &d) <= 1e-9);
    }

    #[test]
    fn sampled_path_without_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(326);
        let q = QuadraticPhase::random(12, &mut rng);
        let g = q.oracle();
        let config = DecomposeConfig {
            exact_max_n: 0,
            norm_sample_cap: 1 << 16,
            ..DecomposeConfig::practical(0.5, 2.0, 0.05)
        };
        let d = decompose(&g, &config, &Always(q.clone()), &mut rng).unwrap();
        assert!(!d.residual_u3_exact && d.final_potential.is_none());
        assert_eq!(d.k(), 2);
        assert_eq!(d.stop, StopReason::NormBelow);
        assert_eq!(d.e_l1, 0.0);
        assert!(d
            .steps
            .iter()
            .all(|s| (s.correlation - (1.0 - 0.5 * s.t as f64)).abs() < 0.2));
    }

    #[test]
    fn measured_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(327);
        let q = QuadraticPhase::random(8, &mut rng);
        let g = TruthTable::from_fn(8, |x| 0.8 * q.value(x)).unwrap();
        let config = DecomposeConfig {
            coefficient: StepCoefficient::Measured,
            ..DecomposeConfig::practical(0.3, 2.0, 0.05)
        };
        let d = decompose(&g.oracle(), &config, &Always(q), &mut rng).unwrap();
        assert_eq!(d.k(), 1);
        assert!((d.terms[0].coeff - 0.8).abs() < 1e-12);
        assert!(d.residual_u3 < 1e-9);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = FnOracle::new(4, 1.0, |_| 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(328);
        assert!(decompose(
            &g,
            &DecomposeConfig::practical(0.3, 1.0, 0.05),
            &Never,
            &mut rng
        )
        .is_err());
        assert!(decompose(
            &g,
            &DecomposeConfig::practical(1.3, 2.0, 0.05),
            &Never,
            &mut rng
        )
        .is_err());
        let big = FnOracle::new(4, 2.0, |_| 0.0);
        assert!(decompose(
            &big,
            &DecomposeConfig::practical(0.3, 2.0, 0.05),
            &Never,
            &mut rng
        )
        .is_err());
    }

    #[test]
    fn full_phases_on_noisy_codeword() {
        let mut rng = ChaCha8Rng::seed_from_u64(329);
        let q = QuadraticPhase::random(10, &mut rng);
        let g = make_noisy_codeword(&q, 0.25, &mut rng).unwrap();
        let config = DecomposeConfig {
            max_steps: Some(1),
            ..DecomposeConfig::practical(0.25, 1.05, 0.05)
        };
        let d = decompose_full_with(&g.oracle(), &config, FinderMode::Phases, &mut rng).unwrap();
        let lead = d.terms.first().expect("a leading term");
        let c =
            correlation_exact(&g, &lead.term.as_phase().unwrap().truth_table().unwrap()).unwrap();
        assert!(c >= 0.1, "{c}");
    }

    #[test]
    fn full_averages_on_planted_average() {
        let mut rng = ChaCha8Rng::seed_from_u64(330);
        let q = QuadraticAverage::random(10, 2, &mut rng).unwrap();
        let g = make_noisy_average(&q, 0.2, &mut rng).unwrap();
        let config = DecomposeConfig {
            max_steps: Some(1),
            ..DecomposeConfig::practical(0.3, 1.05, 0.05)
        };
        let d = decompose_full_with(&g.oracle(), &config, FinderMode::Averages, &mut rng).unwrap();
        let lead = d.terms.first().expect("a leading term");
        let c =
            correlation_exact(&g, &lead.term.as_average().unwrap().truth_table().unwrap()).unwrap();
        assert!(c >= 0.15, "{c}");
    }
}
