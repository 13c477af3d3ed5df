use std::fs;
use std::io::Write;

use serde_json::Value;

use super::args::{GlobalArgs, VerifyArgs};
use super::Outcome;
use crate::bruteforce::{best_quadratic_correlation, u_norm_direct};
use crate::error::{invalid, Error, Result};
use crate::fourier::{estimate_u3, exact_u_norm, goldreich_levin, wht};
use crate::functions::io::{read_table, AverageJson, PhaseJson};
use crate::functions::{
    correlation_exact, make_noisy_codeword_exact, random_boolean, QuadraticAverage, QuadraticPhase,
    TruthTable,
};
use crate::quad_recovery::{find_quadratic_with, FindQuadraticConfig};
use crate::rng::stream;

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn naive_coeff(t: &TruthTable, alpha: usize) -> f64 {
    let s: f64 = t
        .values()
        .iter()
        .enumerate()
        .map(|(x, v)| {
            if (x & alpha).count_ones() % 2 == 1 {
                -v
            } else {
                *v
            }
        })
        .sum();
    s / t.len() as f64
}

fn self_checks(seed: u64) -> Result<Vec<Check>> {
    let mut rng = stream(seed, "verify", 0);
    let mut checks = Vec::new();

    let f = random_boolean(6, &mut rng)?;
    let spectrum = wht(&f)?;
    let err = (0..f.len())
        .map(|a| (spectrum.coeffs()[a] - naive_coeff(&f, a)).abs())
        .fold(0.0, f64::max);
    checks.push(Check {
        name: "wht-naive",
        pass: err < 1e-12,
        detail: format!("max error {err:.3e}"),
    });

    let f = random_boolean(4, &mut rng)?;
    let (a, b) = (exact_u_norm(&f, 3)?, u_norm_direct(&f, 3)?);
    checks.push(Check {
        name: "u3-direct",
        pass: (a - b).abs() < 1e-9,
        detail: format!("exact {a:.6} direct {b:.6}"),
    });

    let q = QuadraticPhase::random(10, &mut rng);
    let f = make_noisy_codeword_exact(&q, 0.3, &mut rng)?;
    let exact = exact_u_norm(&f, 3)?;
    let est = estimate_u3(&f.oracle(), 0.05, 0.05, &mut rng)?;
    checks.push(Check {
        name: "u3-estimate",
        pass: (est.value - exact).abs() <= 0.05,
        detail: format!("estimate {:.4} exact {exact:.4}", est.value),
    });

    let f = random_boolean(8, &mut rng)?;
    let spectrum = wht(&f)?;
    let (top, coeff) = spectrum.argmax_abs();
    let list = goldreich_levin(&f.oracle(), coeff.abs() * 0.9, 0.05, &mut rng)?;
    checks.push(Check {
        name: "gl-top-character",
        pass: list.get(&top).is_some(),
        detail: format!(
            "alpha {} coeff {coeff:.4}, {} listed",
            top.to_hex(),
            list.len()
        ),
    });

    let q = QuadraticPhase::random(6, &mut rng);
    let f = make_noisy_codeword_exact(&q, 0.45, &mut rng)?;
    let (_, best) = best_quadratic_correlation(&f)?;
    let config = FindQuadraticConfig::practical(0.5, 0.05);
    let report = find_quadratic_with(&f.oracle(), &config, None, &mut rng)?;
    let found = match &report.phase {
        Some(p) => correlation_exact(&f, &p.truth_table()?)?,
        None => 0.0,
    };
    checks.push(Check {
        name: "find-quad-vs-exhaustive",
        pass: found >= 0.5 * best,
        detail: format!("found {found:.4} best {best:.4}"),
    });
    Ok(checks)
}

fn result_table(path: &std::path::Path) -> Result<TruthTable> {
    let text = fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&text)?;
    if value.get("result").and_then(Value::as_str) == Some("bottom") {
        return Err(invalid("the result file holds bottom"));
    }
    if value.get("W_ortho").is_some() {
        let j: AverageJson = serde_json::from_value(value)?;
        QuadraticAverage::try_from(&j)?.truth_table()
    } else if value.get("M").is_some() {
        let j: PhaseJson = serde_json::from_value(value)?;
        QuadraticPhase::try_from(&j)?.truth_table()
    } else {
        Err(Error::Parse(
            "result JSON holds neither a phase nor an average".into(),
        ))
    }
}

pub(super) fn run(g: &GlobalArgs, a: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome> {
    let mut checks = self_checks(g.seed)?;
    match (&a.input, &a.result) {
        (Some(input), Some(result)) => {
            let f = read_table(input)?;
            let q = result_table(result)?;
            let c = correlation_exact(&f, &q)?;
            checks.push(Check {
                name: "result-correlation",
                pass: c >= a.min_correlation,
                detail: format!("exact {c:.6} threshold {}", a.min_correlation),
            });
        }
        (None, None) => {}
        _ => return Err(invalid("--in and --result go together")),
    }
    let mut all = true;
    for c in &checks {
        all &= c.pass;
        writeln!(
            out,
            "{} {} {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )?;
    }
    Ok(if all {
        Outcome::Success
    } else {
        Outcome::Negative
    })
}
