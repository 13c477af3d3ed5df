use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use super::args::{
    Cli, Command, DecomposeArgs, FindArgs, FindAvgArgs, FinderKind, Format, GenArgs, GlArgs,
    GlobalArgs, InputArgs, Mode, Plant, ProfileName, U3Args, WhtArgs,
};
use super::{bench, verify, Outcome};
use crate::bsg::{PracticalProfile, Profile};
use crate::decompose::{
    decompose, AverageFinder, DecomposeConfig, PhaseFinder, Rounded, StepCoefficient, TermFinder,
};
use crate::error::{check_dim, invalid, Result};
use crate::fourier::{estimate_u3, exact_u_norm, goldreich_levin, wht};
use crate::functions::io::{
    read_table, spectrum_dump, write_table, AverageJson, PhaseJson, TableFormat,
};
use crate::functions::{
    make_noisy_average, make_noisy_codeword, make_noisy_codeword_exact, random_boolean, Oracle,
    QuadraticAverage, QuadraticPhase, TruthTable,
};
use crate::model_refine::{find_quadratic_average_with, FindAverageConfig};
use crate::quad_recovery::{find_quadratic_with, FindQuadraticConfig};
use crate::rng::{stream, StreamRng};

pub(super) fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let g = &cli.global;
    if g.profile == ProfileName::Paper && g.overrides.any() {
        return Err(invalid(
            "profile overrides apply to the practical profile only",
        ));
    }
    match &cli.command {
        Command::Gen(a) => gen(g, a, out),
        Command::Wht(a) => wht_cmd(a, out),
        Command::U3(a) => u3(g, a, out),
        Command::Gl(a) => gl(g, a, out),
        Command::FindQuad(a) => find_quad(g, a, out),
        Command::FindAvg(a) => find_avg(g, a, out),
        Command::Decompose(a) => decompose_cmd(g, a, out),
        Command::Verify(a) => verify::run(g, a, out),
        Command::Bench(a) => bench::run(g, a, out),
    }
}

fn rng_for(g: &GlobalArgs, name: &str) -> StreamRng {
    stream(g.seed, name, 0)
}

pub(super) fn emit(out: &mut dyn Write, value: &Value, path: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    out.write_all(text.as_bytes())?;
    if let Some(p) = path {
        fs::write(p, &text)?;
    }
    Ok(())
}

fn load(io: &InputArgs) -> Result<TruthTable> {
    let t = read_table(&io.input)?;
    if let Some(n) = io.n {
        check_dim(n, t.n())?;
    }
    Ok(t)
}

fn merge(base: Value, extra: Value) -> Value {
    let mut map: Map<String, Value> = match base {
        Value::Object(m) => m,
        other => Map::from_iter([("value".to_string(), other)]),
    };
    if let Value::Object(e) = extra {
        map.extend(e);
    }
    Value::Object(map)
}

fn profile(g: &GlobalArgs, delta: f64) -> Profile {
    match g.profile {
        ProfileName::Paper => Profile::Paper { delta },
        ProfileName::Practical => {
            let o = &g.overrides;
            let mut p = PracticalProfile::default();
            if let Some(v) = o.rho {
                p.rho = v;
            }
            if let Some(v) = o.phi_gamma {
                p.phi_gamma = v;
                p.phi_min_coeff = v;
            }
            if let Some(v) = o.t_edge {
                p.t_edge = v;
            }
            if let Some(v) = o.bsg_r {
                p.r = v;
            }
            if let Some(v) = o.bsg_s {
                p.s = v;
            }
            if let Some(v) = o.gl_samples {
                p.gl_bucket_samples = v;
                p.gl_coeff_samples = v;
            }
            Profile::Practical(p)
        }
    }
}

fn gen(g: &GlobalArgs, a: &GenArgs, out: &mut dyn Write) -> Result<Outcome> {
    let mut rng = rng_for(g, "gen");
    let n = a.n;
    if n == 0 {
        return Err(invalid("--n must be at least 1"));
    }
    let (table, summary) = match a.plant {
        Plant::Quad => {
            let q = QuadraticPhase::random(n, &mut rng);
            let t = match a.epsilon {
                None => q.truth_table()?,
                Some(e) if a.exact_noise => make_noisy_codeword_exact(&q, e, &mut rng)?,
                Some(e) => make_noisy_codeword(&q, e, &mut rng)?,
            };
            (
                t,
                json!({ "plant": "quad", "n": n, "epsilon": a.epsilon, "phase": PhaseJson::from(&q) }),
            )
        }
        Plant::Average => {
            if !(0.0..=1.0).contains(&a.flip) {
                return Err(invalid(format!(
                    "--flip must lie in [0, 1], got {}",
                    a.flip
                )));
            }
            let q = QuadraticAverage::random(n, a.codim, &mut rng)?;
            let t = make_noisy_average(&q, a.flip, &mut rng)?;
            (
                t,
                json!({ "plant": "average", "n": n, "flip": a.flip, "average": AverageJson::from(&q) }),
            )
        }
        Plant::Noise => (
            random_boolean(n, &mut rng)?,
            json!({ "plant": "noise", "n": n }),
        ),
    };
    let format = match a.format {
        Format::Text => TableFormat::Text,
        Format::Binary => TableFormat::Binary,
    };
    write_table(&a.out, &table, format)?;
    emit(out, &summary, None)?;
    Ok(Outcome::Success)
}

fn wht_cmd(a: &WhtArgs, out: &mut dyn Write) -> Result<Outcome> {
    let t = load(&a.io)?;
    let dump = spectrum_dump(t.n(), wht(&t)?.coeffs(), a.min_abs);
    out.write_all(dump.as_bytes())?;
    if let Some(p) = &a.io.out {
        fs::write(p, &dump)?;
    }
    Ok(Outcome::Success)
}

fn u3(g: &GlobalArgs, a: &U3Args, out: &mut dyn Write) -> Result<Outcome> {
    let t = load(&a.io)?;
    let value = if a.exact {
        json!({ "n": t.n(), "exact": true, "u3": exact_u_norm(&t, 3)? })
    } else {
        let e = estimate_u3(&t.oracle(), a.gamma, a.delta, &mut rng_for(g, "u3"))?;
        json!({ "n": t.n(), "exact": false, "u3": e.value, "samples": e.samples, "queries": e.queries })
    };
    emit(out, &value, a.io.out.as_deref())?;
    Ok(Outcome::Success)
}

fn gl(g: &GlobalArgs, a: &GlArgs, out: &mut dyn Write) -> Result<Outcome> {
    let t = load(&a.io)?;
    let o = t.oracle();
    let list = goldreich_levin(&o, a.gamma, a.delta, &mut rng_for(g, "gl"))?;
    let terms: Vec<Value> = list
        .iter()
        .map(|l| json!({ "alpha": l.alpha.to_hex(), "coeff": l.coeff }))
        .collect();
    let value = json!({ "n": t.n(), "gamma": a.gamma, "terms": terms, "queries": o.query_count() });
    emit(out, &value, a.io.out.as_deref())?;
    Ok(Outcome::Success)
}

fn quad_config(g: &GlobalArgs, a: &FindArgs) -> FindQuadraticConfig {
    let mut c = match g.profile {
        ProfileName::Practical => FindQuadraticConfig {
            profile: profile(g, a.delta),
            ..FindQuadraticConfig::practical(a.epsilon, a.delta)
        },
        ProfileName::Paper => FindQuadraticConfig::paper(a.epsilon, a.delta, a.c_exp),
    };
    if let Some(k) = a.attempts {
        c.attempts = k;
    }
    c.threads = g.threads.max(1);
    c.skip_gate = a.skip_gate;
    c
}

fn avg_config(g: &GlobalArgs, a: &FindAvgArgs, n: usize) -> FindAverageConfig {
    let f = &a.find;
    let mut c = match g.profile {
        ProfileName::Practical => FindAverageConfig {
            profile: profile(g, f.delta),
            ..FindAverageConfig::practical(n, f.epsilon, f.delta)
        },
        ProfileName::Paper => FindAverageConfig::paper(n, f.epsilon, f.delta, f.c_exp),
    };
    if let Some(theta) = g.overrides.theta {
        c.local.theta = theta;
    }
    if let Some(k) = f.attempts {
        c.attempts = k;
    }
    if let Some(m) = a.max_complexity {
        c.max_complexity = m;
    }
    c.threads = g.threads.max(1);
    c.skip_gate = f.skip_gate;
    c
}

fn bottom(attempts: u64, queries: u64, u3: f64, gate: bool) -> Value {
    json!({
        "result": "bottom",
        "gate_passed": gate,
        "u3_estimate": if u3.is_finite() { json!(u3) } else { Value::Null },
        "attempts": attempts,
        "queries": queries,
    })
}

fn find_quad(g: &GlobalArgs, a: &FindArgs, out: &mut dyn Write) -> Result<Outcome> {
    let t = load(&a.io)?;
    let config = quad_config(g, a);
    let r = find_quadratic_with(&t.oracle(), &config, None, &mut rng_for(g, "find-quad"))?;
    let (value, outcome) = match &r.phase {
        Some(q) => (
            merge(
                serde_json::to_value(PhaseJson::from(q))?,
                json!({ "correlation_estimate": r.correlation_estimate, "attempts": r.attempts, "queries": r.queries }),
            ),
            Outcome::Success,
        ),
        None => (
            bottom(r.attempts, r.queries, r.u3_estimate, r.gate_passed),
            Outcome::Negative,
        ),
    };
    emit(out, &value, a.io.out.as_deref())?;
    Ok(outcome)
}

fn find_avg(g: &GlobalArgs, a: &FindAvgArgs, out: &mut dyn Write) -> Result<Outcome> {
    let t = load(&a.find.io)?;
    let config = avg_config(g, a, t.n());
    let r = find_quadratic_average_with(&t.oracle(), &config, None, &mut rng_for(g, "find-avg"))?;
    let (value, outcome) = match &r.average {
        Some(q) => (
            merge(
                serde_json::to_value(AverageJson::from(q))?,
                json!({
                    "complexity": q.complexity(),
                    "correlation_estimate": r.correlation_estimate,
                    "attempts": r.attempts,
                    "queries": r.queries,
                }),
            ),
            Outcome::Success,
        ),
        None => (
            bottom(r.attempts, r.queries, r.u3_estimate, r.gate_passed),
            Outcome::Negative,
        ),
    };
    emit(out, &value, a.find.io.out.as_deref())?;
    Ok(outcome)
}

fn decompose_cmd(g: &GlobalArgs, a: &DecomposeArgs, out: &mut dyn Write) -> Result<Outcome> {
    let t = load(&a.io)?;
    let n = t.n();
    let mut config = DecomposeConfig::practical(a.epsilon, a.bound, a.delta);
    if let Some(eta) = a.eta {
        config.eta = eta;
    }
    if a.measured {
        config.coefficient = StepCoefficient::Measured;
    }
    config.max_steps = a.max_steps;
    let find = FindArgs {
        io: InputArgs {
            input: a.io.input.clone(),
            n: None,
            out: None,
        },
        epsilon: a.epsilon,
        delta: a.delta,
        attempts: None,
        c_exp: 1.0,
        skip_gate: true,
    };
    let phases = PhaseFinder {
        config: quad_config(g, &find),
    };
    let averages = AverageFinder {
        config: avg_config(
            g,
            &FindAvgArgs {
                find,
                max_complexity: None,
            },
            n,
        ),
    };
    let finder: Box<dyn TermFinder> = match (a.mode, a.finder) {
        (Mode::Phases, FinderKind::Direct) => Box::new(phases),
        (Mode::Phases, FinderKind::Rounded) => Box::new(Rounded {
            inner: phases,
            bound: a.bound,
        }),
        (Mode::Averages, FinderKind::Direct) => Box::new(averages),
        (Mode::Averages, FinderKind::Rounded) => Box::new(Rounded {
            inner: averages,
            bound: a.bound,
        }),
    };
    let d = decompose(
        &t.oracle(),
        &config,
        finder.as_ref(),
        &mut rng_for(g, "decompose"),
    )?;
    emit(out, &d.to_json()?, a.io.out.as_deref())?;
    Ok(Outcome::Success)
}
