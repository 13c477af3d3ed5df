//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadgl::bruteforce::{
    best_quadratic_correlation, convolution_power, exhaustive_t_set, sumset, u_norm_direct, SetF2,
};
use quadgl::bsg::{bsg_test, choose_bsg_params, PhiSampler, Profile};
use quadgl::decompose::{decompose, DecomposeConfig, Decomposition, PhaseFinder};
use quadgl::f2::{PointF2, SubspaceF2};
use quadgl::fourier::{estimate_u3, exact_u_norm, goldreich_levin, wht};
use quadgl::functions::{
    correlation_exact, estimate_correlation, make_noisy_average, make_noisy_codeword_exact,
    random_boolean, Oracle, QuadraticAverage, QuadraticPhase, TruthTable,
};
use quadgl::model_refine::{
    bogolyubov, find_quadratic_average_with, BogolyubovParams, FindAverageConfig,
};
use quadgl::quad_recovery::find_quadratic;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn rng(criterion: u64, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(criterion << 32 | seed)
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn exact_transform() -> Verdict {
    let start = Instant::now();
    let n = 10;
    let mut unit = true;
    for a in 0..1u64 << n {
        let alpha = PointF2::from_u64(n, a);
        let t = TruthTable::from_fn(n, |x| if alpha.dot(x) { -1.0 } else { 1.0 }).unwrap();
        let s = wht(&t).unwrap();
        unit &= s
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, c)| *c == if i as u64 == a { 1.0 } else { 0.0 });
    }
    let mut worst: f64 = 0.0;
    for seed in 0..100 {
        let f = random_boolean(n, &mut rng(1, seed)).unwrap();
        worst = worst.max((wht(&f).unwrap().parseval_sum() - 1.0).abs());
    }
    let elapsed = secs(start.elapsed());
    verdict(
        unit && worst <= 1e-9 && elapsed < 5.0,
        format!("1024 unit spectra {unit}, Parseval gap {worst:.1e}, {elapsed:.2}s"),
    )
}

fn u_norms() -> Verdict {
    let start = Instant::now();
    let mut phase_ok = true;
    for seed in 0..10 {
        let q = QuadraticPhase::random(8, &mut rng(2, seed));
        phase_ok &= exact_u_norm(&q.truth_table().unwrap(), 3).unwrap() == 1.0;
    }
    let mut ordered = 0;
    for seed in 0..50 {
        let f = random_boolean(8, &mut rng(2, 100 + seed)).unwrap();
        if exact_u_norm(&f, 2).unwrap() <= exact_u_norm(&f, 3).unwrap() + 1e-12 {
            ordered += 1;
        }
    }
    let f = random_boolean(8, &mut rng(2, 200)).unwrap();
    let (inductive, direct) = (exact_u_norm(&f, 3).unwrap(), u_norm_direct(&f, 3).unwrap());
    let gap = (inductive - direct).abs();
    let elapsed = secs(start.elapsed());
    verdict(
        phase_ok && ordered == 50 && gap <= 1e-9 && elapsed < 60.0,
        format!(
            "phases exact {phase_ok}, U2<=U3 {ordered}/50, inductive vs direct gap {gap:.1e}, {elapsed:.1}s"
        ),
    )
}

fn estimators() -> Verdict {
    let (gamma, delta) = (0.05, 0.05);
    let (mut u3_hits, mut corr_hits) = (0, 0);
    for seed in 0..20 {
        let mut r = rng(3, seed);
        let q = QuadraticPhase::random(12, &mut r);
        let f = make_noisy_codeword_exact(&q, 0.2 + 0.01 * seed as f64, &mut r).unwrap();
        let exact = exact_u_norm(&f, 3).unwrap();
        let est = estimate_u3(&f.oracle(), gamma, delta, &mut r).unwrap();
        if (est.value - exact).abs() <= gamma {
            u3_hits += 1;
        }
        let qt = q.truth_table().unwrap();
        let exact = correlation_exact(&f, &qt).unwrap();
        let est = estimate_correlation(&f.oracle(), &qt.oracle(), gamma, delta, &mut r).unwrap();
        if (est.value - exact).abs() <= gamma {
            corr_hits += 1;
        }
    }
    verdict(
        u3_hits >= 19 && corr_hits >= 19,
        format!("U3 within gamma {u3_hits}/20, correlation within gamma {corr_hits}/20"),
    )
}

fn planted_spectrum(n: usize, r: &mut ChaCha8Rng) -> TruthTable {
    let k = r.random_range(1..=3);
    let chars: Vec<(PointF2, f64)> = (0..k)
        .map(|_| (PointF2::random(n, r), r.random_range(0.2..1.0)))
        .collect();
    TruthTable::from_fn(n, |x| {
        let s: f64 = chars
            .iter()
            .map(|(a, w)| if a.dot(x) { -w } else { *w })
            .sum();
        if s < 0.0 {
            -1.0
        } else {
            1.0
        }
    })
    .unwrap()
}

fn goldreich_levin_suite() -> Verdict {
    let (n, gamma) = (12, 0.2);
    let (mut complete, mut sound) = (0, 0);
    for seed in 0..50 {
        let mut r = rng(4, seed);
        let f = planted_spectrum(n, &mut r);
        let spectrum = wht(&f).unwrap();
        let list = goldreich_levin(&f.oracle(), gamma, 0.05, &mut r).unwrap();
        let found_all = spectrum
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.abs() >= gamma)
            .all(|(a, _)| list.get(&PointF2::from_u64(n, a as u64)).is_some());
        let accurate = list
            .iter()
            .all(|t| (t.coeff - spectrum.get(&t.alpha)).abs() <= gamma / 2.0);
        complete += usize::from(found_all);
        sound += usize::from(accurate);
    }
    verdict(
        complete == 50 && sound == 50,
        format!("complete {complete}/50, sound {sound}/50"),
    )
}

fn noiseless_recovery() -> Verdict {
    let mut line = Vec::new();
    let mut pass = true;
    for n in [8, 10, 12] {
        let mut exact = 0;
        for seed in 0..20 {
            let mut r = rng(5, (n as u64) << 8 | seed);
            let q = QuadraticPhase::random(n, &mut r);
            let t = q.truth_table().unwrap();
            let got =
                find_quadratic(&t.oracle(), 0.5, 0.05, &Profile::practical(), &mut r).unwrap();
            if let Some(p) = got {
                if correlation_exact(&t, &p.truth_table().unwrap()).unwrap() == 1.0 {
                    exact += 1;
                }
            }
        }
        pass &= exact == 20;
        line.push(format!("n={n} {exact}/20"));
    }
    verdict(pass, line.join(", "))
}

fn noisy_recovery() -> Verdict {
    let start = Instant::now();
    let eps = 0.25;
    let mut big = 0;
    for seed in 0..20 {
        let mut r = rng(6, seed);
        let q = QuadraticPhase::random(10, &mut r);
        let f = make_noisy_codeword_exact(&q, eps, &mut r).unwrap();
        if let Some(p) =
            find_quadratic(&f.oracle(), eps, 0.05, &Profile::practical(), &mut r).unwrap()
        {
            if correlation_exact(&f, &p.truth_table().unwrap()).unwrap() >= 0.1 {
                big += 1;
            }
        }
    }
    let mut small = 0;
    for seed in 0..20 {
        let mut r = rng(6, 100 + seed);
        let q = QuadraticPhase::random(6, &mut r);
        let f = make_noisy_codeword_exact(&q, eps, &mut r).unwrap();
        let (_, best) = best_quadratic_correlation(&f).unwrap();
        if let Some(p) =
            find_quadratic(&f.oracle(), eps, 0.05, &Profile::practical(), &mut r).unwrap()
        {
            if correlation_exact(&f, &p.truth_table().unwrap()).unwrap() >= 0.2 * best {
                small += 1;
            }
        }
    }
    let elapsed = secs(start.elapsed());
    verdict(
        big >= 16 && small >= 16 && elapsed < 600.0,
        format!("n=10 corr>=0.1 {big}/20, n=6 corr>=0.2*optimum {small}/20, {elapsed:.1}s"),
    )
}

fn bsg_sandwich() -> Verdict {
    let n = 10;
    let (mut agree, mut probes, mut accepted) = (0, 0, 0);
    for instance in 0..4u64 {
        let mut r = rng(7, instance);
        let q = QuadraticPhase::random(n, &mut r);
        let b = q.bilinear_form();
        let h = SubspaceF2::random_with_codim(n, 1 + instance as usize % 2, &mut r);
        let junk = r.random::<u64>();
        let phi_of = |x: &PointF2| {
            if h.contains(x) {
                b.mul_vec(x)
            } else {
                PointF2::random(n, &mut ChaCha8Rng::seed_from_u64(junk ^ x.as_u64()))
            }
        };
        let phi: Vec<PointF2> = (0..1u64 << n)
            .map(|x| phi_of(&PointF2::from_u64(n, x)))
            .collect();
        let f = make_noisy_codeword_exact(&q, 0.4, &mut r).unwrap();
        let o = f.oracle();
        let sampler = PhiSampler::planted(&o, phi_of, 256, r.random());
        let params = choose_bsg_params(0.5, &Profile::practical(), &mut r).unwrap();
        let u = h.random_member(&mut r);
        let inner = exhaustive_t_set(&f, &phi, &u, &params.inner_set()).unwrap();
        let outer = exhaustive_t_set(&f, &phi, &u, &params.outer_set()).unwrap();
        for _ in 0..50 {
            let v = PointF2::random(n, &mut r);
            let ok = if bsg_test(&sampler, &u, &v, &params, &mut r) {
                accepted += 1;
                inner.contains(&v)
            } else {
                !outer.contains(&v)
            };
            agree += usize::from(ok);
            probes += 1;
        }
    }
    verdict(
        agree as f64 >= 0.95 * probes as f64,
        format!("{agree}/{probes} probes consistent, {accepted} accepted"),
    )
}

fn bogolyubov_suite() -> Verdict {
    let n = 12;
    let mut good = 0;
    let mut smallest_margin = f64::INFINITY;
    for seed in 0..20 {
        let mut r = rng(8, seed);
        let a = SubspaceF2::random_with_codim(n, 3, &mut r);
        let set = SetF2::from_subspace(&a).unwrap();
        let h = set.indicator();
        let rho = set.density();
        let v = bogolyubov(&h.oracle(), &BogolyubovParams::practical(rho, 0.05), &mut r).unwrap();
        let conv = convolution_power(&h, 4).unwrap();
        let four_a = sumset(&set, 4).unwrap();
        let members = v.members().unwrap();
        let above = members.iter().all(|x| {
            let c = conv.at(x);
            smallest_margin = smallest_margin.min(c - rho.powi(4) / 2.0);
            c > rho.powi(4) / 2.0
        });
        let inside = members.iter().all(|x| four_a.contains(x));
        good += usize::from(above && inside);
    }
    verdict(
        good == 20,
        format!("{good}/20 seeds, smallest margin over rho^4/2 {smallest_margin:.3e}"),
    )
}

struct DecomposeCheck {
    reconstruction: f64,
    e_l1: f64,
    residual_u3: f64,
}

fn check_decomposition(g: &TruthTable, d: &Decomposition) -> DecomposeCheck {
    let o = g.oracle();
    let res = d.residual(&o);
    let len = g.len() as f64;
    let mut gap: f64 = 0.0;
    let mut e_l1 = 0.0;
    let mut f = Vec::with_capacity(g.len());
    for i in 0..g.len() as u64 {
        let x = PointF2::from_u64(g.n(), i);
        let fx = res.query(&x);
        let ex = res.error(&x);
        gap = gap.max((g.at(&x) - d.approximation(&x) - ex - fx).abs());
        e_l1 += ex.abs() / len;
        f.push(fx);
    }
    let f = TruthTable::new(g.n(), f).unwrap();
    DecomposeCheck {
        reconstruction: gap,
        e_l1,
        residual_u3: exact_u_norm(&f, 3).unwrap(),
    }
}

fn mixture(seed: u64) -> TruthTable {
    let mut r = rng(9, seed);
    let (q1, q2) = (
        QuadraticPhase::random(10, &mut r),
        QuadraticPhase::random(10, &mut r),
    );
    TruthTable::from_fn(10, |x| 0.5 * q1.value(x) + 0.5 * q2.value(x)).unwrap()
}

fn decomposition_contract(runs: &mut Vec<Decomposition>) -> Verdict {
    let (eps, bound) = (0.3, 2.0);
    let mut good = 0;
    let mut worst = (0.0f64, 0.0f64, 0.0f64, 0usize);
    let seeds = 5;
    for seed in 0..seeds {
        let g = mixture(seed);
        let config = DecomposeConfig::practical(eps, bound, 0.05);
        let d = decompose(
            &g.oracle(),
            &config,
            &PhaseFinder::practical(),
            &mut rng(9, 100 + seed),
        )
        .unwrap();
        let c = check_decomposition(&g, &d);
        let ok = c.reconstruction <= 1e-9
            && d.k() as f64 <= 1.0 / (d.eta * d.eta)
            && c.e_l1 <= 1.0 / (2.0 * bound)
            && c.residual_u3 <= eps;
        good += usize::from(ok);
        worst = (
            worst.0.max(c.reconstruction),
            worst.1.max(c.e_l1),
            worst.2.max(c.residual_u3),
            worst.3.max(d.k()),
        );
        runs.push(d);
    }
    verdict(
        good == seeds as usize,
        format!(
            "{good}/{seeds} runs; worst gap {:.1e}, k {}, |e|_1 {:.3}, residual U3 {:.3}",
            worst.0, worst.3, worst.1, worst.2
        ),
    )
}

fn average_recovery() -> Verdict {
    let n = 10;
    let mut good = 0;
    for seed in 0..20 {
        let mut r = rng(10, seed);
        let q = QuadraticAverage::random(n, 2, &mut r).unwrap();
        let f = make_noisy_average(&q, 0.2, &mut r).unwrap();
        let config = FindAverageConfig {
            max_complexity: 4,
            ..FindAverageConfig::practical(n, 0.3, 0.05)
        };
        let report = find_quadratic_average_with(&f.oracle(), &config, None, &mut r).unwrap();
        if let Some(avg) = report.average {
            let c = correlation_exact(&f, &avg.truth_table().unwrap()).unwrap();
            good += usize::from(c >= 0.15 && avg.complexity() <= 4);
        }
    }
    verdict(good >= 14, format!("{good}/20 seeds"))
}

fn potential_monotonicity(runs: &mut Vec<Decomposition>) -> Verdict {
    for seed in 0..3 {
        let mut r = rng(11, seed);
        let q = QuadraticPhase::random(10, &mut r);
        let g = make_noisy_codeword_exact(&q, 0.35, &mut r).unwrap();
        for bound in [1.5, 2.0] {
            let config = DecomposeConfig::practical(0.3, bound, 0.05);
            runs.push(decompose(&g.oracle(), &config, &PhaseFinder::practical(), &mut r).unwrap());
        }
    }
    let steps: usize = runs.iter().map(|d| d.steps.len()).sum();
    let checked: usize = runs
        .iter()
        .flat_map(|d| &d.steps)
        .filter(|s| s.potential.is_some())
        .count();
    let holding: usize = runs
        .iter()
        .flat_map(|d| &d.steps)
        .filter(|s| s.potential.map_or(false, |p| p.holds()))
        .count();
    let all = runs.iter().all(Decomposition::potential_holds);
    verdict(
        all && checked == steps && holding == steps && steps > 0,
        format!(
            "{} runs, {holding}/{steps} steps satisfy the inequality exactly",
            runs.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut runs = Vec::new();
    let criteria: Vec<(&str, Box<dyn FnOnce(&mut Vec<Decomposition>) -> Verdict>)> = vec![
        ("exact transform", Box::new(|_| exact_transform())),
        ("U-norms", Box::new(|_| u_norms())),
        ("estimator concentration", Box::new(|_| estimators())),
        (
            "Goldreich-Levin completeness and soundness",
            Box::new(|_| goldreich_levin_suite()),
        ),
        (
            "noiseless self-correction",
            Box::new(|_| noiseless_recovery()),
        ),
        ("noisy self-correction", Box::new(|_| noisy_recovery())),
        ("BSG sandwich", Box::new(|_| bsg_sandwich())),
        ("Bogolyubov", Box::new(|_| bogolyubov_suite())),
        ("decomposition contract", Box::new(decomposition_contract)),
        (
            "quadratic-average recovery",
            Box::new(|_| average_recovery()),
        ),
        ("potential monotonicity", Box::new(potential_monotonicity)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let v = run(&mut runs);
        failed += usize::from(!v.pass);
        println!(
            "{} [{:>2}] {name}: {} ({:.1}s)",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail,
            secs(start.elapsed())
        );
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
