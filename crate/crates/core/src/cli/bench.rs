use std::io::Write;
use std::time::Instant;

use super::args::{BenchArgs, GlobalArgs};
use super::Outcome;
use crate::error::{invalid, Result};
use crate::fourier::wht;
use crate::functions::{make_noisy_codeword_exact, QuadraticPhase};
use crate::quad_recovery::{find_quadratic_with, FindQuadraticConfig};
use crate::rng::stream;

pub(super) fn run(g: &GlobalArgs, a: &BenchArgs, out: &mut dyn Write) -> Result<Outcome> {
    if a.min_n == 0 || a.min_n > a.max_n || a.max_n > 20 {
        return Err(invalid("bench needs 1 <= --min-n <= --max-n <= 20"));
    }
    writeln!(
        out,
        "{:>3} {:>12} {:>14} {:>8} {:>12}",
        "n", "wht_ms", "find_quad_ms", "found", "queries"
    )?;
    for n in a.min_n..=a.max_n {
        let mut rng = stream(g.seed, "bench", n as u64);
        let q = QuadraticPhase::random(n, &mut rng);
        let f = make_noisy_codeword_exact(&q, 0.5, &mut rng)?;
        let start = Instant::now();
        wht(&f)?;
        let wht_ms = start.elapsed().as_secs_f64() * 1e3;
        let config = FindQuadraticConfig {
            threads: g.threads.max(1),
            ..FindQuadraticConfig::practical(0.25, 0.05)
        };
        let start = Instant::now();
        let r = find_quadratic_with(&f.oracle(), &config, None, &mut rng)?;
        let find_ms = start.elapsed().as_secs_f64() * 1e3;
        writeln!(
            out,
            "{n:>3} {wht_ms:>12.3} {find_ms:>14.1} {:>8} {:>12}",
            r.phase.is_some(),
            r.queries
        )?;
    }
    Ok(Outcome::Success)
}
