//! Synthetic instances.

use rand::seq::index::sample;
use rand::Rng;

use super::phase::{QuadraticAverage, QuadraticPhase};
use super::table::TruthTable;
use crate::error::{invalid, Result};

/// A uniformly random `±1` table.
pub fn random_boolean<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TruthTable> {
    super::table::check_enum_n("truth table", n, crate::f2::MAX_ENUM_N)?;
    let vals: Vec<f64> = (0..1u64 << n)
        .map(|_| if rng.random::<bool>() { -1.0 } else { 1.0 })
        .collect();
    TruthTable::new(n, vals)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 0.5 {
        Ok(())
    } else {
        Err(invalid(format!(
            "epsilon must lie in (0, 1/2], got {epsilon}"
        )))
    }
}

/// Flips each entry of a Boolean table independently with probability `p`.
pub fn flip_iid<R: Rng + ?Sized>(table: &TruthTable, p: f64, rng: &mut R) -> Result<TruthTable> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("flip probability must lie in [0, 1]"));
    }
    let vals = table
        .values()
        .iter()
        .map(|&v| if rng.random_bool(p) { -v } else { v })
        .collect();
    TruthTable::new(table.n(), vals)
}

/// Flips a uniformly random subset of exactly `count` entries.
pub fn flip_exact<R: Rng + ?Sized>(
    table: &TruthTable,
    count: usize,
    rng: &mut R,
) -> Result<TruthTable> {
    if count > table.len() {
        return Err(invalid("more flips than entries"));
    }
    let mut vals = table.values().to_vec();
    for i in sample(rng, vals.len(), count) {
        vals[i] = -vals[i];
    }
    TruthTable::new(table.n(), vals)
}

/// `(-1)^{q}` with each entry flipped independently with probability `1/2 - ε`.
pub fn make_noisy_codeword<R: Rng + ?Sized>(
    q: &QuadraticPhase,
    epsilon: f64,
    rng: &mut R,
) -> Result<TruthTable> {
    check_epsilon(epsilon)?;
    flip_iid(&q.truth_table()?, 0.5 - epsilon, rng)
}

/// `(-1)^{q}` with exactly `round((1/2 - ε) 2^n)` flipped entries.
pub fn make_noisy_codeword_exact<R: Rng + ?Sized>(
    q: &QuadraticPhase,
    epsilon: f64,
    rng: &mut R,
) -> Result<TruthTable> {
    check_epsilon(epsilon)?;
    let t = q.truth_table()?;
    let count = ((0.5 - epsilon) * t.len() as f64).round() as usize;
    flip_exact(&t, count, rng)
}

/// The table of a quadratic average with every entry flipped independently
/// with probability `flip`.
pub fn make_noisy_average<R: Rng + ?Sized>(
    q: &QuadraticAverage,
    flip: f64,
    rng: &mut R,
) -> Result<TruthTable> {
    flip_iid(&q.truth_table()?, flip, rng)
}
