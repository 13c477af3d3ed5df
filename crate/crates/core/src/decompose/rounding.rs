use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{invalid, Result};
use crate::f2::PointF2;
use crate::functions::{Oracle, QueryCounter};
use crate::rng::{mix, point_seed};

/// A `±1` oracle with `Pr[f̃(x) = 1] = (1 + f(x)/B)/2`.
///
/// The coin at `x` is a keyed hash of `(seed, x)`, so repeated queries agree
/// without storing anything.
pub struct RoundedBooleanOracle<'a> {
    base: &'a dyn Oracle,
    bound: f64,
    seed: u64,
    violated: AtomicBool,
    counter: QueryCounter,
}

/// Rounds `f: F_2^n -> [-B, B]` to a consistent Boolean oracle.
pub fn boolean_round_oracle(
    f: &dyn Oracle,
    bound: f64,
    seed: u64,
) -> Result<RoundedBooleanOracle<'_>> {
    if !(bound.is_finite() && bound > 0.0) {
        return Err(invalid(format!(
            "rounding bound must be positive, got {bound}"
        )));
    }
    if f.bound() > bound * (1.0 + 1e-12) {
        return Err(invalid(format!(
            "oracle bound {} exceeds the rounding bound {bound}",
            f.bound()
        )));
    }
    Ok(RoundedBooleanOracle {
        base: f,
        bound,
        seed,
        violated: AtomicBool::new(false),
        counter: QueryCounter::default(),
    })
}

impl RoundedBooleanOracle<'_> {
    /// Whether some queried value had `|f(x)| > B`.
    #[must_use]
    pub fn violated(&self) -> bool {
        self.violated.load(Ordering::Relaxed)
    }

    #[must_use]
    pub fn seed(&self) -> u64 {
        self.seed
    }
}

fn unit_interval(key: u64) -> f64 {
    (mix(key) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl Oracle for RoundedBooleanOracle<'_> {
    fn n(&self) -> usize {
        self.base.n()
    }

    fn query(&self, x: &PointF2) -> f64 {
        self.counter.bump();
        let v = self.base.query(x);
        if v.abs() > self.bound * (1.0 + 1e-12) {
            self.violated.store(true, Ordering::Relaxed);
        }
        let p = (1.0 + v / self.bound) / 2.0;
        if unit_interval(point_seed(self.seed, x)) < p {
            1.0
        } else {
            -1.0
        }
    }

    fn query_count(&self) -> u64 {
        self.counter.get()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::FnOracle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn full_bound_rounds_to_one() {
        let f = FnOracle::new(8, 2.0, |_| 2.0);
        let r = boolean_round_oracle(&f, 2.0, 5).unwrap();
        assert!((0..256).all(|i| r.query(&PointF2::from_u64(8, i)) == 1.0));
        let g = FnOracle::new(8, 2.0, |_| -2.0);
        let r = boolean_round_oracle(&g, 2.0, 5).unwrap();
        assert!((0..256).all(|i| r.query(&PointF2::from_u64(8, i)) == -1.0));
    }

    #[test]
    fn zero_has_mean_near_zero() {
        let f = FnOracle::new(14, 1.0, |_| 0.0);
        let r = boolean_round_oracle(&f, 2.0, 11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(301);
        let mean: f64 = (0..4096)
            .map(|_| r.query(&PointF2::random(14, &mut rng)))
            .sum::<f64>()
            / 4096.0;
        assert!(mean.abs() <= 0.05, "{mean}");
    }

    #[test]
    fn repeated_queries_agree() {
        let f = FnOracle::new(12, 1.0, |x: &PointF2| if x.get(3) { 0.3 } else { -0.6 });
        let r = boolean_round_oracle(&f, 1.5, 3).unwrap();
        let x = PointF2::from_u64(12, 0xabc);
        let first = r.query(&x);
        assert!((0..100).all(|_| r.query(&x) == first));
        assert_eq!(r.query_count(), 101);
    }

    #[test]
    fn mean_tracks_the_scaled_value() {
        let f = FnOracle::new(16, 1.0, |_| 0.6);
        let r = boolean_round_oracle(&f, 2.0, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(302);
        let mean: f64 = (0..20000)
            .map(|_| r.query(&PointF2::random(16, &mut rng)))
            .sum::<f64>()
            / 20000.0;
        assert!((mean - 0.3).abs() <= 0.03, "{mean}");
    }

    #[test]
    fn out_of_range_values() {
        let f = FnOracle::new(4, 3.0, |_| 3.0);
        assert!(boolean_round_oracle(&f, 2.0, 0).is_err());
        let g = FnOracle::new(4, 1.0, |_| 3.0);
        let r = boolean_round_oracle(&g, 2.0, 0).unwrap();
        r.query(&PointF2::zero(4));
        assert!(r.violated());
    }
}
