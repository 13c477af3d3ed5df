use crate::f2::PointF2;
use crate::functions::{Oracle, QuadraticAverage, QuadraticPhase, QueryCounter, TruthTable};

/// A quadratic object `q̄` with values in `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Phase(QuadraticPhase),
    Average(QuadraticAverage),
}

impl Term {
    #[must_use]
    pub fn n(&self) -> usize {
        match self {
            Term::Phase(q) => q.n(),
            Term::Average(q) => q.n(),
        }
    }

    #[must_use]
    pub fn value(&self, x: &PointF2) -> f64 {
        match self {
            Term::Phase(q) => q.value(x),
            Term::Average(q) => q.value(x),
        }
    }

    /// `<f, q̄>` over a table.
    #[must_use]
    pub fn correlation_with(&self, f: &TruthTable) -> f64 {
        let n = f.n();
        f.values()
            .iter()
            .enumerate()
            .map(|(i, v)| v * self.value(&PointF2::from_u64(n, i as u64)))
            .sum::<f64>()
            / f.len() as f64
    }

    #[must_use]
    pub fn as_phase(&self) -> Option<&QuadraticPhase> {
        match self {
            Term::Phase(q) => Some(q),
            Term::Average(_) => None,
        }
    }

    #[must_use]
    pub fn as_average(&self) -> Option<&QuadraticAverage> {
        match self {
            Term::Average(q) => Some(q),
            Term::Phase(_) => None,
        }
    }
}

/// `coeff · q̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionTerm {
    pub coeff: f64,
    pub term: Term,
}

/// `x ↦ clamp(g(x) - Σ c_i q̄_i(x), ±B)`, evaluated per query.
pub struct ResidualOracle<'a> {
    g: &'a dyn Oracle,
    terms: &'a [DecompositionTerm],
    bound: f64,
    counter: QueryCounter,
}

impl<'a> ResidualOracle<'a> {
    pub fn new(g: &'a dyn Oracle, terms: &'a [DecompositionTerm], bound: f64) -> Self {
        Self {
            g,
            terms,
            bound,
            counter: QueryCounter::default(),
        }
    }

    /// `h(x) = g(x) - Σ c_i q̄_i(x)`, untruncated. Costs one query to `g`.
    #[must_use]
    pub fn untruncated(&self, x: &PointF2) -> f64 {
        self.g.query(x)
            - self
                .terms
                .iter()
                .map(|t| t.coeff * t.term.value(x))
                .sum::<f64>()
    }

    /// `e(x) = h(x) - clamp(h(x))`.
    #[must_use]
    pub fn error(&self, x: &PointF2) -> f64 {
        let h = self.untruncated(x);
        h - h.clamp(-self.bound, self.bound)
    }
}

impl Oracle for ResidualOracle<'_> {
    fn n(&self) -> usize {
        self.g.n()
    }

    fn bound(&self) -> f64 {
        let reach = self.g.bound() + self.terms.iter().map(|t| t.coeff.abs()).sum::<f64>();
        reach.min(self.bound)
    }

    fn query(&self, x: &PointF2) -> f64 {
        self.counter.bump();
        self.untruncated(x).clamp(-self.bound, self.bound)
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
    fn truncates_and_tracks_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(311);
        let q = QuadraticPhase::random(6, &mut rng);
        let g = FnOracle::new(6, 1.0, |_| 1.0);
        let terms: Vec<_> = (0..4)
            .map(|_| DecompositionTerm {
                coeff: 0.5,
                term: Term::Phase(q.clone()),
            })
            .collect();
        let r = ResidualOracle::new(&g, &terms, 0.5);
        assert_eq!(r.bound(), 0.5);
        for i in 0..64 {
            let x = PointF2::from_u64(6, i);
            let h = 1.0 - 2.0 * q.value(&x);
            assert_eq!(r.untruncated(&x), h);
            assert_eq!(r.query(&x), h.clamp(-0.5, 0.5));
            assert_eq!(r.query(&x) + r.error(&x), h);
        }
    }

    #[test]
    fn empty_term_list_is_g() {
        let g = FnOracle::new(5, 1.0, |x: &PointF2| if x.get(0) { 0.25 } else { -1.0 });
        let r = ResidualOracle::new(&g, &[], 2.0);
        assert_eq!(r.bound(), 1.0);
        for i in 0..32 {
            let x = PointF2::from_u64(5, i);
            assert_eq!(r.query(&x), g.query(&x));
            assert_eq!(r.error(&x), 0.0);
        }
    }
}
