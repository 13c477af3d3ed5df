use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::f2::PointF2;

/// Query access to a bounded function `f: F_2^n -> [-B, B]`.
///
/// Implementations are deterministic (repeated queries at one point agree) and
/// count every call to [`Oracle::query`] exactly once. Boolean oracles return
/// `±1.0`.
pub trait Oracle: Send + Sync {
    fn n(&self) -> usize;

    /// The `ℓ∞` bound `B`.
    fn bound(&self) -> f64 {
        1.0
    }

    fn query(&self, x: &PointF2) -> f64;

    fn query_count(&self) -> u64;
}

impl<T: Oracle + ?Sized> Oracle for &T {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn bound(&self) -> f64 {
        (**self).bound()
    }
    fn query(&self, x: &PointF2) -> f64 {
        (**self).query(x)
    }
    fn query_count(&self) -> u64 {
        (**self).query_count()
    }
}

impl<T: Oracle + ?Sized> Oracle for Arc<T> {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn bound(&self) -> f64 {
        (**self).bound()
    }
    fn query(&self, x: &PointF2) -> f64 {
        (**self).query(x)
    }
    fn query_count(&self) -> u64 {
        (**self).query_count()
    }
}

/// A relaxed atomic counter.
#[derive(Debug, Default)]
pub struct QueryCounter(AtomicU64);

impl QueryCounter {
    #[inline]
    pub fn bump(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    #[inline]
    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

/// An oracle backed by a closure.
pub struct FnOracle<F> {
    n: usize,
    bound: f64,
    eval: F,
    counter: QueryCounter,
}

impl<F: Fn(&PointF2) -> f64 + Send + Sync> FnOracle<F> {
    pub fn new(n: usize, bound: f64, eval: F) -> Self {
        Self {
            n,
            bound,
            eval,
            counter: QueryCounter::default(),
        }
    }
}

impl<F: Fn(&PointF2) -> f64 + Send + Sync> Oracle for FnOracle<F> {
    fn n(&self) -> usize {
        self.n
    }
    fn bound(&self) -> f64 {
        self.bound
    }
    #[inline]
    fn query(&self, x: &PointF2) -> f64 {
        self.counter.bump();
        (self.eval)(x)
    }
    fn query_count(&self) -> u64 {
        self.counter.get()
    }
}

/// The derivative `f_x(y) = f(y) f(x + y)`. Each evaluation makes two base queries.
pub struct Derivative<'a> {
    base: &'a dyn Oracle,
    shift: PointF2,
    counter: QueryCounter,
}

impl<'a> Derivative<'a> {
    pub fn new(base: &'a dyn Oracle, shift: PointF2) -> Self {
        assert_eq!(
            base.n(),
            shift.n(),
            "derivative shift has the wrong dimension"
        );
        Self {
            base,
            shift,
            counter: QueryCounter::default(),
        }
    }

    #[must_use]
    pub fn shift(&self) -> &PointF2 {
        &self.shift
    }
}

impl Oracle for Derivative<'_> {
    fn n(&self) -> usize {
        self.base.n()
    }
    fn bound(&self) -> f64 {
        self.base.bound() * self.base.bound()
    }
    #[inline]
    fn query(&self, y: &PointF2) -> f64 {
        self.counter.bump();
        let a = self.base.query(y);
        a * self.base.query(&(y ^ &self.shift))
    }
    fn query_count(&self) -> u64 {
        self.counter.get()
    }
}

/// `x ↦ f(x) · s(x)` for a fixed `±1` multiplier `s`; one base query per call.
pub struct Twisted<'a, S> {
    base: &'a dyn Oracle,
    sign: S,
    counter: QueryCounter,
}

impl<'a, S: Fn(&PointF2) -> bool + Send + Sync> Twisted<'a, S> {
    /// `sign(x) = true` multiplies by `-1`.
    pub fn new(base: &'a dyn Oracle, sign: S) -> Self {
        Self {
            base,
            sign,
            counter: QueryCounter::default(),
        }
    }
}

impl<S: Fn(&PointF2) -> bool + Send + Sync> Oracle for Twisted<'_, S> {
    fn n(&self) -> usize {
        self.base.n()
    }
    fn bound(&self) -> f64 {
        self.base.bound()
    }
    #[inline]
    fn query(&self, x: &PointF2) -> f64 {
        self.counter.bump();
        let v = self.base.query(x);
        if (self.sign)(x) {
            -v
        } else {
            v
        }
    }
    fn query_count(&self) -> u64 {
        self.counter.get()
    }
}

/// `x ↦ scale · f(x)`.
pub struct Scaled<'a> {
    base: &'a dyn Oracle,
    scale: f64,
    counter: QueryCounter,
}

impl<'a> Scaled<'a> {
    pub fn new(base: &'a dyn Oracle, scale: f64) -> Self {
        Self {
            base,
            scale,
            counter: QueryCounter::default(),
        }
    }
}

impl Oracle for Scaled<'_> {
    fn n(&self) -> usize {
        self.base.n()
    }
    fn bound(&self) -> f64 {
        self.base.bound() * self.scale.abs()
    }
    fn query(&self, x: &PointF2) -> f64 {
        self.counter.bump();
        self.scale * self.base.query(x)
    }
    fn query_count(&self) -> u64 {
        self.counter.get()
    }
}
