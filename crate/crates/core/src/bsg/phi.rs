use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use super::diagnostics::{record, Diagnostics};
use super::params::{PhiConfig, PhiRule};
use crate::f2::PointF2;
use crate::fourier::{goldreich_levin_with, LinearTermList};
use crate::functions::{Derivative, Oracle};
use crate::rng::{derive_seed, point_seed, StreamRng};

type PlantedFn<'a> = Box<dyn Fn(&PointF2) -> PointF2 + Send + Sync + 'a>;

enum Source<'a> {
    Decode(PhiConfig),
    Planted(PlantedFn<'a>),
}

/// The random choice function `φ` and the vertex weights `|f̂_x(φ(x))|`.
///
/// `φ(x)` is drawn from the Goldreich-Levin list of the derivative `f_x` using
/// a stream keyed by `(seed, x)`, so the drawn function does not depend on
/// query order or on the thread that asks first. Both `φ` and the weight
/// estimates are memoized; concurrent first queries of the same point insert
/// once and every caller sees the stored value.
pub struct PhiSampler<'a> {
    f: &'a dyn Oracle,
    source: Source<'a>,
    t_edge: u64,
    edge_delta: f64,
    seed: u64,
    phi: RwLock<HashMap<PointF2, PointF2>>,
    weight: RwLock<HashMap<PointF2, f64>>,
    decodes: AtomicU64,
    diag: Option<&'a Diagnostics>,
}

impl<'a> PhiSampler<'a> {
    #[must_use]
    pub fn new(f: &'a dyn Oracle, config: PhiConfig, seed: u64) -> Self {
        let (t_edge, edge_delta) = (config.t_edge, config.edge_delta);
        let mut s = Self::build(f, Source::Decode(config), t_edge, seed);
        s.edge_delta = edge_delta;
        s
    }

    /// A sampler whose `φ` is the given map; the weights are still estimated from `f`.
    #[must_use]
    pub fn planted(
        f: &'a dyn Oracle,
        phi: impl Fn(&PointF2) -> PointF2 + Send + Sync + 'a,
        t_edge: u64,
        seed: u64,
    ) -> Self {
        Self::build(f, Source::Planted(Box::new(phi)), t_edge, seed)
    }

    fn build(f: &'a dyn Oracle, source: Source<'a>, t_edge: u64, seed: u64) -> Self {
        Self {
            f,
            source,
            t_edge: t_edge.max(1),
            edge_delta: 0.0,
            seed,
            phi: RwLock::new(HashMap::new()),
            weight: RwLock::new(HashMap::new()),
            decodes: AtomicU64::new(0),
            diag: None,
        }
    }

    #[must_use]
    pub fn with_diagnostics(mut self, diag: &'a Diagnostics) -> Self {
        self.diag = Some(diag);
        self
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.f.n()
    }

    #[must_use]
    pub fn oracle(&self) -> &'a dyn Oracle {
        self.f
    }

    #[must_use]
    pub fn t_edge(&self) -> u64 {
        self.t_edge
    }

    /// Number of list-decoding runs so far.
    #[must_use]
    pub fn decodes(&self) -> u64 {
        self.decodes.load(Ordering::Relaxed)
    }

    /// Number of points whose `φ` is fixed.
    #[must_use]
    pub fn memo_len(&self) -> usize {
        self.phi.read().expect("phi memo").len()
    }

    /// `φ(x)`.
    pub fn sample_phi(&self, x: &PointF2) -> PointF2 {
        if let Some(v) = self.phi.read().expect("phi memo").get(x) {
            return v.clone();
        }
        let fresh = match &self.source {
            Source::Planted(map) => map(x),
            Source::Decode(config) => self.decode(config, x),
        };
        self.phi
            .write()
            .expect("phi memo")
            .entry(x.clone())
            .or_insert(fresh)
            .clone()
    }

    fn decode(&self, config: &PhiConfig, x: &PointF2) -> PointF2 {
        let n = self.n();
        let mut rng = StreamRng::seed_from_u64(point_seed(derive_seed(self.seed, "phi", 0), x));
        let d = Derivative::new(self.f, x.clone());
        self.decodes.fetch_add(1, Ordering::Relaxed);
        record(
            self.diag,
            "gl",
            config.gl.bucket_samples.unwrap_or(0),
            config.gl.delta,
        );
        let list = goldreich_levin_with(&d, &config.gl, &mut rng)
            .unwrap_or_else(|_| LinearTermList::new(n, Vec::new()));
        draw(&list, config.rule, &mut rng)
    }

    /// Estimate of `|f̂_x(φ(x))|` from `t_edge` samples, fixed at first use.
    pub fn weight(&self, x: &PointF2) -> f64 {
        if let Some(&w) = self.weight.read().expect("weight memo").get(x) {
            return w;
        }
        let alpha = self.sample_phi(x);
        let n = self.n();
        let mut rng = StreamRng::seed_from_u64(point_seed(derive_seed(self.seed, "weight", 0), x));
        let mut acc = 0.0;
        for _ in 0..self.t_edge {
            let y = PointF2::random(n, &mut rng);
            let v = self.f.query(&y) * self.f.query(&(&y ^ x));
            acc += if alpha.dot(&y) { -v } else { v };
        }
        record(self.diag, "vertex_weight", self.t_edge, self.edge_delta);
        let w = (acc / self.t_edge as f64).abs();
        *self
            .weight
            .write()
            .expect("weight memo")
            .entry(x.clone())
            .or_insert(w)
    }

    /// Fixes `φ` and the weight on all given points, in parallel.
    pub fn prefetch(&self, xs: &[PointF2]) {
        xs.par_iter().for_each(|x| {
            self.weight(x);
        });
    }
}

fn draw<R: Rng + ?Sized>(list: &LinearTermList, rule: PhiRule, rng: &mut R) -> PointF2 {
    let n = list.n();
    let u: f64 = rng.random();
    match rule {
        PhiRule::Squares => {
            let total: f64 = list.iter().map(|t| t.coeff * t.coeff).sum();
            let scale = if total > 1.0 { 1.0 / total } else { 1.0 };
            let mut acc = 0.0;
            for t in list.iter() {
                acc += t.coeff * t.coeff * scale;
                if u < acc {
                    return t.alpha.clone();
                }
            }
            PointF2::random(n, rng)
        }
        PhiRule::Thresholded { min_coeff } => {
            let kept: Vec<_> = list.iter().filter(|t| t.coeff.abs() >= min_coeff).collect();
            let total: f64 = kept.iter().map(|t| t.coeff * t.coeff).sum();
            if kept.is_empty() || total <= 0.0 {
                return PointF2::random(n, rng);
            }
            let mut acc = 0.0;
            for t in &kept {
                acc += t.coeff * t.coeff / total;
                if u < acc {
                    return t.alpha.clone();
                }
            }
            kept[kept.len() - 1].alpha.clone()
        }
    }
}
