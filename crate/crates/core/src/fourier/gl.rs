//! Goldreich-Levin as a prefix-bucket tree.
//!
//! The bucket of a prefix `a ∈ F_2^k` (the low `k` coordinates of `α`) has
//! weight `Σ_{α_low = a} f̂(α)^2 = E f(x,z) f(y,z) (-1)^{<a, x+y>}` with
//! `x, y ∈ F_2^k` and `z` shared in the high coordinates. One batch of samples
//! per level serves every bucket of that level: the products are binned by
//! `x + y` and a transform of the histogram yields all `2^k` weights. Buckets
//! with estimated weight at least `γ^2/2` are refined by `bits_per_level`
//! further coordinates; at full length the surviving characters get a direct
//! coefficient estimate and those with `|ĉ| >= γ/2` are reported.
//!
//! Failure probability is split evenly over every estimate the tree can make,
//! so a single pass suffices.

use rand::Rng;

use super::wht::wht_in_place;
use crate::error::{invalid, Result};
use crate::f2::{solve_linear_system, MatrixF2, PointF2, SubspaceF2};
use crate::functions::{check_unit, hoeffding_samples, FnOracle, Oracle};

/// Largest prefix length binned through a dense histogram.
const HISTOGRAM_MAX_K: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct LinearTerm {
    pub alpha: PointF2,
    pub coeff: f64,
}

/// Characters with their estimated coefficients, largest `|coeff|` first.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearTermList {
    n: usize,
    terms: Vec<LinearTerm>,
}

impl LinearTermList {
    #[must_use]
    pub fn new(n: usize, mut terms: Vec<LinearTerm>) -> Self {
        terms.sort_by(|a, b| {
            b.coeff
                .abs()
                .total_cmp(&a.coeff.abs())
                .then_with(|| a.alpha.cmp(&b.alpha))
        });
        Self { n, terms }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn terms(&self) -> &[LinearTerm] {
        &self.terms
    }

    #[must_use]
    pub fn into_terms(self) -> Vec<LinearTerm> {
        self.terms
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LinearTerm> {
        self.terms.iter()
    }

    #[must_use]
    pub fn get(&self, alpha: &PointF2) -> Option<f64> {
        self.terms
            .iter()
            .find(|t| &t.alpha == alpha)
            .map(|t| t.coeff)
    }

    #[must_use]
    pub fn first(&self) -> Option<&LinearTerm> {
        self.terms.first()
    }
}

/// Knobs of the tree search.
#[derive(Clone, Debug, PartialEq)]
pub struct GlParams {
    pub gamma: f64,
    pub delta: f64,
    /// Coordinates fixed per level, in `1..=16`.
    pub bits_per_level: usize,
    /// Optional ceiling on the pair samples per level.
    pub bucket_samples: Option<u64>,
    /// Optional ceiling on the samples for leaf coefficients.
    pub coeff_samples: Option<u64>,
}

impl GlParams {
    #[must_use]
    pub fn new(gamma: f64, delta: f64) -> Self {
        Self {
            gamma,
            delta,
            bits_per_level: 4,
            bucket_samples: None,
            coeff_samples: None,
        }
    }

    #[must_use]
    pub fn with_sample_caps(mut self, bucket: u64, coeff: u64) -> Self {
        self.bucket_samples = Some(bucket);
        self.coeff_samples = Some(coeff);
        self
    }

    fn validate(&self) -> Result<()> {
        check_unit("gamma", self.gamma)?;
        check_unit("delta", self.delta)?;
        if !(1..=16).contains(&self.bits_per_level) {
            return Err(invalid("bits_per_level must lie in 1..=16"));
        }
        if self.bucket_samples == Some(0) || self.coeff_samples == Some(0) {
            return Err(invalid("sample caps must be positive"));
        }
        Ok(())
    }
}

/// All `α` with `|f̂(α)| >= γ` (w.p. `1 - δ`), each with an estimate accurate to `γ/8`.
pub fn goldreich_levin<R: Rng + ?Sized>(
    f: &dyn Oracle,
    gamma: f64,
    delta: f64,
    rng: &mut R,
) -> Result<LinearTermList> {
    goldreich_levin_with(f, &GlParams::new(gamma, delta), rng)
}

pub fn goldreich_levin_with<R: Rng + ?Sized>(
    f: &dyn Oracle,
    params: &GlParams,
    rng: &mut R,
) -> Result<LinearTermList> {
    params.validate()?;
    let n = f.n();
    if n == 0 {
        return Err(invalid("goldreich_levin needs n >= 1"));
    }
    let gamma = params.gamma;
    let b = f.bound();
    let step = params.bits_per_level;
    let max_keep = (4.0 * b * b / (gamma * gamma)).ceil() as usize;
    let ks: Vec<usize> = (1..).map(|i| i * step).take_while(|&k| k < n).collect();
    let estimates = (ks.len() + 1) as f64 * (max_keep << step) as f64;
    let delta_each = params.delta / estimates;
    let cap = |t: u64, c: Option<u64>| c.map_or(t, |c| t.min(c));
    let t_bucket = cap(
        hoeffding_samples(gamma * gamma / 4.0, delta_each, b * b),
        params.bucket_samples,
    );
    let t_coeff = cap(
        hoeffding_samples(gamma / 8.0, delta_each, b),
        params.coeff_samples,
    );

    let mut survivors = vec![PointF2::zero(n)];
    let mut prev = 0;
    for &k in &ks {
        let cands = children(&survivors, prev, k);
        let est = bucket_weights(f, k, &cands, t_bucket, rng);
        let mut kept: Vec<(PointF2, f64)> = cands
            .into_iter()
            .zip(est)
            .filter(|(_, w)| *w >= gamma * gamma / 2.0)
            .collect();
        kept.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        kept.truncate(max_keep);
        survivors = kept.into_iter().map(|(a, _)| a).collect();
        prev = k;
        if survivors.is_empty() {
            return Ok(LinearTermList::new(n, Vec::new()));
        }
    }
    let cands = children(&survivors, prev, n);
    let coeffs = leaf_coefficients(f, &cands, t_coeff, rng);
    let terms = cands
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| c.abs() >= gamma / 2.0)
        .map(|(alpha, coeff)| LinearTerm { alpha, coeff })
        .collect();
    Ok(LinearTermList::new(n, terms))
}

fn children(parents: &[PointF2], from: usize, to: usize) -> Vec<PointF2> {
    let mut out = Vec::with_capacity(parents.len() << (to - from));
    for p in parents {
        for ext in 0u64..1 << (to - from) {
            let mut c = p.clone();
            for i in 0..to - from {
                if ext >> i & 1 == 1 {
                    c.set(from + i, true);
                }
            }
            out.push(c);
        }
    }
    out
}

fn bucket_weights<R: Rng + ?Sized>(
    f: &dyn Oracle,
    k: usize,
    cands: &[PointF2],
    t: u64,
    rng: &mut R,
) -> Vec<f64> {
    let n = f.n();
    let mut pairs = Vec::new();
    let mut hist = if k <= HISTOGRAM_MAX_K {
        vec![0.0; 1 << k]
    } else {
        Vec::new()
    };
    for _ in 0..t {
        let p = PointF2::random(n, rng);
        let lo = p.low_part(k);
        let y = PointF2::random(n, rng).low_part(k);
        let q = &(&p ^ &lo) ^ &y;
        let v = f.query(&p) * f.query(&q);
        let d = &lo ^ &y;
        if k <= HISTOGRAM_MAX_K {
            hist[d.words()[0] as usize] += v;
        } else {
            pairs.push((d, v));
        }
    }
    let scale = 1.0 / t as f64;
    if k <= HISTOGRAM_MAX_K {
        wht_in_place(&mut hist);
        cands
            .iter()
            .map(|a| hist[a.words()[0] as usize] * scale)
            .collect()
    } else {
        cands
            .iter()
            .map(|a| signed_sum(&pairs, a) * scale)
            .collect()
    }
}

fn leaf_coefficients<R: Rng + ?Sized>(
    f: &dyn Oracle,
    cands: &[PointF2],
    t: u64,
    rng: &mut R,
) -> Vec<f64> {
    let n = f.n();
    let dense = n <= HISTOGRAM_MAX_K && (cands.len() as u64).saturating_mul(t) > (n as u64) << n;
    let mut hist = if dense { vec![0.0; 1 << n] } else { Vec::new() };
    let mut pairs = Vec::new();
    for _ in 0..t {
        let x = PointF2::random(n, rng);
        let v = f.query(&x);
        if dense {
            hist[x.index()] += v;
        } else {
            pairs.push((x, v));
        }
    }
    let scale = 1.0 / t as f64;
    if dense {
        wht_in_place(&mut hist);
        cands.iter().map(|a| hist[a.index()] * scale).collect()
    } else {
        cands
            .iter()
            .map(|a| signed_sum(&pairs, a) * scale)
            .collect()
    }
}

fn signed_sum(pairs: &[(PointF2, f64)], a: &PointF2) -> f64 {
    pairs
        .iter()
        .map(|(d, v)| if a.dot(d) { -v } else { *v })
        .sum()
}

/// Goldreich-Levin relative to a subspace `W`: characters of `W` carrying a
/// coefficient of at least `γ` in `⟨f, χ_α⟩_W = E_{x ∈ W} f(x) (-1)^{<α,x>}`.
pub fn goldreich_levin_subspace<R: Rng + ?Sized>(
    f: &dyn Oracle,
    w: &SubspaceF2,
    gamma: f64,
    delta: f64,
    rng: &mut R,
) -> Result<LinearTermList> {
    let shift = PointF2::zero(f.n());
    goldreich_levin_coset_with(f, w, &shift, &GlParams::new(gamma, delta), rng)
}

/// The same search for `w ↦ f(shift + w)` on `W`.
///
/// `W` is parametrized by its stored basis `w_1..w_d`, the tree runs on
/// `g(c) = f(shift + Σ c_i w_i)` over `F_2^d`, and each character `β` of
/// `F_2^d` is lifted to `α` with `<α, w_i> = β_i`. The lift is taken inside
/// `W` (solving the Gram system) whenever possible; if `W ∩ W^⊥` is nonzero
/// some characters of `W` have no representative in `W`, and then an
/// `α ∉ W` with the same restriction is returned.
pub fn goldreich_levin_coset_with<R: Rng + ?Sized>(
    f: &dyn Oracle,
    w: &SubspaceF2,
    shift: &PointF2,
    params: &GlParams,
    rng: &mut R,
) -> Result<LinearTermList> {
    crate::error::check_dim(f.n(), w.n())?;
    crate::error::check_dim(f.n(), shift.n())?;
    params.validate()?;
    let n = f.n();
    let d = w.dim();
    if d == 0 {
        let v = f.query(shift);
        let terms = if v.abs() >= params.gamma / 2.0 {
            vec![LinearTerm {
                alpha: PointF2::zero(n),
                coeff: v,
            }]
        } else {
            Vec::new()
        };
        return Ok(LinearTermList::new(n, terms));
    }
    let g = FnOracle::new(d, f.bound(), |c: &PointF2| {
        f.query(&(shift ^ &w.combine_point(c)))
    });
    let inner = goldreich_levin_with(&g, params, rng)?;
    let lift = CharacterLift::new(w)?;
    let terms = inner
        .into_terms()
        .into_iter()
        .map(|t| {
            Ok(LinearTerm {
                alpha: lift.lift(&t.alpha)?,
                coeff: t.coeff,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearTermList::new(n, terms))
}

/// Lifts characters of `F_2^d` (in the coordinates of a basis of `W`) to `F_2^n`.
pub(crate) struct CharacterLift<'a> {
    w: &'a SubspaceF2,
    gram: MatrixF2,
    basis_rows: MatrixF2,
}

impl<'a> CharacterLift<'a> {
    pub(crate) fn new(w: &'a SubspaceF2) -> Result<Self> {
        let basis = w.basis();
        let d = basis.len();
        let mut gram = MatrixF2::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                gram.set(i, j, basis[i].dot(&basis[j]));
            }
        }
        Ok(Self {
            w,
            gram,
            basis_rows: MatrixF2::from_rows(basis.to_vec())?,
        })
    }

    pub(crate) fn lift(&self, beta: &PointF2) -> Result<PointF2> {
        if let Some(a) = solve_linear_system(&self.gram, beta)? {
            return Ok(self.w.combine_point(&a));
        }
        solve_linear_system(&self.basis_rows, beta)?
            .ok_or_else(|| invalid("basis rows are independent, restriction must be solvable"))
    }
}
