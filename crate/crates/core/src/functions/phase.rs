use std::collections::BTreeMap;

use rand::Rng;

use super::oracle::FnOracle;
use super::table::TruthTable;
use crate::error::{check_dim, invalid, Result};
use crate::f2::{MatrixF2, PointF2, SubspaceF2};

#[inline]
fn sign(bit: bool) -> f64 {
    if bit {
        -1.0
    } else {
        1.0
    }
}

/// A quadratic phase `(-1)^{q(x)}` with `q(x) = <x, Mx> + <α, x> + c`.
///
/// `M` is kept strictly upper triangular; any diagonal is folded into `α`
/// since `x_i^2 = x_i` over F_2. Equality of phases is field-wise equality of
/// this canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticPhase {
    m: MatrixF2,
    alpha: PointF2,
    c: bool,
}

/// Canonical strictly upper form of the quadratic form `x ↦ <x, Mx>`:
/// returns `(U, d)` with `<x, Mx> = <x, Ux> + <d, x>`.
pub(crate) fn canonical_quadratic(m: &MatrixF2) -> (MatrixF2, PointF2) {
    let n = m.n_rows();
    let mut u = MatrixF2::zeros(n, n);
    for i in 0..n {
        for j in m.row(i).ones() {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => u.set(i, j, !u.get(i, j)),
                std::cmp::Ordering::Greater => u.set(j, i, !u.get(j, i)),
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    (u, m.diagonal())
}

impl QuadraticPhase {
    /// Builds the phase from an arbitrary square `M`, canonicalizing it.
    pub fn new(m: MatrixF2, alpha: PointF2, c: bool) -> Result<Self> {
        if !m.is_square() {
            return Err(invalid("quadratic part must be square"));
        }
        check_dim(m.n_rows(), alpha.n())?;
        let (u, d) = canonical_quadratic(&m);
        Ok(Self {
            m: u,
            alpha: &alpha ^ &d,
            c,
        })
    }

    /// The constant phase `1`.
    #[must_use]
    pub fn zero(n: usize) -> Self {
        Self {
            m: MatrixF2::zeros(n, n),
            alpha: PointF2::zero(n),
            c: false,
        }
    }

    /// The linear phase `(-1)^{<α, x>}`.
    #[must_use]
    pub fn linear(alpha: PointF2) -> Self {
        let n = alpha.n();
        Self {
            m: MatrixF2::zeros(n, n),
            alpha,
            c: false,
        }
    }

    /// A uniformly random quadratic phase.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            m: MatrixF2::random_strict_upper(n, rng),
            alpha: PointF2::random(n, rng),
            c: rng.random(),
        }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.alpha.n()
    }

    /// The strictly upper triangular quadratic part.
    #[must_use]
    pub fn m(&self) -> &MatrixF2 {
        &self.m
    }

    #[must_use]
    pub fn alpha(&self) -> &PointF2 {
        &self.alpha
    }

    #[must_use]
    pub fn c(&self) -> bool {
        self.c
    }

    /// `M + M^T`, the symmetric form whose derivative characters are `(M + M^T) x`.
    #[must_use]
    pub fn bilinear_form(&self) -> MatrixF2 {
        self.m.symmetrized()
    }

    /// `q(x)` as a bit.
    #[must_use]
    pub fn exponent(&self, x: &PointF2) -> bool {
        self.m.quadratic(x) ^ self.alpha.dot(x) ^ self.c
    }

    /// `(-1)^{q(x)}`.
    ///
    /// # Panics
    /// On dimension mismatch; see [`eval_quadratic_phase`] for a checked form.
    #[must_use]
    pub fn value(&self, x: &PointF2) -> f64 {
        sign(self.exponent(x))
    }

    /// The negated phase.
    #[must_use]
    pub fn negated(&self) -> Self {
        Self {
            c: !self.c,
            ..self.clone()
        }
    }

    pub fn truth_table(&self) -> Result<TruthTable> {
        TruthTable::from_fn(self.n(), |x| self.value(x))
    }

    /// A counting oracle for the phase.
    pub fn oracle(&self) -> FnOracle<impl Fn(&PointF2) -> f64 + Send + Sync + '_> {
        FnOracle::new(self.n(), 1.0, move |x| self.value(x))
    }
}

/// `(-1)^{<x,Mx> + <α,x> + c}`.
pub fn eval_quadratic_phase(q: &QuadraticPhase, x: &PointF2) -> Result<f64> {
    check_dim(q.n(), x.n())?;
    Ok(q.value(x))
}

/// A quadratic average: on each coset `y + W` it equals a quadratic phase with
/// shared quadratic part `A` and per-coset linear part `l_y`, sign `c_y`.
/// Cosets without a term evaluate to `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticAverage {
    w: SubspaceF2,
    a: MatrixF2,
    terms: BTreeMap<PointF2, (PointF2, bool)>,
}

impl QuadraticAverage {
    /// Builds an average; `A` is canonicalized to strictly upper form (its
    /// diagonal moves into every `l_y`) and keys to canonical coset representatives.
    pub fn new(
        w: SubspaceF2,
        a: MatrixF2,
        terms: impl IntoIterator<Item = (PointF2, (PointF2, bool))>,
    ) -> Result<Self> {
        let n = w.n();
        if !a.is_square() {
            return Err(invalid("quadratic part must be square"));
        }
        check_dim(n, a.n_rows())?;
        let (u, d) = canonical_quadratic(&a);
        let mut map = BTreeMap::new();
        for (y, (l, c)) in terms {
            check_dim(n, y.n())?;
            check_dim(n, l.n())?;
            map.insert(w.canonical_rep(&y), (&l ^ &d, c));
        }
        let w = SubspaceF2::from_ortho(n, w.ortho_basis())?;
        Ok(Self {
            w,
            a: u,
            terms: map,
        })
    }

    /// The average with `W = F_2^n` and a single term.
    #[must_use]
    pub fn from_phase(q: &QuadraticPhase) -> Self {
        let n = q.n();
        let mut terms = BTreeMap::new();
        terms.insert(PointF2::zero(n), (q.alpha().clone(), q.c()));
        Self {
            w: SubspaceF2::full(n),
            a: q.m().clone(),
            terms,
        }
    }

    /// A random average of the given complexity with every coset populated.
    pub fn random<R: Rng + ?Sized>(n: usize, codim: usize, rng: &mut R) -> Result<Self> {
        let w = SubspaceF2::random_with_codim(n, codim, rng);
        let a = MatrixF2::random_strict_upper(n, rng);
        let terms: Vec<_> = w
            .coset_reps()?
            .into_iter()
            .map(|y| (y, (PointF2::random(n, rng), rng.random::<bool>())))
            .collect();
        Self::new(w, a, terms)
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.w.n()
    }

    #[must_use]
    pub fn subspace(&self) -> &SubspaceF2 {
        &self.w
    }

    #[must_use]
    pub fn a(&self) -> &MatrixF2 {
        &self.a
    }

    #[must_use]
    pub fn terms(&self) -> &BTreeMap<PointF2, (PointF2, bool)> {
        &self.terms
    }

    /// `codim(W)`.
    #[must_use]
    pub fn complexity(&self) -> usize {
        self.w.codim()
    }

    #[must_use]
    pub fn value(&self, x: &PointF2) -> f64 {
        let y = self.w.canonical_rep(x);
        match self.terms.get(&y) {
            Some((l, c)) => sign(self.a.quadratic(x) ^ l.dot(x) ^ c),
            None => 0.0,
        }
    }

    /// The phase used on the coset of `y`, if that coset has a term.
    #[must_use]
    pub fn coset_phase(&self, y: &PointF2) -> Option<QuadraticPhase> {
        let rep = self.w.canonical_rep(y);
        self.terms.get(&rep).map(|(l, c)| QuadraticPhase {
            m: self.a.clone(),
            alpha: l.clone(),
            c: *c,
        })
    }

    pub fn truth_table(&self) -> Result<TruthTable> {
        TruthTable::from_fn(self.n(), |x| self.value(x))
    }

    pub fn oracle(&self) -> FnOracle<impl Fn(&PointF2) -> f64 + Send + Sync + '_> {
        FnOracle::new(self.n(), 1.0, move |x| self.value(x))
    }
}

/// Value of the average at `x`; `0` on cosets without a term.
pub fn eval_quadratic_average(q: &QuadraticAverage, x: &PointF2) -> Result<f64> {
    check_dim(q.n(), x.n())?;
    Ok(q.value(x))
}
