use rand::Rng;

use super::elim::{null_space, pivots_of, reduce_against, reduce_unchecked};
use super::point::{PointF2, MAX_ENUM_N};
use crate::error::{check_dim, Error, Result};

/// A linear subspace `V` of F_2^n, stored through a basis of `V^⊥`, with an
/// optional coset representative.
///
/// Both the orthogonal basis and a basis of `V` itself are kept in reduced
/// echelon form; the latter is used for canonical coset representatives.
#[derive(Clone, Debug)]
pub struct SubspaceF2 {
    n: usize,
    ortho: Vec<PointF2>,
    basis: Vec<PointF2>,
    coset_rep: Option<PointF2>,
}

impl PartialEq for SubspaceF2 {
    /// Equality of member sets (and of canonical coset representatives).
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.ortho == other.ortho
            && self.coset_rep.as_ref().map(|c| self.canonical_rep(c))
                == other.coset_rep.as_ref().map(|c| other.canonical_rep(c))
    }
}

impl Eq for SubspaceF2 {}

impl SubspaceF2 {
    /// The whole space F_2^n.
    #[must_use]
    pub fn full(n: usize) -> Self {
        Self {
            n,
            ortho: Vec::new(),
            basis: (0..n).map(|i| PointF2::unit(n, i)).collect(),
            coset_rep: None,
        }
    }

    /// The zero subspace.
    #[must_use]
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            ortho: (0..n).map(|i| PointF2::unit(n, i)).collect(),
            basis: Vec::new(),
            coset_rep: None,
        }
    }

    /// `{x : <b, x> = 0 for all b}`. The list may be dependent.
    pub fn from_ortho(n: usize, ortho: &[PointF2]) -> Result<Self> {
        for b in ortho {
            check_dim(n, b.n())?;
        }
        let ortho = reduce_unchecked(ortho.to_vec());
        let basis = null_space(n, &ortho)?;
        Ok(Self {
            n,
            ortho,
            basis,
            coset_rep: None,
        })
    }

    /// The span of `vectors`.
    pub fn span(n: usize, vectors: &[PointF2]) -> Result<Self> {
        for v in vectors {
            check_dim(n, v.n())?;
        }
        let basis = reduce_unchecked(vectors.to_vec());
        let ortho = null_space(n, &basis)?;
        Ok(Self {
            n,
            ortho,
            basis,
            coset_rep: None,
        })
    }

    /// A uniformly random subspace of the given codimension.
    pub fn random_with_codim<R: Rng + ?Sized>(n: usize, codim: usize, rng: &mut R) -> Self {
        assert!(codim <= n);
        loop {
            let vs: Vec<_> = (0..codim).map(|_| PointF2::random(n, rng)).collect();
            let s = Self::from_ortho(n, &vs).expect("dimensions agree");
            if s.codim() == codim {
                return s;
            }
        }
    }

    /// Attaches a coset representative, turning this into the affine set `rep + V`.
    #[must_use]
    pub fn with_coset_rep(mut self, rep: PointF2) -> Self {
        assert_eq!(rep.n(), self.n);
        self.coset_rep = Some(rep);
        self
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[must_use]
    pub fn codim(&self) -> usize {
        self.ortho.len()
    }

    /// Reduced basis of `V^⊥`.
    #[must_use]
    pub fn ortho_basis(&self) -> &[PointF2] {
        &self.ortho
    }

    /// Reduced basis of `V`.
    #[must_use]
    pub fn basis(&self) -> &[PointF2] {
        &self.basis
    }

    #[must_use]
    pub fn coset_rep(&self) -> Option<&PointF2> {
        self.coset_rep.as_ref()
    }

    /// Membership in the linear subspace `V` (the coset representative is ignored).
    #[must_use]
    pub fn contains(&self, x: &PointF2) -> bool {
        self.ortho.iter().all(|b| !b.dot(x))
    }

    /// Membership in the affine set `rep + V` (or `V` without a representative).
    #[must_use]
    pub fn contains_affine(&self, x: &PointF2) -> bool {
        match &self.coset_rep {
            Some(r) => self.contains(&(x ^ r)),
            None => self.contains(x),
        }
    }

    /// The bits `<b_i, x>` over the orthogonal basis; two points share a coset
    /// exactly when their syndromes agree.
    #[must_use]
    pub fn syndrome(&self, x: &PointF2) -> u64 {
        assert!(self.codim() <= 64);
        self.ortho
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, b)| acc | (u64::from(b.dot(x)) << i))
    }

    /// The canonical representative of `x + V`: `x` reduced against the echelon
    /// basis of `V`, which zeroes every pivot coordinate of `V`.
    #[must_use]
    pub fn canonical_rep(&self, x: &PointF2) -> PointF2 {
        reduce_against(x, &self.basis)
    }

    /// Canonical representatives of all `2^codim` cosets, ordered by the
    /// integer encoding of the free coordinates they select.
    pub fn coset_reps(&self) -> Result<Vec<PointF2>> {
        let codim = self.codim();
        if codim > MAX_ENUM_N {
            return Err(Error::TooLarge {
                what: "coset enumeration (codimension)",
                n: codim,
                max: MAX_ENUM_N,
            });
        }
        let piv = pivots_of(&self.basis);
        let mut is_pivot = vec![false; self.n];
        for p in piv {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.n).filter(|&j| !is_pivot[j]).collect();
        Ok((0..1u64 << codim)
            .map(|mask| {
                let mut y = PointF2::zero(self.n);
                for (k, &j) in free.iter().enumerate() {
                    if (mask >> k) & 1 == 1 {
                        y.set(j, true);
                    }
                }
                y
            })
            .collect())
    }

    /// All members of `V` (dimension at most [`MAX_ENUM_N`]).
    pub fn members(&self) -> Result<Vec<PointF2>> {
        if self.dim() > MAX_ENUM_N {
            return Err(Error::TooLarge {
                what: "subspace enumeration (dimension)",
                n: self.dim(),
                max: MAX_ENUM_N,
            });
        }
        Ok((0..1u64 << self.dim()).map(|c| self.combine(c)).collect())
    }

    /// `sum_i c_i b_i` over the stored basis, `c` given as a bit mask.
    #[must_use]
    pub fn combine(&self, coeffs: u64) -> PointF2 {
        let mut x = PointF2::zero(self.n);
        let mut c = coeffs;
        while c != 0 {
            let i = c.trailing_zeros() as usize;
            x ^= &self.basis[i];
            c &= c - 1;
        }
        x
    }

    /// `sum_i c_i b_i` for a coefficient vector in F_2^dim.
    #[must_use]
    pub fn combine_point(&self, coeffs: &PointF2) -> PointF2 {
        let mut x = PointF2::zero(self.n);
        for i in coeffs.ones() {
            x ^= &self.basis[i];
        }
        x
    }

    /// A uniformly random member of `V`.
    pub fn random_member<R: Rng + ?Sized>(&self, rng: &mut R) -> PointF2 {
        if self.dim() == 0 {
            return PointF2::zero(self.n);
        }
        self.combine_point(&PointF2::random(self.dim(), rng))
    }

    /// `V ∩ U`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let mut all = self.ortho.clone();
        all.extend_from_slice(&other.ortho);
        Self::from_ortho(self.n, &all)
    }

    /// `V ∩ {x : <a, x> = 0}`.
    #[must_use]
    pub fn intersect_hyperplane(&self, a: &PointF2) -> Self {
        let mut all = self.ortho.clone();
        all.push(a.clone());
        Self::from_ortho(self.n, &all).expect("dimensions agree")
    }

    /// `V ⊆ U` as linear subspaces.
    #[must_use]
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

/// `V^⊥`. Applying it twice returns a subspace with the same members.
#[must_use]
pub fn orthogonal_complement(s: &SubspaceF2) -> SubspaceF2 {
    SubspaceF2 {
        n: s.n,
        ortho: s.basis.clone(),
        basis: s.ortho.clone(),
        coset_rep: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complement_of_full_space_is_zero() {
        let c = orthogonal_complement(&SubspaceF2::full(6));
        assert_eq!(c.dim(), 0);
        assert_eq!(c, SubspaceF2::zero(6));
    }

    #[test]
    fn complement_of_e1() {
        let s = SubspaceF2::span(3, &[PointF2::unit(3, 0)]).unwrap();
        let c = orthogonal_complement(&s);
        let expect = SubspaceF2::span(3, &[PointF2::unit(3, 1), PointF2::unit(3, 2)]).unwrap();
        assert_eq!(c, expect);
    }

    #[test]
    fn complement_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for codim in 0..8 {
            let s = SubspaceF2::random_with_codim(10, codim, &mut rng);
            let cc = orthogonal_complement(&orthogonal_complement(&s));
            assert_eq!(cc, s);
            assert_eq!(orthogonal_complement(&s).dim(), 10 - s.dim());
        }
    }

    #[test]
    fn membership_agrees_with_inner_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let raw: Vec<_> = (0..4).map(|_| PointF2::random(12, &mut rng)).collect();
        let s = SubspaceF2::from_ortho(12, &raw).unwrap();
        assert_eq!(s.codim(), 4);
        for _ in 0..1000 {
            let x = PointF2::random(12, &mut rng);
            assert_eq!(s.contains(&x), raw.iter().all(|b| !b.dot(&x)));
        }
    }

    #[test]
    fn canonical_reps_cover_cosets_once() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let s = SubspaceF2::random_with_codim(8, 3, &mut rng);
        let reps = s.coset_reps().unwrap();
        assert_eq!(reps.len(), 8);
        let mut seen = std::collections::HashSet::new();
        for r in &reps {
            assert_eq!(&s.canonical_rep(r), r);
            assert!(seen.insert(s.syndrome(r)));
        }
        for _ in 0..200 {
            let x = PointF2::random(8, &mut rng);
            let w = s.random_member(&mut rng);
            assert_eq!(s.canonical_rep(&x), s.canonical_rep(&(&x ^ &w)));
        }
    }

    #[test]
    fn members_enumerate_the_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let s = SubspaceF2::random_with_codim(9, 4, &mut rng);
        let m = s.members().unwrap();
        assert_eq!(m.len(), 32);
        assert!(m.iter().all(|x| s.contains(x)));
    }
}
