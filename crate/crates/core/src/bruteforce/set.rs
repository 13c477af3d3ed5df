use crate::error::{check_dim, invalid, Result};
use crate::f2::{PointF2, SubspaceF2};
use crate::functions::{check_enum_n, TruthTable};

/// Largest `n` of a [`SetF2`].
pub const MAX_SET_N: usize = 20;

/// A subset of `F_2^n` as a dense bit array indexed by the integer encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetF2 {
    n: usize,
    bits: Vec<u64>,
}

impl SetF2 {
    pub fn empty(n: usize) -> Result<Self> {
        check_enum_n("set", n, MAX_SET_N)?;
        Ok(Self {
            n,
            bits: vec![0; (1usize << n).div_ceil(64)],
        })
    }

    pub fn full(n: usize) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for i in 0..1usize << n {
            s.insert_index(i);
        }
        Ok(s)
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for i in indices {
            if i >= 1 << n {
                return Err(invalid(format!("index {i} outside F_2^{n}")));
            }
            s.insert_index(i);
        }
        Ok(s)
    }

    pub fn from_points(n: usize, points: &[PointF2]) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for p in points {
            check_dim(n, p.n())?;
            s.insert_index(p.index());
        }
        Ok(s)
    }

    /// The support `{x : f(x) != 0}` of a `0/1` table.
    pub fn from_indicator(t: &TruthTable) -> Result<Self> {
        let mut s = Self::empty(t.n())?;
        for (i, &v) in t.values().iter().enumerate() {
            if v == 1.0 {
                s.insert_index(i);
            } else if v != 0.0 {
                return Err(invalid(format!("indicator value {v} is neither 0 nor 1")));
            }
        }
        Ok(s)
    }

    pub fn from_subspace(s: &SubspaceF2) -> Result<Self> {
        Self::from_points(s.n(), &s.members()?)
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn contains_index(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    #[must_use]
    pub fn contains(&self, x: &PointF2) -> bool {
        x.n() == self.n && self.contains_index(x.index())
    }

    pub fn insert_index(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn insert(&mut self, x: &PointF2) {
        assert_eq!(x.n(), self.n, "point has the wrong dimension");
        self.insert_index(x.index());
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// `|A| / 2^n`.
    #[must_use]
    pub fn density(&self) -> f64 {
        self.len() as f64 / (1u64 << self.n) as f64
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..1usize << self.n).filter(|&i| self.contains_index(i))
    }

    #[must_use]
    pub fn points(&self) -> Vec<PointF2> {
        self.indices()
            .map(|i| PointF2::from_u64(self.n, i as u64))
            .collect()
    }

    /// The `0/1` indicator table.
    #[must_use]
    pub fn indicator(&self) -> TruthTable {
        let values = (0..1usize << self.n)
            .map(|i| f64::from(u8::from(self.contains_index(i))))
            .collect();
        TruthTable::new(self.n, values).expect("n is within the table cap")
    }

    #[must_use]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    #[must_use]
    pub fn intersection_len(&self, other: &Self) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn indicator_round_trip() {
        let s = SetF2::from_indices(7, [0, 3, 64, 127]).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(SetF2::from_indicator(&s.indicator()).unwrap(), s);
        assert!((s.density() - 4.0 / 128.0).abs() < 1e-15);
        assert_eq!(s.indices().collect::<Vec<_>>(), vec![0, 3, 64, 127]);
    }

    #[test]
    fn subspace_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(401);
        let v = SubspaceF2::random_with_codim(9, 3, &mut rng);
        let s = SetF2::from_subspace(&v).unwrap();
        assert_eq!(s.len(), 64);
        assert!(s.points().iter().all(|p| v.contains(p)));
    }

    #[test]
    fn subset_and_intersection() {
        let a = SetF2::from_indices(5, [1, 2, 3]).unwrap();
        let b = SetF2::from_indices(5, [1, 2, 3, 9]).unwrap();
        assert!(a.is_subset(&b) && !b.is_subset(&a));
        assert_eq!(a.intersection_len(&b), 3);
    }

    #[test]
    fn refuses_bad_input() {
        assert!(SetF2::empty(21).is_err());
        assert!(SetF2::from_indices(3, [8]).is_err());
        let t = TruthTable::new(2, vec![0.0, 0.5, 1.0, 0.0]).unwrap();
        assert!(SetF2::from_indicator(&t).is_err());
    }
}
