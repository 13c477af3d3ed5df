use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, BitAnd, BitXor, BitXorAssign};

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{check_dim, invalid, Error, Result};

/// Largest supported ambient dimension.
pub const MAX_N: usize = 4096;

/// Largest dimension accepted by helpers that enumerate all of F_2^n.
pub const MAX_ENUM_N: usize = 24;

pub(crate) type Words = SmallVec<[u64; 2]>;

#[inline]
pub(crate) fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

/// A vector of F_2^n, bit-packed into 64-bit words.
///
/// Coordinate `x_{i+1}` is bit `i`, so the integer encoding of `x` has `x_1`
/// as its least significant bit. Bits at positions `>= n` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointF2 {
    n: usize,
    words: Words,
}

impl PointF2 {
    /// The zero vector.
    ///
    /// # Panics
    /// If `n` is zero or exceeds [`MAX_N`].
    #[must_use]
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "dimension {n} out of range");
        Self {
            n,
            words: smallvec::smallvec![0; word_count(n)],
        }
    }

    /// Builds a point from its integer encoding, truncated to `n` bits.
    #[must_use]
    pub fn from_u64(n: usize, value: u64) -> Self {
        let mut p = Self::zero(n);
        p.words[0] = value;
        p.mask_tail();
        p
    }

    /// Builds a point from raw words (low word first). Excess bits are masked.
    pub fn from_words(n: usize, words: &[u64]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::TooLarge {
                what: "dimension",
                n,
                max: MAX_N,
            });
        }
        check_dim(word_count(n), words.len())?;
        let mut p = Self {
            n,
            words: Words::from_slice(words),
        };
        p.mask_tail();
        Ok(p)
    }

    /// Builds a point from explicit coordinates `bits[0] = x_1`, ...
    #[must_use]
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut p = Self::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            p.set(i, b);
        }
        p
    }

    /// The standard basis vector `e_{i+1}`.
    #[must_use]
    pub fn unit(n: usize, i: usize) -> Self {
        let mut p = Self::zero(n);
        p.set(i, true);
        p
    }

    /// A uniformly random point.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut p = Self::zero(n);
        for w in p.words.iter_mut() {
            *w = rng.random();
        }
        p.mask_tail();
        p
    }

    #[inline]
    fn mask_tail(&mut self) {
        let r = self.n % 64;
        if r != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << r) - 1;
        }
    }

    #[inline]
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    #[must_use]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.n, "coordinate {i} out of range for n = {}", self.n);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.n);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    #[inline]
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `<x, y>` over F_2: parity of the bitwise AND.
    ///
    /// # Panics
    /// On dimension mismatch.
    #[inline]
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "dimension mismatch in dot");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    /// Index of the lowest set coordinate, if any.
    #[must_use]
    pub fn lowest_set(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterates over the indices of set coordinates in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    /// Integer encoding, for `n <= 64`.
    ///
    /// # Panics
    /// If `n > 64`.
    #[inline]
    #[must_use]
    pub fn as_u64(&self) -> u64 {
        assert!(self.n <= 64, "as_u64 needs n <= 64");
        self.words[0]
    }

    /// Table index of the point, for `n <= MAX_ENUM_N`.
    #[inline]
    #[must_use]
    pub fn index(&self) -> usize {
        debug_assert!(self.n <= MAX_ENUM_N);
        self.words[0] as usize
    }

    /// Concatenation `(self, other)` in F_2^{n+m}; `self` occupies the low coordinates.
    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n + other.n);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.n + i, true);
        }
        out
    }

    /// Splits into the first `k` coordinates and the remaining `n - k`.
    ///
    /// # Panics
    /// Unless `0 < k < n`.
    #[must_use]
    pub fn split(&self, k: usize) -> (Self, Self) {
        assert!(k > 0 && k < self.n);
        let mut lo = Self::zero(k);
        let mut hi = Self::zero(self.n - k);
        for i in self.ones() {
            if i < k {
                lo.set(i, true);
            } else {
                hi.set(i - k, true);
            }
        }
        (lo, hi)
    }

    /// Keeps only the coordinates `< k`.
    #[must_use]
    pub fn low_part(&self, k: usize) -> Self {
        let mut p = self.clone();
        for (idx, w) in p.words.iter_mut().enumerate() {
            let start = idx * 64;
            if start >= k {
                *w = 0;
            } else if k - start < 64 {
                *w &= (1u64 << (k - start)) - 1;
            }
        }
        p
    }

    /// Lowercase hex of the integer encoding, zero padded to `ceil(n/4)` digits.
    #[must_use]
    pub fn to_hex(&self) -> String {
        let digits = self.n.div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = d * 4;
            let word = self.words[bit / 64];
            let nib = (word >> (bit % 64)) & 0xf;
            s.push(char::from_digit(nib as u32, 16).expect("nibble"));
        }
        s
    }

    /// Parses the hex form produced by [`PointF2::to_hex`]. Shorter strings are
    /// accepted; digits beyond dimension `n` must be zero.
    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        let hex = hex.trim();
        let hex = hex.strip_prefix("0x").unwrap_or(hex);
        if hex.is_empty() {
            return Err(Error::Parse("empty hex string".into()));
        }
        let mut p = Self::zero(n);
        for (d, ch) in hex.chars().rev().enumerate() {
            let nib = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?}")))?
                as u64;
            for b in 0..4 {
                if (nib >> b) & 1 == 1 {
                    let i = d * 4 + b;
                    if i >= n {
                        return Err(invalid(format!("hex value {hex} does not fit in {n} bits")));
                    }
                    p.set(i, true);
                }
            }
        }
        Ok(p)
    }
}

impl fmt::Debug for PointF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointF2(n={}, 0x{})", self.n, self.to_hex())
    }
}

impl fmt::Display for PointF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Ordered by dimension, then by integer encoding.
impl Ord for PointF2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for PointF2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitXorAssign<&PointF2> for PointF2 {
    #[inline]
    fn bitxor_assign(&mut self, rhs: &PointF2) {
        assert_eq!(self.n, rhs.n, "dimension mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(rhs.words.iter()) {
            *a ^= b;
        }
    }
}

impl AddAssign<&PointF2> for PointF2 {
    #[inline]
    fn add_assign(&mut self, rhs: &PointF2) {
        *self ^= rhs;
    }
}

impl BitXor for &PointF2 {
    type Output = PointF2;
    #[inline]
    fn bitxor(self, rhs: &PointF2) -> PointF2 {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl Add for &PointF2 {
    type Output = PointF2;
    #[inline]
    fn add(self, rhs: &PointF2) -> PointF2 {
        self ^ rhs
    }
}

impl BitAnd for &PointF2 {
    type Output = PointF2;
    fn bitand(self, rhs: &PointF2) -> PointF2 {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(rhs.words.iter()) {
            *a &= b;
        }
        out
    }
}
