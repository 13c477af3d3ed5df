use std::sync::Arc;

use super::oracle::{Oracle, QueryCounter};
use crate::error::{check_dim, invalid, Error, Result};
use crate::f2::{PointF2, MAX_ENUM_N};

/// The full table of a function on F_2^n, indexed by the integer encoding of `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruthTable {
    n: usize,
    values: Vec<f64>,
}

pub(crate) fn check_enum_n(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("dimension must be positive"));
    }
    if n > max {
        return Err(Error::TooLarge { what, n, max });
    }
    Ok(())
}

impl TruthTable {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_enum_n("truth table", n, MAX_ENUM_N)?;
        check_dim(1 << n, values.len())?;
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(&PointF2) -> f64) -> Result<Self> {
        check_enum_n("truth table", n, MAX_ENUM_N)?;
        let values = (0..1u64 << n)
            .map(|i| f(&PointF2::from_u64(n, i)))
            .collect();
        Ok(Self { n, values })
    }

    /// Materializes an oracle by querying every point.
    pub fn from_oracle(f: &dyn Oracle) -> Result<Self> {
        Self::from_fn(f.n(), |x| f.query(x))
    }

    pub fn constant(n: usize, v: f64) -> Result<Self> {
        check_enum_n("truth table", n, MAX_ENUM_N)?;
        Self::new(n, vec![v; 1 << n])
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[must_use]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[must_use]
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    #[must_use]
    pub fn get(&self, index: usize) -> f64 {
        self.values[index]
    }

    #[inline]
    #[must_use]
    pub fn at(&self, x: &PointF2) -> f64 {
        self.values[x.index()]
    }

    /// Every entry is exactly `±1`.
    #[must_use]
    pub fn is_boolean(&self) -> bool {
        self.values.iter().all(|&v| v == 1.0 || v == -1.0)
    }

    #[must_use]
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `E_x f(x)^2`.
    #[must_use]
    pub fn l2_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() / self.len() as f64
    }

    /// `E_x |f(x)|`.
    #[must_use]
    pub fn l1(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>() / self.len() as f64
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// `a·self + b·other`.
    pub fn lin_comb(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        check_dim(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        })
    }

    /// A counting oracle over a shared copy of this table.
    #[must_use]
    pub fn oracle(&self) -> TableOracle {
        TableOracle::new(Arc::new(self.clone()))
    }
}

/// `E_x f(x) g(x)`, computed exactly.
pub fn correlation_exact(f: &TruthTable, g: &TruthTable) -> Result<f64> {
    check_dim(f.n, g.n)?;
    Ok(f.values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| a * b)
        .sum::<f64>()
        / f.len() as f64)
}

/// A counting oracle over a truth table.
#[derive(Debug)]
pub struct TableOracle {
    table: Arc<TruthTable>,
    bound: f64,
    counter: QueryCounter,
}

impl TableOracle {
    #[must_use]
    pub fn new(table: Arc<TruthTable>) -> Self {
        let bound = table.max_abs().max(f64::MIN_POSITIVE);
        Self {
            table,
            bound,
            counter: QueryCounter::default(),
        }
    }

    #[must_use]
    pub fn table(&self) -> &TruthTable {
        &self.table
    }
}

impl Oracle for TableOracle {
    fn n(&self) -> usize {
        self.table.n
    }
    fn bound(&self) -> f64 {
        self.bound
    }
    #[inline]
    fn query(&self, x: &PointF2) -> f64 {
        self.counter.bump();
        self.table.values[x.index()]
    }
    fn query_count(&self) -> u64 {
        self.counter.get()
    }
}
