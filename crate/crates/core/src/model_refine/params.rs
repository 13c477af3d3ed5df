use rand::Rng;

use crate::error::{check_dim, invalid, Result};
use crate::f2::{MatrixF2, PointF2};

/// The restriction `Γ φ(y) = c` of the Model-Test.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    /// `m × n`.
    pub gamma: MatrixF2,
    pub c: PointF2,
}

impl ModelParams {
    pub fn new(gamma: MatrixF2, c: PointF2) -> Result<Self> {
        if gamma.n_rows() == 0 {
            return Err(invalid("the model map needs m >= 1 rows"));
        }
        check_dim(gamma.n_rows(), c.n())?;
        Ok(Self { gamma, c })
    }

    /// `Γ = 0`, `c = 0`: no restriction.
    #[must_use]
    pub fn trivial(n: usize) -> Self {
        Self {
            gamma: MatrixF2::zeros(1, n),
            c: PointF2::zero(1),
        }
    }

    /// A uniform `m × n` map with target `c`.
    pub fn random<R: Rng + ?Sized>(
        m: usize,
        n: usize,
        c: Option<PointF2>,
        rng: &mut R,
    ) -> Result<Self> {
        let gamma = MatrixF2::random(m, n, rng);
        let c = c.unwrap_or_else(|| PointF2::random(m, rng));
        Self::new(gamma, c)
    }

    #[must_use]
    pub fn m(&self) -> usize {
        self.gamma.n_rows()
    }

    /// `Γ a = c`.
    #[must_use]
    pub fn admits(&self, a: &PointF2) -> bool {
        self.gamma.mul_vec(a) == self.c
    }
}

/// `log2 θ' = 2448 log2 ε - 487`.
#[must_use]
pub fn paper_theta_prime_log2(epsilon: f64) -> f64 {
    2448.0 * epsilon.log2() - 487.0
}

/// `log2 θ = 4912 log2 ε - 977 - log2 3`.
#[must_use]
pub fn paper_theta_log2(epsilon: f64) -> f64 {
    4912.0 * epsilon.log2() - 977.0 - 3f64.log2()
}

/// `m = 2 ceil(log2(1/θ'))`.
#[must_use]
pub fn paper_model_rows(epsilon: f64) -> usize {
    2 * (-paper_theta_prime_log2(epsilon)).ceil() as usize
}
