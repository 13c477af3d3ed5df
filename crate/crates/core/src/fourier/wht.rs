use crate::error::Result;
use crate::f2::{PointF2, MAX_ENUM_N};
use crate::functions::{check_enum_n, TruthTable};

/// Unnormalized in-place Walsh-Hadamard butterfly: afterwards
/// `a[α] = Σ_x a_old[x] (-1)^{<α,x>}`. Applying it twice multiplies by `len`.
///
/// # Panics
/// If the length is not a power of two.
pub fn wht_in_place(a: &mut [f64]) {
    let len = a.len();
    assert!(len.is_power_of_two(), "length must be a power of two");
    let mut h = 1;
    while h < len {
        for i in (0..len).step_by(h * 2) {
            for j in i..i + h {
                let x = a[j];
                let y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// Fourier coefficients `f̂(α) = E_x f(x) (-1)^{<α,x>}`, indexed by `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSpectrum {
    n: usize,
    coeffs: Vec<f64>,
}

impl FourierSpectrum {
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[must_use]
    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    #[must_use]
    pub fn get(&self, alpha: &PointF2) -> f64 {
        self.coeffs[alpha.index()]
    }

    /// `Σ_α f̂(α)^2`.
    #[must_use]
    pub fn parseval_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// `(Σ_α f̂(α)^4)^{1/4}`.
    #[must_use]
    pub fn l4(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.powi(4))
            .sum::<f64>()
            .powf(0.25)
    }

    /// Index and value of the coefficient of largest magnitude (lowest index on ties).
    #[must_use]
    pub fn argmax_abs(&self) -> (PointF2, f64) {
        let mut best = 0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.abs() > self.coeffs[best].abs() {
                best = i;
            }
        }
        (PointF2::from_u64(self.n, best as u64), self.coeffs[best])
    }

    /// The function whose spectrum this is.
    pub fn inverse(&self) -> Result<TruthTable> {
        let mut v = self.coeffs.clone();
        wht_in_place(&mut v);
        TruthTable::new(self.n, v)
    }
}

/// The normalized transform of a table (`n <= 24`).
pub fn wht(f: &TruthTable) -> Result<FourierSpectrum> {
    check_enum_n("wht", f.n(), MAX_ENUM_N)?;
    Ok(FourierSpectrum {
        n: f.n(),
        coeffs: normalized(f.values().to_vec()),
    })
}

pub(crate) fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let scale = 1.0 / v.len() as f64;
    wht_in_place(&mut v);
    for c in &mut v {
        *c *= scale;
    }
    v
}

/// Exact spectrum of the derivative `f_x(y) = f(y) f(x+y)`.
pub fn derivative_spectrum(f: &TruthTable, x: &PointF2) -> Result<FourierSpectrum> {
    check_enum_n("wht", f.n(), MAX_ENUM_N)?;
    let s = x.index();
    let vals = f.values();
    let d: Vec<f64> = (0..vals.len()).map(|y| vals[y] * vals[y ^ s]).collect();
    Ok(FourierSpectrum {
        n: f.n(),
        coeffs: normalized(d),
    })
}
