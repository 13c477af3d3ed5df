use super::set::SetF2;
use crate::error::{invalid, Result};
use crate::fourier::{wht, wht_in_place};
use crate::functions::{check_enum_n, TruthTable};

/// Largest `n` for [`convolution_power`] and [`sumset`].
pub const MAX_CONVOLUTION_N: usize = 16;
/// Largest `n` for [`count_additive_quadruples`].
pub const MAX_QUADRUPLE_N: usize = 14;
/// Largest fold count for [`sumset`].
const MAX_FOLD: usize = 16;

/// The `k`-fold convolution `h ∗ ... ∗ h` with `(a ∗ b)(x) = E_y a(y) b(x + y)`,
/// computed as the inverse transform of `ĥ^k`.
pub fn convolution_power(h: &TruthTable, k: u32) -> Result<TruthTable> {
    check_enum_n("convolution", h.n(), MAX_CONVOLUTION_N)?;
    if k == 0 {
        return Err(invalid("convolution power needs k >= 1"));
    }
    let mut c = wht(h)?.into_coeffs();
    for v in &mut c {
        *v = v.powi(k as i32);
    }
    wht_in_place(&mut c);
    TruthTable::new(h.n(), c)
}

/// Unnormalized transform of an indicator; all entries are integers.
fn integer_transform(a: &SetF2) -> Vec<f64> {
    let mut v: Vec<f64> = (0..1usize << a.n())
        .map(|i| f64::from(u8::from(a.contains_index(i))))
        .collect();
    wht_in_place(&mut v);
    v
}

/// `r(x) = #{(a, b) ∈ A × B : a + b = x}`, exact in floating point since every
/// intermediate is an integer below `2^{3n}`.
fn representation_counts(a: &SetF2, b: &SetF2) -> Vec<f64> {
    let (ta, tb) = (integer_transform(a), integer_transform(b));
    let mut prod: Vec<f64> = ta.iter().zip(&tb).map(|(x, y)| x * y).collect();
    wht_in_place(&mut prod);
    let len = prod.len() as f64;
    prod.iter().map(|v| (v / len).round()).collect()
}

/// The `k`-fold sumset `kA = {a_1 + ... + a_k}` via `k - 1` support-of-convolution
/// steps with exact integer counts.
pub fn sumset(a: &SetF2, k: usize) -> Result<SetF2> {
    check_enum_n("sumset", a.n(), MAX_CONVOLUTION_N)?;
    if k == 0 || k > MAX_FOLD {
        return Err(invalid(format!(
            "sumset fold count must lie in 1..={MAX_FOLD}, got {k}"
        )));
    }
    let mut s = a.clone();
    for _ in 1..k {
        if s.is_empty() {
            break;
        }
        let r = representation_counts(&s, a);
        s = SetF2::from_indices(
            a.n(),
            r.iter()
                .enumerate()
                .filter(|(_, c)| **c > 0.0)
                .map(|(i, _)| i),
        )?;
    }
    Ok(s)
}

/// `#{(a_1, a_2, a_3, a_4) ∈ A^4 : a_1 + a_2 = a_3 + a_4}`.
///
/// With `r(x) = 2^n (1_A ∗ 1_A)(x)` the number of representations of `x`, the
/// count is `Σ_x r(x)^2 = 2^{3n} E_x (1_A ∗ 1_A)(x)^2 = 2^{3n} Σ_α 1̂_A(α)^4`.
pub fn count_additive_quadruples(a: &SetF2) -> Result<u64> {
    check_enum_n("additive quadruples", a.n(), MAX_QUADRUPLE_N)?;
    let r = representation_counts(a, a);
    Ok(r.iter().map(|&c| (c as u64) * (c as u64)).sum())
}
