use rayon::prelude::*;

use super::wht::{normalized, wht};
use crate::error::{invalid, Result};
use crate::functions::{check_enum_n, TruthTable};

/// Largest `n` accepted by the exact `U^3` routine.
pub const MAX_EXACT_U3_N: usize = 14;

/// Exact Gowers norm `‖f‖_{U^k}` for `k ∈ {2, 3}`.
///
/// `U^2` is the `ℓ^4` norm of the spectrum. `U^3` uses
/// `‖f‖_{U^3}^8 = E_x ‖f_x‖_{U^2}^4 = E_x Σ_α f̂_x(α)^4` with one transform per
/// shift, about `n 4^n` operations.
pub fn exact_u_norm(f: &TruthTable, k: u32) -> Result<f64> {
    match k {
        2 => Ok(wht(f)?.l4()),
        3 => Ok(exact_u3_eighth(f)?.max(0.0).powf(0.125)),
        other => Err(invalid(format!(
            "exact U^k supports k = 2 or 3, got {other}"
        ))),
    }
}

/// `‖f‖_{U^3}^8`.
pub fn exact_u3_eighth(f: &TruthTable) -> Result<f64> {
    check_enum_n("exact U^3", f.n(), MAX_EXACT_U3_N)?;
    let vals = f.values();
    let len = vals.len();
    let total: f64 = (0..len)
        .into_par_iter()
        .map(|s| {
            let d: Vec<f64> = (0..len).map(|y| vals[y] * vals[y ^ s]).collect();
            normalized(d).iter().map(|c| (c * c) * (c * c)).sum::<f64>()
        })
        .sum();
    Ok(total / len as f64)
}
