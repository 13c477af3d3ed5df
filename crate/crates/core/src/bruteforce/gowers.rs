use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::functions::TruthTable;

/// Largest `log2` of the `2^{(k+1)n}` cube count accepted by [`u_norm_direct`].
pub const MAX_DIRECT_WORK_LOG2: usize = 32;

/// `‖f‖_{U^k} = (E_{x, h_1..h_k} Π_{ω ∈ {0,1}^k} f(x + ω·h))^{1/2^k}`, summed
/// over every cube. No transforms are used.
pub fn u_norm_direct(f: &TruthTable, k: u32) -> Result<f64> {
    let n = f.n();
    if k == 0 {
        return Err(invalid("U^k needs k >= 1"));
    }
    let work = (k as usize + 1) * n;
    if work > MAX_DIRECT_WORK_LOG2 {
        return Err(Error::TooLarge {
            what: "direct Gowers norm",
            n,
            max: MAX_DIRECT_WORK_LOG2 / (k as usize + 1),
        });
    }
    let len = 1usize << n;
    let v = f.values();
    let outer = k as usize - 1;
    let mask = len - 1;
    let total: f64 = (0..1usize << (outer * n))
        .into_par_iter()
        .map(|combo| {
            let dirs: Vec<usize> = (0..outer).map(|i| combo >> (i * n) & mask).collect();
            let offsets: Vec<usize> = (0..1usize << outer)
                .map(|w| {
                    dirs.iter()
                        .enumerate()
                        .filter(|(i, _)| w >> i & 1 == 1)
                        .fold(0, |acc, (_, d)| acc ^ d)
                })
                .collect();
            let g: Vec<f64> = (0..len)
                .map(|x| offsets.iter().map(|&o| v[x ^ o]).product())
                .collect();
            let mut acc = 0.0;
            for x in 0..len {
                let mut row = 0.0;
                for h in 0..len {
                    row += g[x ^ h];
                }
                acc += g[x] * row;
            }
            acc
        })
        .sum();
    let mean = total / 2f64.powi(work as i32);
    Ok(mean.max(0.0).powf(1.0 / f64::from(1u32 << k)))
}
