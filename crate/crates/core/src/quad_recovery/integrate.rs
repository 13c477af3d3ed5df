use rand::Rng;

use crate::error::{check_dim, invalid, Result};
use crate::f2::{symmetric_split, MatrixF2};
use crate::fourier::{goldreich_levin_with, GlParams};
use crate::functions::{Oracle, QuadraticPhase, Twisted};

/// A phase with quadratic part `M = symmetric_split(B)` correlating with `f`.
///
/// Decodes `f · (-1)^{<x, Mx>}` at threshold `params.gamma` and keeps the
/// term of largest estimated coefficient (smallest `α` on ties); `c = 1`
/// when that coefficient is negative. Returns `None` on an empty list.
pub fn integrate<R: Rng + ?Sized>(
    f: &dyn Oracle,
    b: &MatrixF2,
    params: &GlParams,
    rng: &mut R,
) -> Result<Option<(QuadraticPhase, f64)>> {
    check_dim(f.n(), b.n_rows())?;
    if !b.is_symmetric() || !b.has_zero_diagonal() {
        return Err(invalid(
            "integrate needs a symmetric matrix with zero diagonal",
        ));
    }
    let m = symmetric_split(b)?;
    let twisted = Twisted::new(f, |x| m.quadratic(x));
    let list = goldreich_levin_with(&twisted, params, rng)?;
    let Some(top) = list.first() else {
        return Ok(None);
    };
    let q = QuadraticPhase::new(m.clone(), top.alpha.clone(), top.coeff < 0.0)?;
    Ok(Some((q, top.coeff.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{correlation_exact, make_noisy_codeword, TruthTable};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn recovers_linear_part_and_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(171);
        let n = 9;
        let q = QuadraticPhase::random(n, &mut rng);
        let b = q.bilinear_form();
        let t = q.truth_table().unwrap();
        let (got, c) = integrate(&t.oracle(), &b, &GlParams::new(0.3, 0.05), &mut rng)
            .unwrap()
            .unwrap();
        assert_eq!(got, q);
        assert!(c > 0.9);
        let neg = q.negated().truth_table().unwrap();
        let (got, _) = integrate(&neg.oracle(), &b, &GlParams::new(0.3, 0.05), &mut rng)
            .unwrap()
            .unwrap();
        assert_eq!(got, q.negated());
    }

    #[test]
    fn noisy_phase_correlation_matches_estimate() {
        let mut rng = ChaCha8Rng::seed_from_u64(172);
        let n = 10;
        let gamma = 0.2;
        let q = QuadraticPhase::random(n, &mut rng);
        let f = make_noisy_codeword(&q, 0.3, &mut rng).unwrap();
        let (got, c) = integrate(
            &f.oracle(),
            &q.bilinear_form(),
            &GlParams::new(gamma, 0.05),
            &mut rng,
        )
        .unwrap()
        .unwrap();
        let exact = correlation_exact(&f, &got.truth_table().unwrap()).unwrap();
        assert!(exact >= c - gamma / 2.0, "{exact} vs {c}");
    }

    #[test]
    fn rejects_non_alternating() {
        let mut rng = ChaCha8Rng::seed_from_u64(173);
        let t = TruthTable::constant(3, 1.0).unwrap();
        let b = MatrixF2::identity(3);
        assert!(integrate(&t.oracle(), &b, &GlParams::new(0.3, 0.05), &mut rng).is_err());
    }
}
