use rand::Rng;

use super::params::ModelParams;
use crate::bsg::{bsg_test, BsgParams, PhiSampler};
use crate::f2::PointF2;

/// Model-Test: `Γ φ(v) = c` and the BSG-Test of `v` against `u`.
/// The restriction is checked first and short-circuits.
pub fn model_test<R: Rng + ?Sized>(
    sampler: &PhiSampler<'_>,
    u: &PointF2,
    v: &PointF2,
    bsg: &BsgParams,
    model: &ModelParams,
    rng: &mut R,
) -> bool {
    model.admits(&sampler.sample_phi(v)) && bsg_test(sampler, u, v, bsg, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bsg::{choose_bsg_params, Profile};
    use crate::f2::MatrixF2;
    use crate::functions::QuadraticPhase;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_model_is_bsg_test() {
        let mut rng = ChaCha8Rng::seed_from_u64(211);
        let q = QuadraticPhase::random(8, &mut rng);
        let t = q.truth_table().unwrap();
        let o = t.oracle();
        let s = PhiSampler::new(&o, Profile::practical().phi_config(0.5).unwrap(), 2);
        let bsg = choose_bsg_params(0.5, &Profile::practical(), &mut rng).unwrap();
        let u = PointF2::random(8, &mut rng);
        let model = ModelParams::trivial(8);
        for i in 0..20 {
            let v = PointF2::random(8, &mut rng);
            let a = model_test(&s, &u, &v, &bsg, &model, &mut crate::rng::stream(1, "p", i));
            let b = bsg_test(&s, &u, &v, &bsg, &mut crate::rng::stream(1, "p", i));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn restriction_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(212);
        let n = 12;
        let q = QuadraticPhase::random(n, &mut rng);
        let t = q.truth_table().unwrap();
        let o = t.oracle();
        let s = PhiSampler::new(&o, Profile::practical().phi_config(0.5).unwrap(), 4);
        let bsg = choose_bsg_params(0.5, &Profile::practical(), &mut rng).unwrap();
        let u = PointF2::random(n, &mut rng);
        let model = ModelParams::random(2, n, None, &mut rng).unwrap();
        let b = q.bilinear_form();
        let mut accepted = 0;
        for _ in 0..200 {
            let v = PointF2::random(n, &mut rng);
            if model_test(&s, &u, &v, &bsg, &model, &mut rng) {
                accepted += 1;
                assert!(model.admits(&b.mul_vec(&v)));
            }
        }
        assert!(accepted > 0);
        let never = ModelParams::new(MatrixF2::zeros(1, n), PointF2::from_u64(1, 1)).unwrap();
        assert!(!model_test(&s, &u, &u, &bsg, &never, &mut rng));
    }
}
