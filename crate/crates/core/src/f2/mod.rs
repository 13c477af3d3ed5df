//! Bit-level linear algebra over F_2: points, matrices, elimination, subspaces.

mod elim;
mod matrix;
mod point;
mod subspace;

pub use elim::{
    complete_basis_full_rank_projection, null_space, rank, read_linear_map, row_reduce,
    solve_linear_system,
};
pub use matrix::{symmetric_split, MatrixF2};
pub use point::{PointF2, MAX_ENUM_N, MAX_N};
pub use subspace::{orthogonal_complement, SubspaceF2};

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn span_members(n: usize, vs: &[PointF2]) -> std::collections::HashSet<PointF2> {
        let mut set = std::collections::HashSet::new();
        set.insert(PointF2::zero(n));
        for v in vs {
            let cur: Vec<_> = set.iter().cloned().collect();
            for c in cur {
                set.insert(&c ^ v);
            }
        }
        set
    }

    proptest! {
        #[test]
        fn split_recovers_b(seed in any::<u64>(), n in 1usize..40) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = MatrixF2::random_alternating(n, &mut rng);
            let m = symmetric_split(&b).unwrap();
            prop_assert!(m.is_strictly_upper());
            prop_assert_eq!(m.symmetrized(), b);
        }

        #[test]
        fn row_reduce_is_idempotent(seed in any::<u64>(), n in 1usize..100, k in 0usize..20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vs: Vec<_> = (0..k).map(|_| PointF2::random(n, &mut rng)).collect();
            let (basis, r) = row_reduce(&vs).unwrap();
            prop_assert_eq!(r, basis.len());
            let again = row_reduce(&basis).unwrap().0;
            prop_assert_eq!(again, basis);
        }

        #[test]
        fn membership_matches_span_enumeration(seed in any::<u64>(), n in 1usize..11, k in 0usize..8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vs: Vec<_> = (0..k).map(|_| PointF2::random(n, &mut rng)).collect();
            let s = SubspaceF2::span(n, &vs).unwrap();
            let members = span_members(n, &vs);
            for x in 0..(1u64 << n) {
                let p = PointF2::from_u64(n, x);
                prop_assert_eq!(s.contains(&p), members.contains(&p));
            }
        }

        #[test]
        fn complement_is_involution(seed in any::<u64>(), n in 1usize..30, k in 0usize..30) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vs: Vec<_> = (0..k).map(|_| PointF2::random(n, &mut rng)).collect();
            let s = SubspaceF2::span(n, &vs).unwrap();
            prop_assert_eq!(orthogonal_complement(&orthogonal_complement(&s)), s);
        }

        #[test]
        fn solver_finds_planted_solutions(seed in any::<u64>(), rows in 1usize..30, cols in 1usize..30) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = MatrixF2::random(rows, cols, &mut rng);
            let x = PointF2::random(cols, &mut rng);
            let b = a.mul_vec(&x);
            let sol = solve_linear_system(&a, &b).unwrap().expect("consistent");
            prop_assert_eq!(a.mul_vec(&sol), b);
        }
    }
}
