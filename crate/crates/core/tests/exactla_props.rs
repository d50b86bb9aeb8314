//! Property tests for the exact linear algebra kernel.

use proptest::prelude::*;
use yoneda_core::exactla::{span_equal, Field, Mat, PrimeField, Rationals};

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..10, r * c).prop_map(move |data| (r, c, data))
    })
}

fn build<K: Field>(k: K, r: usize, c: usize, data: &[i64]) -> Mat<K> {
    Mat::from_fn(k.clone(), r, c, |i, j| k.from_i64(data[i * c + j]))
}

proptest! {
    #[test]
    fn rref_is_idempotent((r, c, data) in small_matrix()) {
        let m = build(Rationals, r, c, &data);
        let once = m.rref().reduced;
        let twice = once.rref().reduced;
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn rank_equals_rank_of_transpose((r, c, data) in small_matrix()) {
        let m = build(PrimeField::default_prime(), r, c, &data);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let q = build(Rationals, r, c, &data);
        prop_assert_eq!(q.rank(), q.transpose().rank());
    }

    #[test]
    fn kernel_vectors_are_exactly_killed((r, c, data) in small_matrix()) {
        let m = build(PrimeField::default_prime(), r, c, &data);
        let k = m.field().clone();
        for v in m.kernel_basis() {
            prop_assert!(m.apply(&v).iter().all(|e| k.is_zero(e)));
        }
        // Rank-nullity.
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), c);
    }

    #[test]
    fn prime_and_rational_ranks_agree_on_small_entries((r, c, data) in small_matrix()) {
        // Entries are tiny, so no unlucky-prime collisions at p = 32003.
        let mp = build(PrimeField::default_prime(), r, c, &data);
        let mq = build(Rationals, r, c, &data);
        prop_assert_eq!(mp.rank(), mq.rank());
        prop_assert_eq!(mp.rref().pivots, mq.rref().pivots);
    }

    #[test]
    fn span_is_reflexive_and_scaling_invariant((r, c, data) in small_matrix()) {
        let m = build(Rationals, r, c, &data);
        let k = Rationals;
        let cols = m.columns();
        prop_assert!(span_equal(&k, &cols, &cols).unwrap());
        let doubled: Vec<Vec<_>> = cols
            .iter()
            .map(|v| v.iter().map(|e| k.mul(e, &k.from_i64(2))).collect())
            .collect();
        prop_assert!(span_equal(&k, &cols, &doubled).unwrap());
    }

    #[test]
    fn solve_solutions_check_out((r, c, data) in small_matrix(), rhs in proptest::collection::vec(-9i64..10, 1usize..6)) {
        let m = build(PrimeField::default_prime(), r, c, &data);
        let k = m.field().clone();
        if rhs.len() != r { return Ok(()); }
        let b = Mat::from_fn(k.clone(), r, 1, |i, _| k.from_i64(rhs[i]));
        if let Some(x) = m.solve(&b) {
            prop_assert_eq!(m.mul(&x), b);
        }
    }
}
