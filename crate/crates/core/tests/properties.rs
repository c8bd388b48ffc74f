use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ptrace_core::exact::{
    integer_rank, jacobian_det, parse_polynomial, span_dim, QMatrix, Rational, WeightedPolynomial, WeightedRing,
};
use ptrace_core::poisson::DEFAULT_BUDGET;
use ptrace_core::singularity::{jacobi_hilbert, EllipticFamily};

fn q(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

fn ring3() -> WeightedRing {
    WeightedRing::new(vec![1, 2, 3]).unwrap()
}

fn poly_strategy() -> impl Strategy<Value = WeightedPolynomial> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..=4), 0..5).prop_map(|terms| {
        let ring = ring3();
        WeightedPolynomial::from_terms(&ring, terms.into_iter().map(|((a, b, c), k)| (vec![a, b, c], q(k))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn derivatives_commute_and_obey_leibniz(f in poly_strategy(), g in poly_strategy()) {
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(f.derivative(i).derivative(j), f.derivative(j).derivative(i));
            }
            let lhs = (&f * &g).derivative(i);
            let rhs = &(&f.derivative(i) * &g) + &(&f * &g.derivative(i));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn jacobian_is_alternating(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let d = jacobian_det(&[f.clone(), g.clone(), h.clone()]).unwrap();
        let swapped = jacobian_det(&[g.clone(), f.clone(), h.clone()]).unwrap();
        prop_assert_eq!(&d, &-&swapped);
        prop_assert!(jacobian_det(&[f.clone(), f.clone(), h]).unwrap().is_zero());
    }

    #[test]
    fn display_round_trips(f in poly_strategy()) {
        let back = parse_polynomial(&f.to_string(), &ring3()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn span_dim_is_invariant(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..6),
                              scale in prop::sample::select(vec![-2i64, -1, 3, 7])) {
        let base: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let mut changed: Vec<Vec<Rational>> = base.iter().rev().map(|r| r.iter().map(|x| x * q(scale)).collect()).collect();
        // Adding a multiple of one row to another preserves the span.
        if changed.len() > 1 {
            let first = changed[0].clone();
            for (a, b) in changed[1].iter_mut().zip(&first) {
                *a += b * q(2);
            }
        }
        prop_assert_eq!(span_dim(&base), span_dim(&changed));
    }

    #[test]
    fn bareiss_matches_rational_elimination(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 5), 1..7)) {
        let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let m = QMatrix::from_integer_rows(&rows);
        prop_assert_eq!(integer_rank(ints), m.rank());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }
}

#[test]
fn large_random_rank_agrees_with_transpose() {
    let mut rng = StdRng::seed_from_u64(50);
    for rank in [0usize, 1, 17, 50] {
        // Product of 50 x r and r x 50 random factors has rank at most r.
        let left: Vec<Vec<i64>> = (0..50).map(|_| (0..rank).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let right: Vec<Vec<i64>> = (0..rank).map(|_| (0..50).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let product: Vec<Vec<i64>> = (0..50)
            .map(|i| (0..50).map(|j| (0..rank).map(|k| left[i][k] * right[k][j]).sum()).collect())
            .collect();
        let m = QMatrix::from_integer_rows(&product);
        let bareiss = integer_rank(product.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        assert_eq!(m.rank(), m.transpose().rank());
        assert_eq!(m.rank(), bareiss);
        assert!(bareiss <= rank);
        let r_left = QMatrix::from_integer_rows(&left).rank();
        let r_right = QMatrix::from_integer_rows(&right).rank();
        assert!(bareiss <= r_left.min(r_right));
    }
}

#[test]
fn elliptic_families_at_generic_parameters() {
    for fam in EllipticFamily::ALL {
        let weights = fam.weights();
        let closed = jacobi_hilbert(&weights, fam.degree()).unwrap();
        for lambda in [q(2), BigRational::new(BigInt::from(5), BigInt::from(3)), q(-7)] {
            let s = fam.surface(&lambda).unwrap();
            assert!(s.is_isolated().unwrap().isolated, "{fam:?} at {lambda}");
            let p = s.hp0_auto(None, DEFAULT_BUDGET).unwrap();
            assert_eq!(p.dims, closed, "{fam:?} at {lambda}");
        }
    }
}
