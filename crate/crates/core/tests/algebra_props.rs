//! Properties of the field arithmetic, group shapes and invariant computations.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quintic_aut::exactnum::{choose_prime, euler_phi, reduce_mod, zeta, Cyclotomic, Rational};
use quintic_aut::invartheory::{
    invariant_subspace, reynolds_dimension, semi_invariant_monomials, sweep_elementary_abelian, DiagonalAction,
};
use quintic_aut::polyring::SquareMatrix;
use quintic_aut::projgroup::GeneratedGroup;

fn random_cyclotomic(rng: &mut ChaCha8Rng, n: u64) -> Cyclotomic {
    let coeffs =
        (0..euler_phi(n)).map(|_| Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=4))).collect();
    Cyclotomic::from_coeffs(n, coeffs)
}

#[test]
fn reduction_is_a_ring_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [1u64, 3, 4, 5, 8, 12, 15, 16, 24, 40] {
        for skip in 0..2 {
            let e = choose_prime(n, skip).unwrap();
            let p = e.prime;
            for _ in 0..1000 {
                let (x, y) = (random_cyclotomic(&mut rng, n), random_cyclotomic(&mut rng, n));
                let (rx, ry) = (reduce_mod(&x, &e).unwrap(), reduce_mod(&y, &e).unwrap());
                assert_eq!(reduce_mod(&(&x + &y), &e).unwrap(), (rx + ry) % p);
                assert_eq!(reduce_mod(&(&x * &y), &e).unwrap(), rx * ry % p);
            }
            assert_eq!(reduce_mod(&Cyclotomic::one(n), &e).unwrap(), 1);
        }
    }
}

#[test]
fn roots_of_unity_are_recognised() {
    for n in 1..=64u64 {
        for k in 0..n {
            let g = num_integer::gcd(n, k);
            let (ord, j) = zeta(n, k as i64).as_root_of_unity().expect("root of unity");
            assert_eq!(ord, n / g, "ζ_{n}^{k}");
            assert_eq!(zeta(ord, j as i64).at(n), zeta(n, k as i64), "ζ_{n}^{k}");
        }
    }
}

fn diag_from(weights: &[i64], m: u64) -> SquareMatrix {
    SquareMatrix::diagonal_roots(m, weights)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// If B·A = A'·B for diagonal A, A', then b_ij = 0 whenever a_j ≠ a'_i.
    #[test]
    fn commuting_shape(
        a in proptest::collection::vec(0i64..4, 5),
        a2 in proptest::collection::vec(0i64..4, 5),
        entries in proptest::collection::vec(-2i64..3, 25),
        obey in any::<bool>(),
    ) {
        let m = 4;
        // B need not be invertible for the shape statement
        let b_entries: Vec<Cyclotomic> = (0..25)
            .map(|k| {
                let (i, j, v) = (k / 5, k % 5, entries[k]);
                if obey && a[j] != a2[i] { Cyclotomic::zero(m) } else { &Cyclotomic::from_int(v, m) * &zeta(m, v) }
            })
            .collect();
        let b = SquareMatrix::from_entries(5, m, b_entries);
        let (da, da2) = (diag_from(&a, m), diag_from(&a2, m));
        let commutes = b.mul(&da) == da2.mul(&b);
        if obey {
            prop_assert!(commutes);
        }
        if commutes {
            for i in 0..5 {
                for j in 0..5 {
                    if a[j] != a2[i] {
                        prop_assert!(b.get(i, j).is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn diagonal_invariants_are_monomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let m = rng.gen_range(2..=13u64);
        let w: Vec<i64> = (0..5).map(|_| rng.gen_range(0..m as i64)).collect();
        let basis = invariant_subspace(&[diag_from(&w, m)], 5).unwrap();
        let span = semi_invariant_monomials(&DiagonalAction::new(m, &w), 5, 0);
        let mut found: Vec<_> = basis
            .iter()
            .map(|p| {
                assert_eq!(p.len(), 1);
                let (e, c) = p.leading().unwrap();
                assert!(c.is_one());
                *e
            })
            .collect();
        found.sort();
        assert_eq!(found, span.monomials, "weights {w:?} mod {m}");
    }
}

#[test]
fn invariant_dimension_matches_reynolds() {
    assert!(common::reynolds_cross_check(3, 40).unwrap() >= 30);
}

#[test]
fn klein_symmetries_have_six_invariant_quintics() {
    let gens = vec![
        SquareMatrix::diagonal_roots(5, &[0, 1, 2, 3, 4]),
        SquareMatrix::permutation(&[1, 2, 3, 4, 0], 5),
    ];
    let group = GeneratedGroup::linear(&gens, 5000).unwrap();
    let basis = invariant_subspace(&gens, 5).unwrap();
    assert_eq!(basis.len(), 6);
    assert_eq!(reynolds_dimension(&group, 5), Rational::from_int(6));
}

#[test]
fn sweeps_are_deterministic() {
    for p in [2, 3] {
        let a = sweep_elementary_abelian(p);
        let b = sweep_elementary_abelian(p);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.passed);
    }
}
