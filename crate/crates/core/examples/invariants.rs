//! Invariant and semi-invariant quintics: a full invariant subspace for the Klein
//! symmetries, its Reynolds cross-check, and monomial spans of diagonal actions.
use quintic_aut::invartheory::{invariant_subspace, reynolds_dimension, semi_invariant_monomials, DiagonalAction};
use quintic_aut::polyring::SquareMatrix;
use quintic_aut::projgroup::GeneratedGroup;

fn main() {
    let gens = vec![SquareMatrix::diagonal_roots(5, &[0, 1, 2, 3, 4]), SquareMatrix::permutation(&[1, 2, 3, 4, 0], 5)];
    let basis = invariant_subspace(&gens, 5).expect("invariants");
    let group = GeneratedGroup::linear(&gens, 5000).expect("closure");
    println!("Klein symmetries (linear order {}): {} invariant quintics", group.order(), basis.len());
    println!("  Reynolds average: {}", reynolds_dimension(&group, 5));
    for p in &basis {
        println!("  {p}");
    }

    for (m, w) in [(13u64, [1, -4, 3, 0, 0]), (17, [1, -4, 16, 4, 0]), (41, [1, -4, 16, 18, 10])] {
        let span = semi_invariant_monomials(&DiagonalAction::new(m, &w), 5, 0);
        println!("weights {w:?} mod {m}: {} invariant monomials", span.len());
    }
}
