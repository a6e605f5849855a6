//! Enumerates the projective group generated by the symmetries of the Fermat quintic
//! and prints its order and fingerprint.
use std::time::Instant;

use quintic_aut::polyring::SquareMatrix;
use quintic_aut::projgroup::{GeneratedGroup, DEFAULT_CAP};

fn main() {
    let mut gens = vec![
        SquareMatrix::permutation(&[1, 0, 2, 3, 4], 1),
        SquareMatrix::permutation(&[1, 2, 0, 3, 4], 1),
        SquareMatrix::permutation(&[1, 2, 3, 4, 0], 1),
    ];
    for i in 1..5 {
        let mut w = [0i64; 5];
        w[i] = 1;
        gens.push(SquareMatrix::diagonal_roots(5, &w));
    }
    let t = Instant::now();
    let g = GeneratedGroup::projective(&gens, DEFAULT_CAP).expect("closure");
    println!("order {} in {:.2?}", g.order(), t.elapsed());
    let t = Instant::now();
    let fp = g.fingerprint();
    println!("{fp:?} in {:.2?}", t.elapsed());
}
