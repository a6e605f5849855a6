//! Seeded cross-checks shared by the property tests and the acceptance runner.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quintic_aut::exactnum::{zeta, Cyclotomic, PrimeEmbedding, Rational};
use quintic_aut::invartheory::{invariant_subspace, reynolds_dimension};
use quintic_aut::polyring::{monomials, Exponent, Polynomial, SquareMatrix};
use quintic_aut::projgroup::{GeneratedGroup, GroupError};
use quintic_aut::smoothcert::groebner::Poly;
use quintic_aut::smoothcert::{jacobian_smooth_mod_p, reduce_poly};
use quintic_aut::stabkit::snf::{enumerate, solve_mod_one, Congruence};

const P: u64 = 11;

/// GF(121) as F_11[i] with i² = −1 (−1 is a non-square since 11 ≡ 3 mod 4).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct F121(u64, u64);

impl F121 {
    const ZERO: F121 = F121(0, 0);
    const ONE: F121 = F121(1, 0);

    fn add(self, o: F121) -> F121 {
        F121((self.0 + o.0) % P, (self.1 + o.1) % P)
    }

    fn mul(self, o: F121) -> F121 {
        F121((self.0 * o.0 + P * P - self.1 * o.1 % P) % P, (self.0 * o.1 + self.1 * o.0) % P)
    }

    fn from(c: u64) -> F121 {
        F121(c % P, 0)
    }
}

fn eval(f: &Poly, pt: &[F121; 3]) -> F121 {
    f.iter().fold(F121::ZERO, |acc, (m, c)| {
        let mut t = F121::from(*c);
        for (i, &x) in pt.iter().enumerate() {
            for _ in 0..m.exps()[i] {
                t = t.mul(x);
            }
        }
        acc.add(t)
    })
}

/// Projective points of P²(K) for K = F_11 (`ext` false) or F_121, one representative each.
fn points(ext: bool) -> Vec<[F121; 3]> {
    let field: Vec<F121> =
        if ext { (0..P * P).map(|k| F121(k % P, k / P)).collect() } else { (0..P).map(F121::from).collect() };
    let mut out = vec![[F121::ZERO, F121::ZERO, F121::ONE]];
    for &b in &field {
        out.push([F121::ZERO, F121::ONE, b]);
    }
    for &b in &field {
        for &c in &field {
            out.push([F121::ONE, b, c]);
        }
    }
    out
}

fn random_plane_quintic(rng: &mut ChaCha8Rng, singular_at_e1: bool) -> Polynomial {
    let mons: Vec<Exponent> = monomials(3, 5)
        .into_iter()
        // x1^5, x1^4*x2, x1^4*x3 are exactly the monomials not vanishing to order two at [1:0:0]
        .filter(|e| !singular_at_e1 || e.get(0) < 4)
        .collect();
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(3..=7) {
        terms.push((mons[rng.gen_range(0..mons.len())], Rational::from_int(rng.gen_range(1..=6))));
    }
    if !singular_at_e1 {
        // pure powers keep most samples smooth; the point search still decides
        for i in 0..3 {
            if rng.gen_bool(0.7) {
                terms.push((Exponent::var_power(3, i, 5), Rational::one()));
            }
        }
    }
    Polynomial::with_rational_coeffs(3, 5, &terms)
}

/// Jacobian verdicts at p = 11 for random sparse plane quintics against point search over
/// P²(F_11) and P²(F_121). Returns (smooth, singular) counts.
pub fn plane_quintic_cross_check(seed: u64, cases: usize) -> Result<(usize, usize), String> {
    let e = PrimeEmbedding::canonical(P, 1).unwrap();
    let (small, large) = (points(false), points(true));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut smooth, mut singular) = (0, 0);
    for case in 0..cases {
        let f = random_plane_quintic(&mut rng, case % 4 == 3);
        if f.is_zero() {
            continue;
        }
        let partials: Vec<Poly> = (0..3).map(|i| reduce_poly(&f.partial(i), &e).unwrap()).collect();
        let sing = |pts: &[[F121; 3]]| pts.iter().any(|pt| partials.iter().all(|g| eval(g, pt) == F121::ZERO));
        let verdict = jacobian_smooth_mod_p(&f, &e).map_err(|x| x.to_string())?;
        if verdict {
            smooth += 1;
            if sing(&large) {
                return Err(format!("{f} declared smooth mod 11 but has a singular point over F_121"));
            }
        } else {
            singular += 1;
        }
        if sing(&small) && verdict {
            return Err(format!("{f} has a singular point over F_11"));
        }
    }
    Ok((smooth, singular))
}

fn all_vectors(m: i64, len: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..m.pow(len as u32)).map(move |mut code| {
        (0..len)
            .map(|_| {
                let v = code % m;
                code /= m;
                v
            })
            .collect()
    })
}

/// Solutions of random systems Σ a_ij x_j ≡ b_i (mod 1) against enumeration of x ∈ (1/M)Z³, M ≤ 15.
pub fn snf_cross_check(seed: u64, cases: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let nrows = rng.gen_range(1..5);
        let rows: Vec<Vec<i64>> = (0..nrows).map(|_| (0..3).map(|_| rng.gen_range(-3..6)).collect()).collect();
        let b: Vec<Rational> = (0..nrows).map(|_| Rational::new(rng.gen_range(0..12), rng.gen_range(1..=6))).collect();
        let m = rng.gen_range(1..=15i64);
        let brute: std::collections::BTreeSet<Vec<i64>> = all_vectors(m, 3)
            .filter(|k| {
                rows.iter().zip(&b).all(|(r, bi)| {
                    let lhs = Rational::new(r.iter().zip(k).map(|(a, x)| a * x).sum::<i64>(), m);
                    (&lhs - bi).is_integer()
                })
            })
            .collect();
        let found: std::collections::BTreeSet<Vec<i64>> = match solve_mod_one(&rows, &b, 3) {
            Congruence::Inconsistent => Default::default(),
            Congruence::Infinite => continue,
            Congruence::Finite { particular, generators } => enumerate(&particular, &generators)
                .iter()
                .filter_map(|x| {
                    x.iter()
                        .map(|q| {
                            let (a, d) = q.as_small()?;
                            (m % d == 0).then_some(a * (m / d))
                        })
                        .collect()
                })
                .collect(),
        };
        if found != brute {
            return Err(format!("rows {rows:?} rhs {b:?} M={m}: {} solutions, brute force {}", found.len(), brute.len()));
        }
    }
    Ok(())
}

fn random_semiperm(rng: &mut ChaCha8Rng, n: usize, m: u64) -> SquareMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let scale: Vec<Cyclotomic> = (0..n).map(|_| zeta(m, rng.gen_range(0..m as i64))).collect();
    SquareMatrix::semi_permutation(&perm, &scale)
}

/// Dimension of invariant_subspace against the Reynolds character average on random
/// semi-permutation groups of order ≤ 5000; also checks each basis form is invariant.
/// Returns the number of groups checked.
pub fn reynolds_cross_check(seed: u64, cases: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for case in 0..cases {
        let n = 3 + case % 2;
        let m = [2u64, 3, 4, 6][case % 4];
        let gens: Vec<SquareMatrix> = (0..rng.gen_range(1..=2)).map(|_| random_semiperm(&mut rng, n, m)).collect();
        let group = match GeneratedGroup::linear(&gens, 5000) {
            Ok(g) => g,
            Err(GroupError::CapExceeded(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        for d in [3u32, 5] {
            let basis = invariant_subspace(&gens, d).map_err(|e| e.to_string())?;
            let avg = reynolds_dimension(&group, d);
            if Rational::from_int(basis.len() as i64) != avg {
                return Err(format!("case {case} degree {d}: basis {} vs Reynolds {avg}", basis.len()));
            }
            for p in &basis {
                for g in &gens {
                    if !p.semi_invariance_factor(g).map_err(|e| e.to_string())?.is_some_and(|l| l.is_one()) {
                        return Err(format!("case {case}: basis form {p} is not invariant"));
                    }
                }
            }
        }
        checked += 1;
    }
    Ok(checked)
}
