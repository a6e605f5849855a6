//! Invariant and semi-invariant forms under diagonal and general linear actions,
//! plus the exhaustive exclusion sweeps over diagonal weight lattices.

pub mod sweep;

use num_integer::Integer;

use crate::exactnum::{Cyclotomic, Rational};
use crate::polyring::linalg;
use crate::polyring::{monomials, Exponent, PolyError, Polynomial, SquareMatrix};
use crate::projgroup::GeneratedGroup;

pub use sweep::{sweep_elementary_abelian, sweep_order25, CandidateOutcome, SweepReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvarError {
    #[error("no generators given")]
    NoGenerators,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// diag(ζ_N^{w_1}, ..., ζ_N^{w_n}), recorded by its weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalAction {
    pub modulus: u64,
    pub weights: Vec<i64>,
}

impl DiagonalAction {
    pub fn new(modulus: u64, weights: &[i64]) -> Self {
        assert!(modulus >= 1);
        let m = modulus as i64;
        DiagonalAction { modulus, weights: weights.iter().map(|w| w.rem_euclid(m)).collect() }
    }

    /// ⟨w, e⟩ mod N: x^e is multiplied by ζ_N to this power.
    pub fn weight(&self, e: &Exponent) -> i64 {
        e.dot(&self.weights).rem_euclid(self.modulus as i64)
    }

    pub fn matrix(&self) -> SquareMatrix {
        SquareMatrix::diagonal_roots(self.modulus, &self.weights)
    }
}

/// An ordered set of monomials of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSpan {
    pub n: usize,
    pub d: u32,
    pub monomials: Vec<Exponent>,
}

impl MonomialSpan {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.monomials.binary_search(e).is_ok()
    }
}

/// Degree-d monomials of weight χ under the diagonal action.
pub fn semi_invariant_monomials(act: &DiagonalAction, d: u32, chi: i64) -> MonomialSpan {
    let n = act.weights.len();
    let chi = chi.rem_euclid(act.modulus as i64);
    let monomials = monomials(n, d).into_iter().filter(|e| act.weight(e) == chi).collect();
    MonomialSpan { n, d, monomials }
}

/// The induced matrix ρ_d(A) on degree-d forms; column j holds A(m_j) in the monomial basis.
pub fn induced_action(a: &SquareMatrix, d: u32) -> Vec<Vec<Cyclotomic>> {
    let mons = monomials(a.n(), d);
    let m = a.conductor();
    let mut rows = vec![vec![Cyclotomic::zero(m); mons.len()]; mons.len()];
    for (j, e) in mons.iter().enumerate() {
        let img = Polynomial::monomial(*e, Cyclotomic::one(m)).apply_matrix(a).expect("dimensions agree");
        for (f, c) in img.terms() {
            let i = mons.binary_search(f).expect("degree preserved");
            rows[i][j] = c.at(m);
        }
    }
    rows
}

/// trace ρ_d(A), the complete homogeneous symmetric function h_d of the eigenvalues,
/// obtained from the characteristic polynomial by Newton's recursion.
pub fn induced_trace(a: &SquareMatrix, d: u32) -> Cyclotomic {
    let n = a.n();
    let m = a.conductor();
    let e: Vec<Cyclotomic> = if a.is_diagonal() {
        elementary_from_roots(&(0..n).map(|i| a.get(i, i).clone()).collect::<Vec<_>>(), m)
    } else {
        let c = a.char_poly();
        (0..=n).map(|k| if k % 2 == 0 { c[n - k].clone() } else { -&c[n - k] }).collect()
    };
    let mut h = vec![Cyclotomic::one(m)];
    for k in 1..=d as usize {
        let mut acc = Cyclotomic::zero(m);
        for i in 1..=k.min(n) {
            let t = &e[i] * &h[k - i];
            acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        h.push(acc);
    }
    h.pop().unwrap()
}

fn elementary_from_roots(roots: &[Cyclotomic], m: u64) -> Vec<Cyclotomic> {
    let mut e = vec![Cyclotomic::one(m)];
    for r in roots {
        let mut next = e.clone();
        next.push(Cyclotomic::zero(m));
        for k in 1..next.len() {
            next[k] = &next[k] + &(&e[k - 1] * r);
        }
        e = next;
    }
    e
}

/// (1/|G|) Σ_g trace ρ_d(g) for a finite matrix group: the dimension of the degree-d invariants.
pub fn reynolds_dimension(group: &GeneratedGroup, d: u32) -> Rational {
    let m = group.conductor();
    let mut sum = Cyclotomic::zero(m);
    for g in group.elements() {
        sum = &sum + &induced_trace(g, d);
    }
    let r = sum.as_rational().expect("character sums are rational");
    &r * &Rational::new(1, group.order() as i64)
}

fn poly_from_vec(mons: &[Exponent], v: &[Cyclotomic], d: u32, m: u64) -> Polynomial {
    let n = mons.first().map_or(0, |e| e.nvars());
    Polynomial::from_terms(n, d, m, mons.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(e, c)| (*e, c.clone())))
        .expect("monomials are homogeneous")
}

/// Basis (reduced echelon form, canonical monomial order) of the degree-d forms F with A(F) = F for every generator.
pub fn invariant_subspace(gens: &[SquareMatrix], d: u32) -> Result<Vec<Polynomial>, InvarError> {
    let first = gens.first().ok_or(InvarError::NoGenerators)?;
    let n = first.n();
    if let Some(g) = gens.iter().find(|g| g.n() != n) {
        return Err(PolyError::DimensionMismatch(format!("{n}x{n} and {}x{} generators", g.n(), g.n())).into());
    }
    let m = gens.iter().fold(1u64, |acc, g| acc.lcm(&g.conductor()));
    let gens: Vec<SquareMatrix> = gens.iter().map(|g| g.at(m)).collect();
    let mons = monomials(n, d);
    let dim = mons.len();

    // diagonal generators select monomials directly
    let mut keep: Vec<bool> = vec![true; dim];
    for g in gens.iter().filter(|g| g.is_diagonal()) {
        for (k, e) in mons.iter().enumerate() {
            if keep[k] {
                let mut c = Cyclotomic::one(m);
                for i in 0..n {
                    c = &c * &g.get(i, i).pow(e.get(i) as i64);
                }
                keep[k] = c.is_one();
            }
        }
    }
    let mut basis: Vec<Vec<Cyclotomic>> = (0..dim)
        .filter(|&k| keep[k])
        .map(|k| {
            let mut v = vec![Cyclotomic::zero(m); dim];
            v[k] = Cyclotomic::one(m);
            v
        })
        .collect();

    // then restrict the current space by each remaining generator:
    // find c with Σ c_j (A(b_j) − b_j) = 0
    for g in gens.iter().filter(|g| !g.is_diagonal()) {
        if basis.is_empty() {
            break;
        }
        let mut cols = Vec::with_capacity(basis.len());
        for b in &basis {
            let p = poly_from_vec(&mons, b, d, m);
            let diff = p.apply_matrix(g)?.sub(&p);
            let mut col = vec![Cyclotomic::zero(m); dim];
            for (e, c) in diff.terms() {
                col[mons.binary_search(e).expect("degree preserved")] = c.at(m);
            }
            cols.push(col);
        }
        let rows: Vec<Vec<Cyclotomic>> = (0..dim).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let ker = linalg::kernel(&rows, basis.len(), m);
        basis = ker
            .iter()
            .map(|c| {
                let mut v = vec![Cyclotomic::zero(m); dim];
                for (cj, bj) in c.iter().zip(&basis) {
                    if cj.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(bj) {
                        if !y.is_zero() {
                            *x = &*x + &(cj * y);
                        }
                    }
                }
                v
            })
            .collect();
    }
    linalg::rref(&mut basis);
    Ok(basis.iter().map(|v| poly_from_vec(&mons, v, d, m)).collect())
}

fn is_prime_power(q: u64) -> bool {
    q >= 2 && crate::exactnum::primefield::prime_factors(q).len() == 1
}

/// Prime powers q ≤ bound, coprime to d and d − 1, with (1 − d)^l ≡ 1 (mod q) for some 1 ≤ l ≤ n + 2.
pub fn admissible_primary_orders(n: usize, d: u64, bound: u64) -> Vec<u64> {
    assert!(d >= 3);
    (2..=bound)
        .filter(|&q| is_prime_power(q) && q.gcd(&d) == 1 && q.gcd(&(d - 1)) == 1)
        .filter(|&q| {
            let base = ((1 - d as i128).rem_euclid(q as i128)) as u64;
            let mut x = 1u64;
            (1..=n + 2).any(|_| {
                x = (x as u128 * base as u128 % q as u128) as u64;
                x == 1
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::zeta;
    use crate::polyring::parse_poly;

    fn exps(text: &str) -> Vec<Exponent> {
        let mut v = parse_poly(text, 5, 1).unwrap().support();
        v.sort();
        v
    }

    #[test]
    fn sylow13_shape() {
        let span = semi_invariant_monomials(&DiagonalAction::new(13, &[1, -4, 3, 0, 0]), 5, 0);
        let expect = exps(
            "x1^4*x2+x2^4*x3+x3^4*x1+x1*x2*x3*x4^2+x1*x2*x3*x4*x5+x1*x2*x3*x5^2\
             +x4^5+x4^4*x5+x4^3*x5^2+x4^2*x5^3+x4*x5^4+x5^5",
        );
        assert_eq!(span.monomials, expect);
    }

    #[test]
    fn sylow17_shape() {
        let span = semi_invariant_monomials(&DiagonalAction::new(17, &[1, -4, 16, 4, 0]), 5, 0);
        let expect = exps(
            "x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x1+x5^5+x1*x2*x3*x4*x5+x1*x3*x5^3+x2*x4*x5^3\
             +x1^2*x3^2*x5+x2^2*x4^2*x5",
        );
        assert_eq!(span.monomials, expect);
    }

    #[test]
    fn sylow41_and_c128_shapes() {
        let s41 = semi_invariant_monomials(&DiagonalAction::new(41, &[1, -4, 16, 18, 10]), 5, 0);
        assert_eq!(s41.monomials, exps("x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^4*x1+x1*x2*x3*x4*x5"));
        let s128 = semi_invariant_monomials(&DiagonalAction::new(128, &[1, -4, 16, -64, 0]), 5, 0);
        assert_eq!(s128.monomials, exps("x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^5+x4^2*x5^3"));
        assert_eq!(semi_invariant_monomials(&DiagonalAction::new(7, &[0; 5]), 5, 0).len(), 126);
    }

    #[test]
    fn diagonal_subspace_matches_monomials() {
        let a = SquareMatrix::diagonal_roots(5, &[1, 0, 0, 0, 0]);
        let basis = invariant_subspace(&[a], 5).unwrap();
        assert!(basis.iter().all(|p| p.len() == 1));
        assert!(basis.iter().all(|p| p.support()[0].get(0) % 5 == 0));
        let all = invariant_subspace(&[SquareMatrix::identity(5, 1)], 5).unwrap();
        assert_eq!(all.len(), 126);
    }

    #[test]
    fn traces_match_induced_matrix() {
        let a = SquareMatrix::from_rows(vec![
            vec![Cyclotomic::zero(4), zeta(4, 1), Cyclotomic::zero(4)],
            vec![Cyclotomic::one(4), Cyclotomic::one(4), Cyclotomic::zero(4)],
            vec![Cyclotomic::zero(4), Cyclotomic::zero(4), Cyclotomic::from_int(-1, 4)],
        ])
        .unwrap();
        for d in 1..=4 {
            let rho = induced_action(&a, d);
            let tr = rho.iter().enumerate().fold(Cyclotomic::zero(4), |acc, (i, r)| &acc + &r[i]);
            assert_eq!(tr, induced_trace(&a, d), "degree {d}");
        }
    }

    #[test]
    fn primary_orders() {
        assert_eq!(admissible_primary_orders(3, 5, 100), vec![3, 13, 17, 41]);
        assert!(admissible_primary_orders(4, 5, 1).is_empty());
    }
}
