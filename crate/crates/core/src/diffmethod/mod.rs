//! The differential method: ranks of the spaces of i-th order partial derivatives,
//! which are invariant under invertible linear changes of coordinates.

use serde::Serialize;

use crate::exactnum::{reduce_mod, Cyclotomic, ExactError, PrimeEmbedding};
use crate::polyring::linalg;
use crate::polyring::{monomials, Exponent, Polynomial};

/// rank(D_i^F) for i = 1..d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile(#[serde(serialize_with = "crate::decimal::seq")] pub Vec<usize>);

impl RankProfile {
    /// rank at order i (1-based).
    pub fn rank(&self, i: usize) -> usize {
        self.0[i - 1]
    }
}

/// Rows ∂^α F, |α| = i, in the degree-(d − i) monomial basis.
fn derivative_rows(f: &Polynomial, i: u32) -> (Vec<Exponent>, Vec<Polynomial>) {
    let n = f.nvars();
    let target = monomials(n, f.degree() - i);
    let ders = monomials(n, i).iter().map(|a| f.higher_partial(a)).filter(|p| !p.is_zero()).collect();
    (target, ders)
}

/// Exact rank over Q(ζ_N) of {∂^α F : |α| = i}.
pub fn diff_rank(f: &Polynomial, i: u32) -> usize {
    assert!(i >= 1 && i <= f.degree(), "order must lie in 1..=degree");
    let m = f.conductor();
    let (target, ders) = derivative_rows(f, i);
    let rows: Vec<Vec<Cyclotomic>> = ders
        .iter()
        .map(|p| {
            let mut v = vec![Cyclotomic::zero(m); target.len()];
            for (e, c) in p.terms() {
                v[target.binary_search(e).expect("degree d - i")] = c.clone();
            }
            v
        })
        .collect();
    linalg::rank(&rows)
}

/// Rank of the reduction mod p; never exceeds [`diff_rank`].
pub fn diff_rank_mod_p(f: &Polynomial, i: u32, e: &PrimeEmbedding) -> Result<usize, ExactError> {
    let (target, ders) = derivative_rows(f, i);
    let mut rows = Vec::with_capacity(ders.len());
    for p in &ders {
        let mut v = vec![0u64; target.len()];
        for (ex, c) in p.terms() {
            v[target.binary_search(ex).expect("degree d - i")] = reduce_mod(c, e)?;
        }
        rows.push(v);
    }
    Ok(linalg::rank_mod_p(rows, e.prime))
}

pub fn diff_profile(f: &Polynomial) -> RankProfile {
    RankProfile((1..=f.degree()).map(|i| diff_rank(f, i)).collect())
}

/// Least order i at which the ranks differ; such an i proves F and G are not linearly equivalent.
pub fn equivalence_obstruction(f: &Polynomial, g: &Polynomial) -> Option<u32> {
    assert_eq!((f.nvars(), f.degree()), (g.nvars(), g.degree()));
    (1..=f.degree()).find(|&i| diff_rank(f, i) != diff_rank(g, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    #[test]
    fn ranks_from_examples() {
        assert_eq!(diff_rank(&parse_poly("4*x1^3*x2 + x5^4", 5, 1).unwrap(), 1), 3);
        assert_eq!(diff_rank(&parse_poly("x1^5+x2^5+x3^5+x4^5+x5^5", 5, 1).unwrap(), 1), 5);
        assert_eq!(diff_rank(&parse_poly("x1^2+2*x1*x2+x2^2", 2, 1).unwrap(), 1), 1);
        assert_eq!(diff_profile(&parse_poly("x1^5", 5, 1).unwrap()).0, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn klein_partial_combinations() {
        // h = Σ l_i ∂F/∂y_i has rank(D_1^h) = 3 exactly when one l_i is nonzero
        let klein = parse_poly("x1^4*x2+x2^4*x3+x3^4*x4+x4^4*x5+x5^4*x1", 5, 1).unwrap();
        let partials: Vec<Polynomial> = (0..5).map(|i| klein.partial(i)).collect();
        for mask in 1u32..32 {
            let h = (0..5).filter(|i| mask >> i & 1 == 1).fold(Polynomial::zero(5, 4, 1), |acc, i| {
                acc.add(&partials[i].scale(&Cyclotomic::from_int(i as i64 + 1, 1)))
            });
            let r = diff_rank(&h, 1);
            if mask.count_ones() == 1 {
                assert_eq!(r, 3, "mask {mask:05b}");
            } else {
                assert!(r >= 4, "mask {mask:05b}: rank {r}");
            }
        }
    }

    #[test]
    fn obstruction() {
        let f = parse_poly("x1^2+2*x1*x2+x2^2", 2, 1).unwrap();
        let g = parse_poly("x1^2", 2, 1).unwrap();
        assert_eq!(equivalence_obstruction(&f, &g), None);
        assert_eq!(equivalence_obstruction(&f, &f), None);
    }
}
