//! Restriction of a form and its symmetries to a hyperplane {L = 0}.

use num_integer::Integer;

use crate::exactnum::Cyclotomic;
use crate::polyring::{Exponent, Polynomial, SquareMatrix};

use super::CatalogError;

/// A form restricted to L = 0 in the coordinates left after solving L for its last variable.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub form: Polynomial,
    pub generators: Vec<SquareMatrix>,
    /// Index of the eliminated variable in the ambient coordinates.
    pub solved: usize,
}

/// Solves L = 0 for the highest-index variable x_k with nonzero coefficient and
/// conjugates each generator through the section y ↦ x and the projection dropping x_k.
pub fn restrict_to_hyperplane(f: &Polynomial, l: &Polynomial, gens: &[SquareMatrix]) -> Result<Restriction, CatalogError> {
    let n = f.nvars();
    if l.nvars() != n || l.degree() != 1 {
        return Err(CatalogError::Malformed("hyperplane must be a linear form in the ambient variables".into()));
    }
    let m = l.conductor();
    let coef: Vec<Cyclotomic> =
        (0..n).map(|i| l.coeff(&Exponent::var_power(n, i, 1)).cloned().unwrap_or_else(|| Cyclotomic::zero(m))).collect();
    let k = (0..n).rev().find(|&i| !coef[i].is_zero()).ok_or_else(|| CatalogError::Malformed("zero hyperplane".into()))?;
    let inv = coef[k].inv().expect("nonzero");
    let keep: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    // section S: x_i = y_pos(i) for i ≠ k, x_k = −Σ (l_j / l_k) y_pos(j)
    let section: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|i| {
            keep.iter()
                .map(|&j| {
                    if i == k {
                        -(&coef[j] * &inv)
                    } else if i == j {
                        Cyclotomic::one(m)
                    } else {
                        Cyclotomic::zero(m)
                    }
                })
                .collect()
        })
        .collect();
    let forms: Vec<Polynomial> = section
        .iter()
        .map(|row| {
            let terms = row.iter().enumerate().map(|(c, x)| (Exponent::var_power(n - 1, c, 1), x.clone()));
            Polynomial::from_terms(n - 1, 1, m, terms).expect("linear form")
        })
        .collect();
    let form = f.substitute_linear(&forms);
    let mut generators = Vec::with_capacity(gens.len());
    for (gi, a) in gens.iter().enumerate() {
        if a.n() != n {
            return Err(CatalogError::Malformed(format!("generator {} is not {n}x{n}", gi + 1)));
        }
        if l.semi_invariance_factor(a)?.is_none() {
            return Err(CatalogError::HyperplaneNotPreserved(gi));
        }
        let c = a.conductor().lcm(&m);
        let a = a.at(c);
        let rows: Vec<Vec<Cyclotomic>> = keep
            .iter()
            .map(|&i| {
                (0..n - 1)
                    .map(|col| {
                        (0..n).fold(Cyclotomic::zero(c), |acc, j| {
                            let s = &section[j][col];
                            if s.is_zero() || a.get(i, j).is_zero() {
                                acc
                            } else {
                                &acc + &(a.get(i, j) * &s.at(c))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        generators.push(SquareMatrix::from_rows(rows)?);
    }
    Ok(Restriction { form, generators, solved: k })
}
