use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::exactnum::{Cyclotomic, Rational};

use super::exponent::Exponent;
use super::matrix::SquareMatrix;
use super::PolyError;

/// A homogeneous polynomial over Q(ζ_N).
///
/// Only nonzero coefficients are stored, all at the ambient conductor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    degree: u32,
    conductor: u64,
    terms: BTreeMap<Exponent, Cyclotomic>,
}

impl Polynomial {
    pub fn zero(nvars: usize, degree: u32, conductor: u64) -> Self {
        Polynomial { nvars, degree, conductor, terms: BTreeMap::new() }
    }

    /// Builds from terms, merging duplicates; every exponent must have the given degree.
    pub fn from_terms(
        nvars: usize,
        degree: u32,
        conductor: u64,
        terms: impl IntoIterator<Item = (Exponent, Cyclotomic)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(nvars, degree, conductor);
        for (e, c) in terms {
            if e.nvars() != nvars {
                return Err(PolyError::DimensionMismatch(format!("monomial in {} variables, expected {nvars}", e.nvars())));
            }
            if e.degree() != degree {
                return Err(PolyError::NotHomogeneous);
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    /// The monomial c·x^e.
    pub fn monomial(e: Exponent, c: Cyclotomic) -> Self {
        let mut p = Self::zero(e.nvars(), e.degree(), c.conductor());
        p.add_term(e, &c);
        p
    }

    /// Σ c_i x^{e_i} with rational coefficients 1, 2, 3, ... (or a given list).
    pub fn with_rational_coeffs(nvars: usize, degree: u32, terms: &[(Exponent, Rational)]) -> Self {
        let mut p = Self::zero(nvars, degree, 1);
        for (e, r) in terms {
            assert_eq!(e.degree(), degree);
            p.add_term(*e, &Cyclotomic::from_rational(r.clone(), 1));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Option<&Cyclotomic> {
        self.terms.get(e)
    }

    /// Support in increasing lexicographic order.
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().copied().collect()
    }

    pub fn contains_monomial(&self, e: &Exponent) -> bool {
        self.terms.contains_key(e)
    }

    /// Largest monomial in the lexicographic order, with its coefficient.
    pub fn leading(&self) -> Option<(&Exponent, &Cyclotomic)> {
        self.terms.iter().next_back()
    }

    /// Same polynomial with coefficients at conductor `m` (a multiple of the current one).
    pub fn at(&self, m: u64) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.conductor), "conductor {} does not divide {m}", self.conductor);
        Polynomial {
            nvars: self.nvars,
            degree: self.degree,
            conductor: m,
            terms: self.terms.iter().map(|(e, c)| (*e, c.at(m))).collect(),
        }
    }

    fn add_term(&mut self, e: Exponent, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        if c.conductor() != self.conductor && !self.conductor.is_multiple_of(c.conductor()) {
            *self = self.at(self.conductor.lcm(&c.conductor()));
        }
        let c = c.at(self.conductor);
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree), "shape mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclotomic::from_int(-1, 1)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let m = self.conductor.lcm(&c.conductor());
        let c = c.at(m);
        let mut out = Self::zero(self.nvars, self.degree, m);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(*e, &v.at(m) * &c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let m = self.conductor.lcm(&other.conductor);
        let mut out = Self::zero(self.nvars, self.degree + other.degree, m);
        for (e1, c1) in &self.terms {
            let c1 = c1.at(m);
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), &(&c1 * &c2.at(m)));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::monomial(Exponent::zero(self.nvars), Cyclotomic::one(self.conductor));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// A(F): the polynomial x ↦ F(Ax), i.e. x_k replaced by Σ_i a_ki x_i.
    ///
    /// Composition is contravariant: (AB)(F) = B(A(F)).
    pub fn apply_matrix(&self, a: &SquareMatrix) -> Result<Self, PolyError> {
        let n = self.nvars;
        if a.n() != n {
            return Err(PolyError::DimensionMismatch(format!("{}x{} matrix on {n} variables", a.n(), a.n())));
        }
        let m = self.conductor.lcm(&a.conductor());
        let a = a.at(m);
        if let Some(perm) = a.semi_permutation_shape() {
            let mut out = Self::zero(n, self.degree, m);
            let scales: Vec<&Cyclotomic> = (0..n).map(|k| a.get(k, perm[k])).collect();
            for (e, c) in &self.terms {
                let mut coef = c.at(m);
                for k in 0..n {
                    for _ in 0..e.get(k) {
                        coef = &coef * scales[k];
                    }
                }
                out.add_term(e.permute(&perm), &coef);
            }
            return Ok(out);
        }
        let lin: Vec<Polynomial> = (0..n)
            .map(|k| {
                let mut l = Self::zero(n, 1, m);
                for i in 0..n {
                    l.add_term(Exponent::var_power(n, i, 1), a.get(k, i));
                }
                l
            })
            .collect();
        Ok(self.substitute_linear(&lin))
    }

    /// F(L_1, ..., L_n) for linear forms L_k, all in the same number of variables.
    pub fn substitute_linear(&self, forms: &[Polynomial]) -> Self {
        assert_eq!(forms.len(), self.nvars);
        let n = forms.first().map_or(self.nvars, |l| l.nvars);
        let m = forms.iter().fold(self.conductor, |acc, l| acc.lcm(&l.conductor));
        let lin: Vec<Polynomial> = forms.iter().map(|l| l.at(m)).collect();
        // powers of the substituted forms, computed on demand
        let mut pows: Vec<Vec<Polynomial>> =
            lin.iter().map(|l| vec![Self::monomial(Exponent::zero(n), Cyclotomic::one(m)), l.clone()]).collect();
        let mut out = Self::zero(n, self.degree, m);
        for (e, c) in &self.terms {
            let mut prod = Self::monomial(Exponent::zero(n), c.at(m));
            for (k, pk) in pows.iter_mut().enumerate() {
                let ek = e.get(k) as usize;
                if ek == 0 {
                    continue;
                }
                while pk.len() <= ek {
                    let next = pk.last().unwrap().mul(&lin[k]);
                    pk.push(next);
                }
                prod = prod.mul(&pk[ek]);
            }
            for (e2, c2) in prod.terms {
                out.add_term(e2, &c2);
            }
        }
        out
    }

    /// λ with A(F) = λ·F, if A(F) is proportional to F.
    pub fn semi_invariance_factor(&self, a: &SquareMatrix) -> Result<Option<Cyclotomic>, PolyError> {
        let g = self.apply_matrix(a)?;
        Ok(self.proportionality(&g))
    }

    /// λ with other = λ·self, if it exists (self nonzero).
    pub fn proportionality(&self, other: &Self) -> Option<Cyclotomic> {
        let (e, c) = self.leading()?;
        if other.len() != self.len() {
            return None;
        }
        let d = other.coeff(e)?;
        let lambda = d * &c.inv().ok()?;
        for (e, c) in &self.terms {
            let o = other.coeff(e)?;
            if *o != c * &lambda {
                return None;
            }
        }
        Some(lambda)
    }

    /// ∂F/∂x_i (0-based index).
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1), self.conductor);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k == 0 {
                continue;
            }
            let mut e2 = *e;
            e2.set(i, k - 1);
            out.terms.insert(e2, c.scale(&Rational::from_int(k as i64)));
        }
        out
    }

    /// ∂^α F.
    pub fn higher_partial(&self, alpha: &Exponent) -> Self {
        let mut p = self.clone();
        for i in 0..self.nvars {
            for _ in 0..alpha.get(i) {
                p = p.partial(i);
            }
        }
        p
    }

    /// Value at a point with cyclotomic coordinates.
    pub fn eval(&self, point: &[Cyclotomic]) -> Cyclotomic {
        assert_eq!(point.len(), self.nvars);
        let m = point.iter().fold(self.conductor, |acc, x| acc.lcm(&x.conductor()));
        let pt: Vec<Cyclotomic> = point.iter().map(|x| x.at(m)).collect();
        let mut acc = Cyclotomic::zero(m);
        for (e, c) in &self.terms {
            let mut t = c.at(m);
            for (k, x) in pt.iter().enumerate() {
                for _ in 0..e.get(k) {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Renames variables: x_i becomes x_{perm[i]}.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars, self.degree, self.conductor);
        for (e, c) in &self.terms {
            out.terms.insert(e.permute(perm), c.clone());
        }
        out
    }
}

fn coeff_string(c: &Cyclotomic) -> (bool, String) {
    // (negative, magnitude text without sign); complex coefficients are parenthesized
    if let Some(r) = c.as_rational() {
        return (r.is_negative(), r.abs().to_string());
    }
    (false, format!("({c})"))
}

impl fmt::Display for Polynomial {
    /// Canonical text in the expression grammar, largest monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = coeff_string(c);
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = e.degree() == 0;
            if constant {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{e}")?;
            } else {
                write!(f, "{mag}*{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::zeta;
    use crate::polyring::parse_poly;
    use proptest::prelude::*;

    const KLEIN: &str = "x1^4*x2 + x2^4*x3 + x3^4*x4 + x4^4*x5 + x5^4*x1";
    const FERMAT: &str = "x1^5+x2^5+x3^5+x4^5+x5^5";

    #[test]
    fn klein_diagonal_factor() {
        let f = parse_poly(KLEIN, 5, 5).unwrap();
        let a = SquareMatrix::diagonal_roots(5, &[0, 1, 2, 3, 4]);
        let g = f.apply_matrix(&a).unwrap();
        assert_eq!(g, f.scale(&zeta(5, 1)));
        assert_eq!(f.semi_invariance_factor(&a).unwrap(), Some(zeta(5, 1)));
        let id = SquareMatrix::identity(5, 1);
        assert!(f.semi_invariance_factor(&id).unwrap().unwrap().is_one());
        let fermat = parse_poly(FERMAT, 5, 1).unwrap();
        let d4 = SquareMatrix::diagonal_roots(4, &[1, 0, 0, 0, 0]);
        assert_eq!(fermat.semi_invariance_factor(&d4).unwrap(), None);
        let p = SquareMatrix::permutation(&[2, 0, 4, 1, 3], 1);
        assert_eq!(fermat.apply_matrix(&p).unwrap(), fermat);
    }

    #[test]
    fn substitution_of_dense_block() {
        // x1 -> x1 + x2 applied to x1^2 gives x1^2 + 2 x1 x2 + x2^2
        let f = parse_poly("x1^2", 2, 1).unwrap();
        let one = Cyclotomic::one(1);
        let zero = Cyclotomic::zero(1);
        let a = SquareMatrix::from_rows(vec![vec![one.clone(), one.clone()], vec![zero, one]]).unwrap();
        assert_eq!(f.apply_matrix(&a).unwrap(), parse_poly("x1^2+2*x1*x2+x2^2", 2, 1).unwrap());
    }

    #[test]
    fn partials() {
        let f = parse_poly("x1^4*x2", 5, 1).unwrap();
        assert_eq!(f.partial(0), parse_poly("4*x1^3*x2", 5, 1).unwrap());
        assert!(f.partial(4).is_zero());
        let k = parse_poly(KLEIN, 5, 1).unwrap();
        assert_eq!(k.partial(0), parse_poly("4*x1^3*x2 + x5^4", 5, 1).unwrap());
        assert!(k.contains_monomial(&Exponent::new(&[1, 0, 0, 0, 4])));
        let fermat = parse_poly(FERMAT, 5, 1).unwrap();
        let supp: Vec<Exponent> = (0..5).map(|i| Exponent::var_power(5, i, 5)).rev().collect();
        assert_eq!(fermat.support(), supp);
    }

    fn euler_holds(f: &Polynomial) -> bool {
        let n = f.nvars();
        let mut acc = Polynomial::zero(n, f.degree(), f.conductor());
        for i in 0..n {
            let xi = Polynomial::monomial(Exponent::var_power(n, i, 1), Cyclotomic::one(1));
            acc = acc.add(&xi.mul(&f.partial(i)));
        }
        acc == f.scale(&Cyclotomic::from_int(f.degree() as i64, 1))
    }

    #[test]
    fn euler_identity() {
        for s in [KLEIN, FERMAT, "x1^4*x2 + (2+4*E(3)^2)*x1^2*x2^2*x3 + E(8)*x3^5"] {
            let f = crate::polyring::parse_poly_auto(s, 5).unwrap();
            assert!(euler_holds(&f), "{s}");
        }
    }

    fn monomial_matrix() -> impl Strategy<Value = SquareMatrix> {
        (Just(()).prop_perturb(|_, mut rng| {
            let mut p: Vec<usize> = (0..5).collect();
            for i in (1..5).rev() {
                let j = (rng.next_u32() as usize) % (i + 1);
                p.swap(i, j);
            }
            p
        }), proptest::collection::vec(0i64..20, 5))
            .prop_map(|(p, w)| {
                let s: Vec<Cyclotomic> = w.iter().map(|&k| zeta(20, k)).collect();
                SquareMatrix::semi_permutation(&p, &s)
            })
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        let mons = crate::polyring::monomials(5, 5);
        proptest::collection::vec((0..mons.len(), -3i64..4), 1..6).prop_map(move |ts| {
            let terms: Vec<(Exponent, Rational)> = ts.iter().map(|&(i, c)| (mons[i], Rational::from_int(c))).collect();
            Polynomial::with_rational_coeffs(5, 5, &terms)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn contravariance(a in monomial_matrix(), b in monomial_matrix(), f in small_poly()) {
            let lhs = f.apply_matrix(&a.mul(&b)).unwrap();
            let rhs = f.apply_matrix(&a).unwrap().apply_matrix(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn euler_random(f in small_poly()) {
            prop_assert!(euler_holds(&f));
        }
    }
}
