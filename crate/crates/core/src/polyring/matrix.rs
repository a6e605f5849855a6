use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;

use crate::exactnum::{Cyclotomic, Rational};

use super::PolyError;

/// Square matrix over a cyclotomic field, row-major, all entries at one conductor.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    conductor: u64,
    a: Vec<Cyclotomic>,
}

impl Hash for SquareMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_usize(self.n);
        for x in &self.a {
            x.hash(state);
        }
    }
}

impl SquareMatrix {
    /// Builds from rows, lifting every entry to the lcm of the conductors; rejects singular input.
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self, PolyError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(PolyError::DimensionMismatch(format!("matrix rows must all have length {n}")));
        }
        let m = rows.iter().flatten().fold(1u64, |acc, x| acc.lcm(&x.conductor()));
        let a = rows.into_iter().flatten().map(|x| x.at(m)).collect();
        let mat = SquareMatrix { n, conductor: m, a };
        if mat.det().is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        Ok(mat)
    }

    /// Unchecked constructor from row-major entries sharing conductor `conductor`.
    pub fn from_entries(n: usize, conductor: u64, a: Vec<Cyclotomic>) -> Self {
        assert_eq!(a.len(), n * n);
        debug_assert!(a.iter().all(|x| x.conductor() == conductor));
        SquareMatrix { n, conductor, a }
    }

    pub fn identity(n: usize, conductor: u64) -> Self {
        Self::scalar(n, Cyclotomic::one(conductor))
    }

    pub fn scalar(n: usize, c: Cyclotomic) -> Self {
        let conductor = c.conductor();
        let mut a = vec![Cyclotomic::zero(conductor); n * n];
        for i in 0..n {
            a[i * n + i] = c.clone();
        }
        SquareMatrix { n, conductor, a }
    }

    pub fn diagonal(d: &[Cyclotomic]) -> Self {
        let n = d.len();
        let m = d.iter().fold(1u64, |acc, x| acc.lcm(&x.conductor()));
        let mut a = vec![Cyclotomic::zero(m); n * n];
        for (i, x) in d.iter().enumerate() {
            a[i * n + i] = x.at(m);
        }
        SquareMatrix { n, conductor: m, a }
    }

    /// Diagonal matrix diag(ζ_N^{w_1}, ..., ζ_N^{w_n}).
    pub fn diagonal_roots(modulus: u64, weights: &[i64]) -> Self {
        let d: Vec<Cyclotomic> = weights.iter().map(|&w| Cyclotomic::root_of_unity(modulus, w)).collect();
        let mut m = Self::diagonal(&d);
        if m.conductor != modulus {
            m = m.at(modulus);
        }
        m
    }

    /// Permutation matrix whose row k has its 1 in column `perm[k]`, i.e. sends x_k to x_{perm[k]}.
    pub fn permutation(perm: &[usize], conductor: u64) -> Self {
        let n = perm.len();
        let mut a = vec![Cyclotomic::zero(conductor); n * n];
        for (k, &j) in perm.iter().enumerate() {
            a[k * n + j] = Cyclotomic::one(conductor);
        }
        SquareMatrix { n, conductor, a }
    }

    /// Semi-permutation matrix with row k equal to `scale[k]` at column `perm[k]`.
    pub fn semi_permutation(perm: &[usize], scale: &[Cyclotomic]) -> Self {
        let n = perm.len();
        let m = scale.iter().fold(1u64, |acc, x| acc.lcm(&x.conductor()));
        let mut a = vec![Cyclotomic::zero(m); n * n];
        for (k, &j) in perm.iter().enumerate() {
            a[k * n + j] = scale[k].at(m);
        }
        SquareMatrix { n, conductor: m, a }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.a[i * self.n + j]
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.a
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Same matrix with entries lifted to conductor `m`.
    pub fn at(&self, m: u64) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        SquareMatrix { n: self.n, conductor: m, a: self.a.iter().map(|x| x.at(m)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        if self.conductor != other.conductor {
            let m = self.conductor.lcm(&other.conductor);
            return self.at(m).mul(&other.at(m));
        }
        let n = self.n;
        let mut out = vec![Cyclotomic::zero(self.conductor); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = &self.a[i * n + k];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let bkj = &other.a[k * n + j];
                    if bkj.is_zero() {
                        continue;
                    }
                    let t = aik * bkj;
                    let slot = &mut out[i * n + j];
                    *slot = if slot.is_zero() { t } else { &*slot + &t };
                }
            }
        }
        SquareMatrix { n, conductor: self.conductor, a: out }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let m = self.conductor.lcm(&c.conductor());
        let c = c.at(m);
        SquareMatrix { n: self.n, conductor: m, a: self.a.iter().map(|x| &x.at(m) * &c).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.n, self.conductor);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// The scalar c when the matrix equals c·I.
    pub fn as_scalar(&self) -> Option<&Cyclotomic> {
        let c = self.get(0, 0);
        let ok = (0..self.n).all(|i| (0..self.n).all(|j| if i == j { self.get(i, j) == c } else { self.get(i, j).is_zero() }));
        ok.then_some(c)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// For a semi-permutation matrix, the column index of each row's nonzero entry.
    pub fn semi_permutation_shape(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        for i in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&j| !self.get(i, j).is_zero()).collect();
            if nz.len() != 1 || used[nz[0]] {
                return None;
            }
            used[nz[0]] = true;
            perm.push(nz[0]);
        }
        Some(perm)
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero(self.conductor);
        for i in 0..self.n {
            t = &t + self.get(i, i);
        }
        t
    }

    /// Determinant by division-free cofactor expansion, memoized over column subsets.
    pub fn det(&self) -> Cyclotomic {
        let n = self.n;
        // dp[mask] = det of rows (n - |mask|)..n restricted to columns in mask
        let full = (1usize << n) - 1;
        let mut dp: Vec<Option<Cyclotomic>> = vec![None; 1 << n];
        dp[0] = Some(Cyclotomic::one(self.conductor));
        for mask in 1..=full {
            let k = mask.count_ones() as usize;
            let row = n - k;
            let mut acc = Cyclotomic::zero(self.conductor);
            let mut sign_pos = true;
            for j in 0..n {
                if mask >> j & 1 == 0 {
                    continue;
                }
                let a = self.get(row, j);
                if !a.is_zero() {
                    if let Some(sub) = &dp[mask & !(1 << j)] {
                        if !sub.is_zero() {
                            let t = a * sub;
                            acc = if sign_pos { &acc + &t } else { &acc - &t };
                        }
                    }
                }
                sign_pos = !sign_pos;
            }
            dp[mask] = Some(acc);
        }
        dp[full].take().unwrap()
    }

    /// Coefficients of det(tI − A), constant term first, by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<Cyclotomic> {
        let n = self.n;
        let m = self.conductor;
        let mut c = vec![Cyclotomic::zero(m); n + 1];
        c[n] = Cyclotomic::one(m);
        let mut mk = Self::scalar(n, Cyclotomic::zero(m));
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1}·I
            let mut next = self.mul(&mk);
            for i in 0..n {
                next.a[i * n + i] = &next.a[i * n + i] + &c[n - k + 1];
            }
            mk = next;
            let tr = self.mul(&mk).trace();
            c[n - k] = tr.scale(&Rational::new(-1, k as i64));
        }
        c
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self, PolyError> {
        if let Some(perm) = self.semi_permutation_shape() {
            let n = self.n;
            let mut a = vec![Cyclotomic::zero(self.conductor); n * n];
            for (k, &j) in perm.iter().enumerate() {
                a[j * n + k] = self.get(k, j).inv().map_err(|_| PolyError::SingularMatrix)?;
            }
            return Ok(SquareMatrix { n, conductor: self.conductor, a });
        }
        let n = self.n;
        let mut l = self.rows();
        let mut r = Self::identity(n, self.conductor).rows();
        for col in 0..n {
            let p = (col..n).find(|&i| !l[i][col].is_zero()).ok_or(PolyError::SingularMatrix)?;
            l.swap(col, p);
            r.swap(col, p);
            let inv = l[col][col].inv().map_err(|_| PolyError::SingularMatrix)?;
            for j in 0..n {
                l[col][j] = &l[col][j] * &inv;
                r[col][j] = &r[col][j] * &inv;
            }
            for i in 0..n {
                if i == col || l[i][col].is_zero() {
                    continue;
                }
                let f = l[i][col].clone();
                for j in 0..n {
                    let t = &f * &l[col][j];
                    l[i][j] = &l[i][j] - &t;
                    let t = &f * &r[col][j];
                    r[i][j] = &r[i][j] - &t;
                }
            }
        }
        Ok(SquareMatrix { n, conductor: self.conductor, a: r.into_iter().flatten().collect() })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let a = (0..n * n).map(|idx| self.get(idx % n, idx / n).clone()).collect();
        SquareMatrix { n, conductor: self.conductor, a }
    }
}

impl fmt::Display for SquareMatrix {
    /// One row per line, entries comma-separated (the matrix file format).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareMatrix@{}\n{}", self.conductor, self)
    }
}
