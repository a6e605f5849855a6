use std::fmt;

pub const MAX_VARS: usize = 6;

/// Exponent vector of a monomial in at most six variables.
///
/// Ordering is lexicographic on the entries, so `x1^5 > x1^4*x2 > ... > x5^5`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    e: [u8; MAX_VARS],
    n: u8,
}

impl Exponent {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables");
        Exponent { e: [0; MAX_VARS], n: n as u8 }
    }

    pub fn new(entries: &[u32]) -> Self {
        let mut x = Self::zero(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            x.e[i] = u8::try_from(v).expect("exponent too large");
        }
        x
    }

    /// The monomial x_i^k (0-based index).
    pub fn var_power(n: usize, i: usize, k: u32) -> Self {
        let mut x = Self::zero(n);
        x.e[i] = k as u8;
        x
    }

    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn set(&mut self, i: usize, v: u32) {
        self.e[i] = u8::try_from(v).expect("exponent too large");
    }

    pub fn entries(&self) -> Vec<u32> {
        self.e[..self.n as usize].iter().map(|&v| v as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().map(|&v| v as u32).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut x = *self;
        for i in 0..MAX_VARS {
            x.e[i] = self.e[i].checked_add(other.e[i]).expect("exponent too large");
        }
        x
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut x = *self;
        for i in 0..MAX_VARS {
            x.e[i] = self.e[i].checked_sub(other.e[i])?;
        }
        Some(x)
    }

    pub fn divides(&self, other: &Self) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] <= other.e[i])
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut x = *self;
        for i in 0..MAX_VARS {
            x.e[i] = self.e[i].max(other.e[i]);
        }
        x
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || other.e[i] == 0)
    }

    /// Indices of variables appearing with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n as usize).filter(|&i| self.e[i] > 0)
    }

    /// Permutes variables: x_i goes to x_{perm[i]}.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut x = Self::zero(self.n as usize);
        for (i, &j) in perm.iter().enumerate() {
            x.e[j] = self.e[i];
        }
        x
    }

    /// Σ w_i e_i.
    pub fn dot(&self, w: &[i64]) -> i64 {
        w.iter().enumerate().map(|(i, &wi)| wi * self.e[i] as i64).sum()
    }

    /// Sum of exponents in the given variable subset (bitmask over indices).
    pub fn degree_in(&self, mask: u32) -> u32 {
        (0..self.n as usize).filter(|&i| mask >> i & 1 == 1).map(|i| self.e[i] as u32).sum()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..self.n as usize {
            let k = self.e[i];
            if k == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if k == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, k)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries())
    }
}

/// All degree-`d` monomials in `n` variables, in increasing lexicographic order.
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = Exponent::zero(n);
    fn rec(i: usize, n: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i == n - 1 {
            cur.set(i, left);
            out.push(*cur);
            return;
        }
        for k in 0..=left {
            cur.set(i, k);
            rec(i + 1, n, left - k, cur, out);
        }
        cur.set(i, 0);
    }
    if n == 0 {
        return out;
    }
    rec(0, n, d, &mut cur, &mut out);
    out.sort();
    out
}
