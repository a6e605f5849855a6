//! Elements of Q(ζ_N) in the power basis modulo the N-th cyclotomic polynomial.
//!
//! Each conductor gets one leaked, immutable [`CycloField`] table holding Φ_N
//! and the reductions of x^k modulo Φ_N, shared by every value of that
//! conductor. Values never change conductor on their own: binary operations on
//! equal conductors stay there, and mixed conductors are lifted to their lcm.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_integer::Integer;

use super::rational::Rational;
use super::ExactError;

/// Sparse coefficient rows (index, value).
type SparseRows = Vec<Vec<(u32, i64)>>;

/// Precomputed data for one conductor.
pub struct CycloField {
    n: u64,
    phi: usize,
    /// Φ_N, lowest degree first, monic of degree φ(N).
    minpoly: Vec<i64>,
    /// `reduced[k]` = sparse coefficients of x^k mod Φ_N, for k < max(N, 2φ−1).
    reduced: SparseRows,
    /// Rows of the multiplication-by-x matrix, reused for Galois action lookups.
    galois_cache: RwLock<HashMap<u64, SparseRows>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(E({}))", self.n)
    }
}

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic; both lowest degree first
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

fn cyclotomic_poly(n: u64, memo: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let pd = cyclotomic_poly(d, memo);
            p = poly_divexact(&p, &pd);
        }
    }
    memo.insert(n, p.clone());
    p
}

/// Φ_N with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    cyclotomic_poly(n, &mut HashMap::new())
}

pub fn euler_phi(n: u64) -> u64 {
    let mut r = n;
    for p in super::primefield::prime_factors(n) {
        r = r / p * (p - 1);
    }
    r
}

impl CycloField {
    fn build(n: u64) -> CycloField {
        let minpoly = cyclotomic_polynomial(n);
        let phi = minpoly.len() - 1;
        let len = (n as usize).max(2 * phi - 1).max(1);
        let mut reduced = Vec::with_capacity(len);
        let mut cur = vec![0i64; phi];
        if phi > 0 {
            cur[0] = 1;
        }
        for _ in 0..len {
            reduced.push(cur.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as u32, c)).collect());
            // multiply by x and reduce
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] = cur[i].checked_sub(top.checked_mul(minpoly[i]).expect("overflow")).expect("overflow");
                }
            }
        }
        CycloField { n, phi, minpoly, reduced, galois_cache: RwLock::new(HashMap::new()) }
    }

    /// The shared table for conductor `n`, built on first use.
    pub fn get(n: u64) -> &'static CycloField {
        static FIELDS: OnceLock<RwLock<HashMap<u64, &'static CycloField>>> = OnceLock::new();
        let map = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(f) = map.read().unwrap().get(&n) {
            return f;
        }
        let mut w = map.write().unwrap();
        w.entry(n).or_insert_with(|| Box::leak(Box::new(CycloField::build(n))))
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn minimal_polynomial(&self) -> &[i64] {
        &self.minpoly
    }

    fn power(&self, k: u64) -> &[(u32, i64)] {
        &self.reduced[(k % self.n) as usize]
    }
}

/// An exact element of Q(ζ_N).
#[derive(Clone)]
pub struct Cyclotomic {
    field: &'static CycloField,
    /// Power-basis coordinates with trailing zeros removed (zero is empty).
    c: Vec<Rational>,
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Self {
        Cyclotomic { field: CycloField::get(n), c: Vec::new() }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(Rational::one(), n)
    }

    pub fn from_int(v: i64, n: u64) -> Self {
        Self::from_rational(Rational::from_int(v), n)
    }

    pub fn from_rational(r: Rational, n: u64) -> Self {
        let c = if r.is_zero() { Vec::new() } else { vec![r] };
        Cyclotomic { field: CycloField::get(n), c }
    }

    /// ζ_N^k.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let f = CycloField::get(n);
        let k = k.rem_euclid(n as i64) as u64;
        Self::from_sparse(f, f.power(k), &Rational::one())
    }

    /// Builds Σ c_i ζ_N^i from arbitrary exponents (reduced modulo N and Φ_N).
    pub fn from_exponents(n: u64, terms: &[(i64, Rational)]) -> Self {
        let f = CycloField::get(n);
        let mut acc = vec![Rational::zero(); f.phi];
        for (k, r) in terms {
            let k = k.rem_euclid(n as i64) as u64;
            for &(i, v) in f.power(k) {
                acc[i as usize] += &(r * &Rational::from_int(v));
            }
        }
        Cyclotomic { field: f, c: trim(acc) }
    }

    fn from_sparse(f: &'static CycloField, sp: &[(u32, i64)], scale: &Rational) -> Self {
        let len = sp.iter().map(|&(i, _)| i as usize + 1).max().unwrap_or(0);
        let mut c = vec![Rational::zero(); len];
        for &(i, v) in sp {
            c[i as usize] = scale * &Rational::from_int(v);
        }
        Cyclotomic { field: f, c: trim(c) }
    }

    /// Builds from dense power-basis coordinates (length at most φ(N)).
    pub fn from_coeffs(n: u64, coeffs: Vec<Rational>) -> Self {
        let f = CycloField::get(n);
        assert!(coeffs.len() <= f.phi, "too many coordinates for conductor {n}");
        Cyclotomic { field: f, c: trim(coeffs) }
    }

    pub fn conductor(&self) -> u64 {
        self.field.n
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    /// Nonzero-prefix of the power-basis coordinates (trailing zeros omitted).
    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    /// All φ(N) power-basis coordinates.
    pub fn dense_coeffs(&self) -> Vec<Rational> {
        let mut v = self.c.clone();
        v.resize(self.field.phi, Rational::zero());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.c.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    /// Same element expressed at conductor `m`.
    pub fn lift_conductor(&self, m: u64) -> Result<Self, ExactError> {
        let n = self.field.n;
        if !m.is_multiple_of(n) {
            return Err(ExactError::ConductorMismatch { from: n, to: m });
        }
        if m == n {
            return Ok(self.clone());
        }
        let g = CycloField::get(m);
        let step = m / n;
        let mut acc = vec![Rational::zero(); g.phi];
        for (i, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for &(j, v) in g.power(i as u64 * step) {
                acc[j as usize] += &(r * &Rational::from_int(v));
            }
        }
        Ok(Cyclotomic { field: g, c: trim(acc) })
    }

    /// Lifts to `m`, panicking when `m` is not a multiple of the conductor.
    pub fn at(&self, m: u64) -> Self {
        self.lift_conductor(m).expect("conductor must divide target")
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.field.n.lcm(&b.field.n);
        (a.at(m), b.at(m))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Cyclotomic { field: self.field, c: Vec::new() };
        }
        Cyclotomic { field: self.field, c: self.c.iter().map(|x| x * r).collect() }
    }

    /// Multiplication by ζ_N^k.
    pub fn mul_zeta(&self, k: i64) -> Self {
        let f = self.field;
        let k = k.rem_euclid(f.n as i64) as u64;
        let mut acc = vec![Rational::zero(); f.phi];
        for (i, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for &(j, v) in f.power(i as u64 + k) {
                acc[j as usize] += &(r * &Rational::from_int(v));
            }
        }
        Cyclotomic { field: f, c: trim(acc) }
    }

    fn mul_same(&self, other: &Self) -> Self {
        let f = self.field;
        if self.c.is_empty() || other.c.is_empty() {
            return Cyclotomic { field: f, c: Vec::new() };
        }
        if self.c.len() == 1 {
            return other.scale(&self.c[0]);
        }
        if other.c.len() == 1 {
            return self.scale(&other.c[0]);
        }
        let mut raw = vec![Rational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += &(a * b);
                }
            }
        }
        if raw.len() <= f.phi {
            return Cyclotomic { field: f, c: trim(raw) };
        }
        let mut out: Vec<Rational> = raw[..f.phi].to_vec();
        for (k, r) in raw.iter().enumerate().skip(f.phi) {
            if r.is_zero() {
                continue;
            }
            for &(j, v) in &f.reduced[k] {
                out[j as usize] += &(r * &Rational::from_int(v));
            }
        }
        Cyclotomic { field: f, c: trim(out) }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.c.len() == 1 {
            return Ok(Cyclotomic { field: self.field, c: vec![self.c[0].inv().unwrap()] });
        }
        let f = self.field;
        // x^k·(single coefficient) has an inverse of the same shape.
        let nz: Vec<usize> = (0..self.c.len()).filter(|&i| !self.c[i].is_zero()).collect();
        if nz.len() == 1 {
            let i = nz[0];
            let r = self.c[i].inv().unwrap();
            return Ok(Self::root_of_unity(f.n, -(i as i64)).scale(&r));
        }
        let modulus: Vec<Rational> = f.minpoly.iter().map(|&v| Rational::from_int(v)).collect();
        let s = poly_inverse_mod(&self.c, &modulus);
        Ok(Cyclotomic { field: f, c: trim(s) })
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("inverse of zero").pow(-e);
        }
        let mut acc = Self::one(self.field.n);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The Galois automorphism ζ_N ↦ ζ_N^k, gcd(k, N) = 1.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.field.n;
        let k = k.rem_euclid(n as i64) as u64;
        assert_eq!(k.gcd(&n), 1, "Galois exponent must be a unit");
        let f = self.field;
        if let Some(rows) = f.galois_cache.read().unwrap().get(&k) {
            return self.apply_rows(rows);
        }
        let rows: SparseRows = (0..f.phi as u64).map(|i| f.power(i * k).to_vec()).collect();
        let out = self.apply_rows(&rows);
        f.galois_cache.write().unwrap().insert(k, rows);
        out
    }

    fn apply_rows(&self, rows: &[Vec<(u32, i64)>]) -> Self {
        let mut acc = vec![Rational::zero(); self.field.phi];
        for (i, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for &(j, v) in &rows[i] {
                acc[j as usize] += &(r * &Rational::from_int(v));
            }
        }
        Cyclotomic { field: self.field, c: trim(acc) }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// If `self = ζ_m^j` with gcd(j, m) = 1, returns `(m, j)`.
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        let f = self.field;
        let n = f.n;
        // Any root of unity in Q(ζ_N) is ±ζ_N^k.
        for k in 0..n {
            let sp = f.power(k);
            let sign = match sparse_matches(&self.c, sp) {
                Some(s) => s,
                None => continue,
            };
            let l = if n.is_multiple_of(2) { n } else { 2 * n };
            let mut e = k * (l / n);
            if sign < 0 {
                e = (e + l / 2) % l;
            }
            let g = e.gcd(&l);
            let m = l / g;
            return Some((m, (e / g) % m.max(1)));
        }
        None
    }

    /// Trace of the element down to Q.
    pub fn trace(&self) -> Rational {
        let f = self.field;
        let mut t = Rational::zero();
        for k in 1..=f.n {
            if k.gcd(&f.n) == 1 {
                if let Some(r) = self.galois(k as i64).as_rational_prefix() {
                    t += &r;
                }
            }
        }
        t
    }

    fn as_rational_prefix(&self) -> Option<Rational> {
        self.c.first().cloned()
    }
}

/// Returns +1 / −1 when `c` equals ± the sparse integer vector `sp`.
fn sparse_matches(c: &[Rational], sp: &[(u32, i64)]) -> Option<i64> {
    let nnz = c.iter().filter(|x| !x.is_zero()).count();
    if nnz != sp.len() || sp.is_empty() {
        return None;
    }
    let (i0, v0) = sp[0];
    let c0 = c.get(i0 as usize)?;
    let sign = if *c0 == Rational::from_int(v0) {
        1
    } else if *c0 == Rational::from_int(-v0) {
        -1
    } else {
        return None;
    };
    for &(i, v) in sp {
        if c.get(i as usize)? != &Rational::from_int(sign * v) {
            return None;
        }
    }
    Some(sign)
}

fn poly_trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].inv().unwrap();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, y) in b.iter().enumerate() {
            let t = &c * y;
            r[k + j] -= &t;
        }
        q[k] = c;
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    (q, r)
}

/// s with s·a ≡ 1 modulo `m`, assuming gcd(a, m) = 1.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while r1.len() > 1 {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    assert!(r1.len() == 1, "element not invertible modulo the cyclotomic polynomial");
    let c = r1[0].inv().unwrap();
    let mut out: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
    let (_, rem) = poly_divrem(&out, m);
    out = rem;
    out
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.n == other.field.n {
            return self.c == other.c;
        }
        let (a, b) = Self::common(self, other);
        a.c == b.c
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    /// Hashes at the value's own conductor; only meaningful among equal conductors.
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.field.n);
        self.c.hash(state);
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.field.n != rhs.field.n {
            let (a, b) = Cyclotomic::common(self, rhs);
            return &a + &b;
        }
        if self.c.is_empty() {
            return rhs.clone();
        }
        let (long, short) = if self.c.len() >= rhs.c.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.c.clone();
        for (i, x) in short.c.iter().enumerate() {
            c[i] += x;
        }
        Cyclotomic { field: self.field, c: trim(c) }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.field.n != rhs.field.n {
            let (a, b) = Cyclotomic::common(self, rhs);
            return a.mul_same(&b);
        }
        self.mul_same(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { field: self.field, c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl fmt::Display for Cyclotomic {
    /// Prints in the `E(n)` expression grammar, e.g. `2 - 1/3*E(5)^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.field.n;
        let mut first = true;
        for (i, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let zeta = match i {
                0 => String::new(),
                1 => format!("E({n})"),
                _ => format!("E({n})^{i}"),
            };
            match (zeta.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{zeta}")?,
                (false, false) => write!(f, "{a}*{zeta}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]@{}", self, self.field.n)
    }
}
