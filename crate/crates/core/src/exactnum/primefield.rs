//! Prime field helpers and the embedding of Q(ζ_N) into F_p for p ≡ 1 mod N.

use super::cyclotomic::Cyclotomic;
use super::ExactError;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exact multiplicative order of `a` modulo the prime `p`.
pub fn mult_order(a: u64, p: u64) -> u64 {
    let mut ord = p - 1;
    for q in prime_factors(p - 1) {
        while ord.is_multiple_of(q) && pow_mod(a, ord / q, p) == 1 {
            ord /= q;
        }
    }
    ord
}

pub fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let fs = prime_factors(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("primes have primitive roots")
}

/// A ring homomorphism Z[1/den][ζ_N] → F_p sending ζ_N to `zeta_image`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeEmbedding {
    pub prime: u64,
    pub conductor: u64,
    pub zeta_image: u64,
}

const PRIME_CAP: u64 = 1 << 31;

impl PrimeEmbedding {
    /// Builds an embedding for an explicit prime; `zeta` must have exact order `conductor`.
    pub fn new(prime: u64, conductor: u64, zeta: u64) -> Result<Self, ExactError> {
        if !is_prime(prime) || !(prime - 1).is_multiple_of(conductor) || mult_order(zeta % prime, prime) != conductor {
            return Err(ExactError::BadEmbedding { prime, conductor });
        }
        Ok(Self { prime, conductor, zeta_image: zeta % prime })
    }

    /// The canonical embedding at `prime` (image of ζ_N is g^((p−1)/N) for the least primitive root g).
    pub fn canonical(prime: u64, conductor: u64) -> Result<Self, ExactError> {
        if !is_prime(prime) || !(prime - 1).is_multiple_of(conductor) {
            return Err(ExactError::BadEmbedding { prime, conductor });
        }
        let g = smallest_primitive_root(prime);
        Ok(Self { prime, conductor, zeta_image: pow_mod(g, (prime - 1) / conductor, prime) })
    }

    /// Image of ζ_N^k.
    pub fn zeta_pow(&self, k: i64) -> u64 {
        let e = k.rem_euclid(self.conductor as i64) as u64;
        pow_mod(self.zeta_image, e, self.prime)
    }
}

/// The (skip+1)-th prime p > 5 with p ≡ 1 mod N, with its canonical ζ_N image.
pub fn choose_prime(n: u64, skip: usize) -> Result<PrimeEmbedding, ExactError> {
    assert!(n >= 1);
    let mut seen = 0;
    // smallest p > 5 with p ≡ 1 mod n
    let mut p = (5 / n + 1) * n + 1;
    while p < PRIME_CAP {
        if is_prime(p) {
            if seen == skip {
                return PrimeEmbedding::canonical(p, n);
            }
            seen += 1;
        }
        p += n;
    }
    Err(ExactError::PrimeSearchExhausted { conductor: n })
}

/// Image of a cyclotomic number under the embedding.
pub fn reduce_mod(x: &Cyclotomic, e: &PrimeEmbedding) -> Result<u64, ExactError> {
    let n = x.conductor();
    if !e.conductor.is_multiple_of(n) {
        return Err(ExactError::ConductorMismatch { from: n, to: e.conductor });
    }
    let p = e.prime;
    let step = e.conductor / n;
    let z = pow_mod(e.zeta_image, step, p);
    let mut acc = 0u64;
    let mut zk = 1u64;
    for c in x.coeffs() {
        if !c.is_zero() {
            let r = c.mod_prime(p).ok_or(ExactError::BadDenominator { prime: p })?;
            acc = (acc + mul_mod(r, zk, p)) % p;
        }
        zk = mul_mod(zk, z, p);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    // Independent oracle: least prime above 5 in the progression, by trial division.
    fn naive_prime(n: u64) -> u64 {
        (6u64..).find(|&p| (p - 1) % n == 0 && (2..p).all(|d| p % d != 0)).unwrap()
    }

    #[test]
    fn chooses_least_primes() {
        for n in 1..=64 {
            let e = choose_prime(n, 0).unwrap();
            assert_eq!(e.prime, naive_prime(n), "conductor {n}");
            let ord = (1..=n).find(|&m| pow_mod(e.zeta_image, m, e.prime) == 1).unwrap();
            assert_eq!(ord, n);
        }
        assert_eq!(choose_prime(4, 0).unwrap().prime, 13);
        assert_eq!(choose_prime(1, 0).unwrap().prime, 7);
        assert_eq!(choose_prime(5, 0).unwrap().prime, 11);
        assert_eq!(choose_prime(5, 1).unwrap().prime, 31);
    }

    #[test]
    fn reduces_known_values() {
        let e = choose_prime(4, 0).unwrap();
        let i = reduce_mod(&Cyclotomic::root_of_unity(4, 1), &e).unwrap();
        assert_eq!(mul_mod(i, i, 13), 12);
        assert_eq!(reduce_mod(&Cyclotomic::zero(4), &e).unwrap(), 0);
        let e7 = choose_prime(1, 0).unwrap();
        let x = Cyclotomic::from_rational(Rational::new(3, 2), 1);
        assert_eq!(reduce_mod(&x, &e7).unwrap(), 5);
        let bad = Cyclotomic::from_rational(Rational::new(1, 7), 1);
        assert!(matches!(reduce_mod(&bad, &e7), Err(ExactError::BadDenominator { .. })));
    }

    #[test]
    fn manual_embedding_checks_order() {
        assert!(PrimeEmbedding::new(11, 1, 1).is_ok());
        assert!(PrimeEmbedding::new(11, 5, 2).is_err());
        assert!(PrimeEmbedding::new(11, 5, 3).is_ok());
    }
}
