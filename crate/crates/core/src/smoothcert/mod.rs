//! Smoothness certification for projective hypersurfaces.
//!
//! Singular verdicts come from support criteria or an exact singular point;
//! smooth verdicts come from a zero-dimensional Jacobian ideal modulo a prime
//! of degree one in Z[ζ_N].

pub mod criteria;
pub mod groebner;

use serde::Serialize;

use crate::exactnum::{choose_prime, reduce_mod, Cyclotomic, ExactError, PrimeEmbedding};
use crate::polyring::{Exponent, Polynomial};

pub use criteria::{check_power_monomials, tight_pairs, IdealPair};
use groebner::{BuchbergerOptions, Mono, Poly};

/// Evidence that a hypersurface is singular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularityCertificate {
    /// The polynomial lies in (x_A) + (x_B)^2 with 2|A| + |B| ≤ n − 1.
    Combinatorial(IdealPair),
    /// A nonzero point where every partial derivative vanishes.
    Witness(Vec<Cyclotomic>),
    /// Every polynomial supported in a monomial set lies in (x_A) + (x_B)^2.
    SupportLevel { pair: IdealPair, condition: Option<u8> },
}

impl SingularityCertificate {
    pub fn describe(&self) -> String {
        match self {
            Self::Combinatorial(p) => format!("in (x{:?}) + (x{:?})^2", p.a_vars(), p.b_vars()),
            Self::Witness(pt) => {
                let c: Vec<String> = pt.iter().map(|x| x.to_string()).collect();
                format!("singular at [{}]", c.join(" : "))
            }
            Self::SupportLevel { pair, condition } => match condition {
                Some(c) => format!("support condition {c}: (x{:?}) + (x{:?})^2", pair.a_vars(), pair.b_vars()),
                None => format!("support in (x{:?}) + (x{:?})^2", pair.a_vars(), pair.b_vars()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmoothnessVerdict {
    SmoothCertified { prime: u64 },
    SingularCertified(SingularityCertificate),
    SingularLikely { tested_primes: Vec<u64> },
    Unknown,
}

impl SmoothnessVerdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Self::SmoothCertified { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::SmoothCertified { .. } => "SmoothCertified",
            Self::SingularCertified(_) => "SingularCertified",
            Self::SingularLikely { .. } => "SingularLikely",
            Self::Unknown => "Unknown",
        }
    }
}

/// Serializable summary of a verdict.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictSummary {
    pub verdict: String,
    pub prime: Option<String>,
    pub tested_primes: Vec<String>,
    pub certificate: Option<String>,
}

impl From<&SmoothnessVerdict> for VerdictSummary {
    fn from(v: &SmoothnessVerdict) -> Self {
        let mut s = VerdictSummary { verdict: v.label().into(), prime: None, tested_primes: vec![], certificate: None };
        match v {
            SmoothnessVerdict::SmoothCertified { prime } => s.prime = Some(prime.to_string()),
            SmoothnessVerdict::SingularCertified(c) => s.certificate = Some(c.describe()),
            SmoothnessVerdict::SingularLikely { tested_primes } => {
                s.tested_primes = tested_primes.iter().map(|p| p.to_string()).collect()
            }
            SmoothnessVerdict::Unknown => {}
        }
        s
    }
}

/// Least certificate from the tight pairs (see [`criteria::tight_pairs`] for the order), if any.
pub fn combinatorial_singularity(f: &Polynomial) -> Option<SingularityCertificate> {
    criteria::covering_pair(&f.support(), f.nvars()).map(SingularityCertificate::Combinatorial)
}

/// A certificate valid for every polynomial whose support lies in `s`.
///
/// The empty set is covered vacuously (it contains no nonzero polynomial).
pub fn support_family_singular(s: &[Exponent], n: usize, d: u32) -> Option<SingularityCertificate> {
    debug_assert!(s.iter().all(|e| e.degree() == d && e.nvars() == n));
    criteria::covering_pair(s, n).map(|pair| SingularityCertificate::SupportLevel { pair, condition: pair.quintic_condition(n) })
}

/// Checks a certificate against a concrete polynomial.
pub fn check_certificate(f: &Polynomial, cert: &SingularityCertificate) -> bool {
    let n = f.nvars();
    match cert {
        SingularityCertificate::Combinatorial(p) | SingularityCertificate::SupportLevel { pair: p, .. } => {
            2 * p.a.count_ones() + p.b.count_ones() < n as u32 && p.a & p.b == 0 && f.support().iter().all(|e| p.contains(e))
        }
        SingularityCertificate::Witness(pt) => verify_witness(f, pt),
    }
}

/// Reduces F to F_p under the embedding.
pub fn reduce_poly(f: &Polynomial, e: &PrimeEmbedding) -> Result<Poly, ExactError> {
    let mut out = Vec::with_capacity(f.len());
    for (ex, c) in f.terms() {
        let r = reduce_mod(c, e)?;
        if r != 0 {
            let mut arr = [0u8; 6];
            for (i, v) in ex.entries().into_iter().enumerate() {
                arr[i] = v as u8;
            }
            out.push((Mono::new(arr), r));
        }
    }
    Ok(groebner::normalize(out, e.prime))
}

/// Whether {F = 0} is smooth over the algebraic closure of F_p.
pub fn jacobian_smooth_mod_p(f: &Polynomial, e: &PrimeEmbedding) -> Result<bool, ExactError> {
    let n = f.nvars();
    let partials: Vec<Poly> = (0..n).map(|i| reduce_poly(&f.partial(i), e)).collect::<Result<_, _>>()?;
    let basis = groebner::groebner_basis(partials, e.prime, BuchbergerOptions { stop_when_zero_dim: Some(n) });
    Ok(groebner::zero_dimensional(&basis.polys, n))
}

/// Whether every partial derivative vanishes exactly at the (nonzero) point.
pub fn verify_witness(f: &Polynomial, point: &[Cyclotomic]) -> bool {
    if point.len() != f.nvars() || point.iter().all(|x| x.is_zero()) {
        return false;
    }
    (0..f.nvars()).all(|i| f.partial(i).eval(point).is_zero())
}

/// Default number of good primes tried by [`certify`].
pub const DEFAULT_PRIMES: usize = 3;

/// Good primes p ≡ 1 mod N for F, in increasing order, skipping those dividing a denominator.
pub fn good_primes(f: &Polynomial, count: usize) -> Vec<PrimeEmbedding> {
    let mut out = Vec::new();
    let mut skip = 0;
    while out.len() < count {
        let Ok(e) = choose_prime(f.conductor(), skip) else { break };
        skip += 1;
        if f.terms().all(|(_, c)| reduce_mod(c, &e).is_ok()) {
            out.push(e);
        }
    }
    out
}

/// Support criteria first, then the Jacobian test at up to `max_primes` good primes.
pub fn certify(f: &Polynomial, max_primes: usize) -> SmoothnessVerdict {
    certify_with_witness(f, max_primes, None)
}

/// As [`certify`], upgrading a singular outcome when `witness` is a verified singular point.
pub fn certify_with_witness(f: &Polynomial, max_primes: usize, witness: Option<&[Cyclotomic]>) -> SmoothnessVerdict {
    if f.is_zero() {
        return SmoothnessVerdict::Unknown;
    }
    if let Some(c) = combinatorial_singularity(f) {
        return SmoothnessVerdict::SingularCertified(c);
    }
    let mut tested = Vec::new();
    for e in good_primes(f, max_primes) {
        match jacobian_smooth_mod_p(f, &e) {
            Ok(true) => return SmoothnessVerdict::SmoothCertified { prime: e.prime },
            Ok(false) => tested.push(e.prime),
            Err(_) => {}
        }
    }
    if let Some(pt) = witness {
        if verify_witness(f, pt) {
            return SmoothnessVerdict::SingularCertified(SingularityCertificate::Witness(pt.to_vec()));
        }
    }
    if tested.is_empty() {
        SmoothnessVerdict::Unknown
    } else {
        SmoothnessVerdict::SingularLikely { tested_primes: tested }
    }
}
