//! Exhaustive exclusion sweeps on diagonal weight vectors.
//!
//! Monomial sets are u128 bitmasks over the 126 quintic monomials in five
//! variables, and support-level certificates become mask containment tests.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::Rational;
use crate::polyring::{monomials, Exponent, Polynomial};
use crate::smoothcert::{self, tight_pairs, IdealPair, SmoothnessVerdict};

/// Outcome of one sweep. Counts are kept in `counts` under descriptive keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub name: String,
    #[serde(serialize_with = "crate::decimal::map")]
    pub counts: BTreeMap<String, u64>,
    /// Candidates without a support-level certificate, with the escalation verdict.
    pub escalated: Vec<Escalation>,
    /// Candidates not excluded (expected empty).
    pub survivors: Vec<String>,
    /// Escalations that certified smoothness: a contradiction with the exclusion claim.
    pub counterexamples: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Escalation {
    pub candidate: String,
    pub verdict: String,
}

struct Masks {
    mons: Vec<Exponent>,
    pairs: Vec<(IdealPair, u128)>,
}

impl Masks {
    fn new() -> Self {
        let mons = monomials(5, 5);
        let pairs = tight_pairs(5)
            .into_iter()
            .map(|p| {
                let mask = mons.iter().enumerate().filter(|(_, e)| p.contains(e)).fold(0u128, |m, (i, _)| m | 1 << i);
                (p, mask)
            })
            .collect();
        Masks { mons, pairs }
    }

    fn certificate(&self, s: u128) -> Option<IdealPair> {
        self.pairs.iter().find(|(_, m)| s & !m == 0).map(|(p, _)| *p)
    }

    fn support(&self, s: u128) -> Vec<Exponent> {
        (0..self.mons.len()).filter(|i| s >> i & 1 == 1).map(|i| self.mons[i]).collect()
    }
}

fn weights_string(w: &[i64]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Monomial buckets by weight ⟨w, e⟩ mod n.
fn buckets(masks: &Masks, w: &[i64], n: i64) -> Vec<u128> {
    let mut b = vec![0u128; n as usize];
    for (i, e) in masks.mons.iter().enumerate() {
        b[e.dot(w).rem_euclid(n) as usize] |= 1 << i;
    }
    b
}

/// Every diagonal class diag(1, ζ_25^a, ζ_25^b, ζ_25^c, ζ_25^d) of projective order 25,
/// with every character χ mod 25: the χ-semi-invariant quintics must all be singular
/// at the support level.
pub fn sweep_order25() -> SweepReport {
    let masks = Masks::new();
    let classes: Vec<[i64; 5]> = (0..25i64.pow(4))
        .map(|k| [0, k % 25, k / 25 % 25, k / 625 % 25, k / 15625])
        .filter(|w| w.iter().any(|x| x % 5 != 0))
        .collect();
    let survivors: Vec<String> = classes
        .par_iter()
        .flat_map_iter(|w| {
            let b = buckets(&masks, w, 25);
            (0..25)
                .filter(|&chi| masks.certificate(b[chi]).is_none())
                .map(|chi| format!("weights ({}) chi {chi}", weights_string(w)))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut counts = BTreeMap::new();
    counts.insert("classes".into(), classes.len() as u64);
    counts.insert("pairs".into(), 25 * classes.len() as u64);
    counts.insert("certified".into(), 25 * classes.len() as u64 - survivors.len() as u64);
    SweepReport {
        name: "order25".into(),
        counts,
        escalated: vec![],
        passed: survivors.is_empty(),
        survivors,
        counterexamples: vec![],
    }
}

/// The χ-semi-invariant monomials of one diagonal weight vector mod n (five variables).
pub fn semi_invariant_mask_certificate(weights: &[i64], n: i64, chi: i64) -> Option<IdealPair> {
    let masks = Masks::new();
    masks.certificate(buckets(&masks, weights, n)[chi.rem_euclid(n) as usize])
}

/// All k-dimensional subspaces of F_p^n, each as its reduced row echelon basis.
pub fn subspaces(p: i64, n: usize, k: usize) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    fn choose(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            choose(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    choose(0, n, k, &mut Vec::new(), &mut pivots);
    for piv in pivots {
        // free positions: columns right of the row's pivot that are not pivots
        let free: Vec<(usize, usize)> =
            (0..k).flat_map(|r| (piv[r] + 1..n).filter(|c| !piv.contains(c)).map(move |c| (r, c))).collect();
        let total = (p as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0i64; n]; k];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = 1;
            }
            let mut x = code;
            for &(r, c) in &free {
                rows[r][c] = (x % p as u64) as i64;
                x /= p as u64;
            }
            out.push(rows);
        }
    }
    out
}

/// Whether v lies in the row space of an echelon basis over F_p.
fn in_span(rows: &[Vec<i64>], v: &[i64], p: i64) -> bool {
    let mut r = v.to_vec();
    for row in rows {
        let c = row.iter().position(|&x| x != 0).expect("nonzero row");
        let f = r[c];
        for (x, y) in r.iter_mut().zip(row) {
            *x = (*x - f * y).rem_euclid(p);
        }
    }
    r.iter().all(|&x| x == 0)
}

/// How one elementary-abelian candidate was excluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateOutcome {
    /// A support-level certificate covers every invariant quintic.
    Certified(IdealPair),
    /// No support certificate; the member with coefficients 1, 2, 3, ... was certified.
    Escalated(SmoothnessVerdict),
}

/// Excludes the diagonal group with the given weight rows mod p, acting with trivial character.
pub fn elementary_abelian_candidate(p: i64, rows: &[Vec<i64>]) -> CandidateOutcome {
    let masks = Masks::new();
    let mut s = u128::MAX >> (128 - masks.mons.len());
    for w in rows {
        s &= buckets(&masks, w, p)[0];
    }
    if let Some(c) = masks.certificate(s) {
        return CandidateOutcome::Certified(c);
    }
    let support = masks.support(s);
    let terms: Vec<(Exponent, Rational)> =
        support.iter().enumerate().map(|(i, e)| (*e, Rational::from_int(i as i64 + 1))).collect();
    let f = Polynomial::with_rational_coeffs(5, 5, &terms);
    CandidateOutcome::Escalated(smoothcert::certify(&f, smoothcert::DEFAULT_PRIMES))
}

fn rows_string(rows: &[Vec<i64>]) -> String {
    rows.iter().map(|r| format!("({})", weights_string(r))).collect::<Vec<_>>().join(" ")
}

/// Rank-3 subgroups of (Z/p)^5 avoiding the scalar direction (1, ..., 1): each must fail
/// to leave a smooth quintic invariant.
pub fn sweep_elementary_abelian(p: i64) -> SweepReport {
    assert!(p == 2 || p == 3, "the sweep is defined for p = 2 and p = 3");
    let all = subspaces(p, 5, 3);
    let ones = vec![1i64; 5];
    let candidates: Vec<&Vec<Vec<i64>>> = all.iter().filter(|rows| !in_span(rows, &ones, p)).collect();
    let outcomes: Vec<(String, CandidateOutcome)> =
        candidates.par_iter().map(|rows| (rows_string(rows), elementary_abelian_candidate(p, rows))).collect();
    let mut escalated = Vec::new();
    let mut counterexamples = Vec::new();
    for (name, o) in &outcomes {
        if let CandidateOutcome::Escalated(v) = o {
            escalated.push(Escalation { candidate: name.clone(), verdict: v.label().into() });
            if v.is_smooth() {
                counterexamples.push(name.clone());
            }
        }
    }
    let mut counts = BTreeMap::new();
    counts.insert("subspaces".into(), all.len() as u64);
    counts.insert("containingAllOnes".into(), (all.len() - candidates.len()) as u64);
    counts.insert("candidates".into(), candidates.len() as u64);
    counts.insert("supportCertified".into(), (outcomes.len() - escalated.len()) as u64);
    SweepReport {
        name: format!("c{p}cubed"),
        counts,
        escalated,
        passed: counterexamples.is_empty(),
        survivors: counterexamples.clone(),
        counterexamples,
    }
}
