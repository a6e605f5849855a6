//! Support-level singularity criteria: a form lying in (x_A) + (x_B)^2 with 2|A| + |B| ≤ n − 1 is singular.

use serde::Serialize;

use crate::polyring::{Exponent, Polynomial};

/// Variable sets A (linear part) and B (quadratic part), as 0-based bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdealPair {
    pub a: u32,
    pub b: u32,
}

impl IdealPair {
    /// 1-based indices of A.
    pub fn a_vars(&self) -> Vec<usize> {
        bits(self.a)
    }

    /// 1-based indices of B.
    pub fn b_vars(&self) -> Vec<usize> {
        bits(self.b)
    }

    /// Whether x^e lies in (x_A) + (x_B)^2.
    pub fn contains(&self, e: &Exponent) -> bool {
        e.support().any(|i| self.a >> i & 1 == 1) || e.degree_in(self.b) >= 2
    }

    /// For quintics in five variables the tight pairs are exactly the three conditions
    /// (1) some x_i^4 x_j missing, (2) F ∈ (x_p, x_q), (3) F ∈ (x_i) + (x_j, x_k)^2.
    pub fn quintic_condition(&self, n: usize) -> Option<u8> {
        if n != 5 {
            return None;
        }
        match (self.a.count_ones(), self.b.count_ones()) {
            (0, 4) => Some(1),
            (2, 0) => Some(2),
            (1, 2) => Some(3),
            _ => None,
        }
    }
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// All pairs (A, B) of disjoint variable sets with 2|A| + |B| = n − 1.
///
/// Every admissible pair with 2|A| + |B| < n − 1 extends to one of these by
/// enlarging B, and enlarging B only weakens the containment condition, so the
/// tight pairs are enough. Ordered by |A| descending, then A and B as sorted
/// index lists.
pub fn tight_pairs(n: usize) -> Vec<IdealPair> {
    let mut out = Vec::new();
    let full = (1u32 << n) - 1;
    for a in 0..=full {
        let ka = a.count_ones() as usize;
        if 2 * ka > n - 1 {
            continue;
        }
        let kb = n - 1 - 2 * ka;
        let rest = full & !a;
        let mut b = rest;
        loop {
            if (b.count_ones() as usize) == kb {
                out.push(IdealPair { a, b });
            }
            if b == 0 {
                break;
            }
            b = (b - 1) & rest;
        }
    }
    out.sort_by(|x, y| {
        y.a.count_ones().cmp(&x.a.count_ones()).then_with(|| bits(x.a).cmp(&bits(y.a))).then_with(|| bits(x.b).cmp(&bits(y.b)))
    });
    out
}

/// Indices i (1-based) with no monomial x_i^{d−1} x_j in the support.
pub fn check_power_monomials(f: &Polynomial) -> Vec<usize> {
    let n = f.nvars();
    let d = f.degree();
    (0..n)
        .filter(|&i| !f.support().iter().any(|e| e.get(i) >= d - 1))
        .map(|i| i + 1)
        .collect()
}

/// First tight pair whose ideal contains every monomial of `support`.
pub fn covering_pair(support: &[Exponent], n: usize) -> Option<IdealPair> {
    tight_pairs(n).into_iter().find(|p| support.iter().all(|e| p.contains(e)))
}
