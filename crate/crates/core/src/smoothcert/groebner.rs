//! Buchberger's algorithm over F_p in graded reverse lexicographic order (x1 > x2 > ... > xn).

use std::cmp::Ordering;

use crate::exactnum::primefield::{inv_mod, mul_mod};

/// A monomial with a precomputed grevlex sort key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    key: u64,
    e: [u8; 6],
}

impl Mono {
    pub fn new(e: [u8; 6]) -> Self {
        let deg: u64 = e.iter().map(|&v| v as u64).sum();
        let mut key = deg << 48;
        // equal degree: smaller exponent of the last variable is larger
        for (slot, i) in (0..6).rev().enumerate() {
            key |= ((255 - e[i]) as u64) << (40 - 8 * slot);
        }
        Mono { key, e }
    }

    pub fn exps(&self) -> &[u8; 6] {
        &self.e
    }

    pub fn degree(&self) -> u32 {
        (self.key >> 48) as u32
    }

    fn mul(&self, o: &Mono) -> Mono {
        let mut e = self.e;
        for i in 0..6 {
            e[i] += o.e[i];
        }
        Mono::new(e)
    }

    fn divides(&self, o: &Mono) -> bool {
        (0..6).all(|i| self.e[i] <= o.e[i])
    }

    fn div(&self, o: &Mono) -> Mono {
        let mut e = self.e;
        for i in 0..6 {
            e[i] -= o.e[i];
        }
        Mono::new(e)
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut e = self.e;
        for i in 0..6 {
            e[i] = e[i].max(o.e[i]);
        }
        Mono::new(e)
    }

    fn coprime(&self, o: &Mono) -> bool {
        (0..6).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }

    /// The variable index if this monomial is a pure power x_i^k, k ≥ 1.
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..6).filter(|&i| self.e[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

/// Polynomial over F_p: terms sorted by decreasing monomial, nonzero coefficients.
pub type Poly = Vec<(Mono, u64)>;

pub fn normalize(mut f: Poly, p: u64) -> Poly {
    f.retain(|t| t.1 % p != 0);
    f.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out: Poly = Vec::with_capacity(f.len());
    for (m, c) in f {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = (*lc + c) % p,
            _ => out.push((m, c % p)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

fn make_monic(f: &mut Poly, p: u64) {
    if let Some(&(_, lc)) = f.first() {
        if lc != 1 {
            let inv = inv_mod(lc, p);
            for t in f.iter_mut() {
                t.1 = mul_mod(t.1, inv, p);
            }
        }
    }
}

/// h − c·m·g, all terms sorted.
fn sub_mul(h: &[(Mono, u64)], c: u64, m: &Mono, g: &[(Mono, u64)], p: u64) -> Poly {
    let mut out = Vec::with_capacity(h.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gt: Option<(Mono, u64)> = g.first().map(|t| (t.0.mul(m), p - mul_mod(c, t.1, p)));
    while i < h.len() || gt.is_some() {
        match (h.get(i), gt) {
            (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                Ordering::Greater => {
                    out.push(*a);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b);
                    j += 1;
                    gt = g.get(j).map(|t| (t.0.mul(m), p - mul_mod(c, t.1, p)));
                }
                Ordering::Equal => {
                    let s = (a.1 + b.1) % p;
                    if s != 0 {
                        out.push((a.0, s));
                    }
                    i += 1;
                    j += 1;
                    gt = g.get(j).map(|t| (t.0.mul(m), p - mul_mod(c, t.1, p)));
                }
            },
            (Some(a), None) => {
                out.push(*a);
                i += 1;
            }
            (None, Some(b)) => {
                out.push(b);
                j += 1;
                gt = g.get(j).map(|t| (t.0.mul(m), p - mul_mod(c, t.1, p)));
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Full reduction of `h` by the monic basis `g`.
pub fn reduce(mut h: Poly, g: &[Poly], p: u64) -> Poly {
    let mut rest: Poly = Vec::new();
    while let Some(&(lm, lc)) = h.first() {
        match g.iter().find(|gi| gi[0].0.divides(&lm)) {
            Some(gi) => {
                let q = lm.div(&gi[0].0);
                h = sub_mul(&h, lc, &q, gi, p);
            }
            None => {
                rest.push((lm, lc));
                h.remove(0);
            }
        }
    }
    rest
}

fn spoly(f: &[(Mono, u64)], g: &[(Mono, u64)], p: u64) -> Poly {
    let l = f[0].0.lcm(&g[0].0);
    let mf = l.div(&f[0].0);
    let mg = l.div(&g[0].0);
    // both monic: S = mf·f − mg·g
    let zero: Poly = Vec::new();
    let a = sub_mul(&zero, p - 1, &mf, f, p);
    sub_mul(&a, 1, &mg, g, p)
}

/// Options for [`groebner_basis`].
#[derive(Clone, Copy, Debug)]
pub struct BuchbergerOptions {
    /// Stop as soon as every one of the first `n` variables has a pure power among the leading monomials.
    pub stop_when_zero_dim: Option<usize>,
}

/// Outcome of a Buchberger run.
pub struct Basis {
    pub polys: Vec<Poly>,
    /// False when the run stopped early, so `polys` need not be a Gröbner basis.
    pub complete: bool,
}

fn has_all_pure_powers(g: &[Poly], n: usize) -> bool {
    let mut seen = [false; 6];
    for gi in g {
        if let Some(v) = gi[0].0.pure_power_var() {
            seen[v] = true;
        }
    }
    seen[..n].iter().all(|&s| s)
}

/// Buchberger with normal selection (least lcm first) and the coprime-leading-monomial criterion.
pub fn groebner_basis(input: Vec<Poly>, p: u64, opts: BuchbergerOptions) -> Basis {
    let mut g: Vec<Poly> = Vec::new();
    let mut pairs: Vec<(Mono, usize, usize)> = Vec::new();
    let add = |h: Poly, g: &mut Vec<Poly>, pairs: &mut Vec<(Mono, usize, usize)>| {
        let k = g.len();
        for (i, gi) in g.iter().enumerate() {
            if !gi[0].0.coprime(&h[0].0) {
                pairs.push((gi[0].0.lcm(&h[0].0), i, k));
            }
        }
        g.push(h);
    };
    for f in input {
        let mut h = reduce(normalize(f, p), &g, p);
        if !h.is_empty() {
            make_monic(&mut h, p);
            add(h, &mut g, &mut pairs);
        }
    }
    loop {
        if let Some(n) = opts.stop_when_zero_dim {
            if has_all_pure_powers(&g, n) {
                return Basis { polys: g, complete: false };
            }
        }
        // normal strategy: smallest lcm; ties broken by pair indices for determinism
        let Some(pos) = pairs.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|(i, _)| i) else {
            break;
        };
        let (_, i, j) = pairs.swap_remove(pos);
        let s = spoly(&g[i], &g[j], p);
        let mut h = reduce(s, &g, p);
        if !h.is_empty() {
            make_monic(&mut h, p);
            add(h, &mut g, &mut pairs);
        }
    }
    Basis { polys: g, complete: true }
}

/// Checks that every S-polynomial of `g` reduces to zero.
pub fn is_groebner(g: &[Poly], p: u64) -> bool {
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if !reduce(spoly(&g[i], &g[j], p), g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Whether the leading monomials contain a pure power of each of the first `n` variables.
pub fn zero_dimensional(g: &[Poly], n: usize) -> bool {
    has_all_pure_powers(g, n)
}
