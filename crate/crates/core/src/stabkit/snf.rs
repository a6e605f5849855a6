//! Smith normal form of small integer matrices, and linear congruences over Q/Z.

use num_integer::Integer;

use crate::exactnum::Rational;

/// D = U·A·V with U, V unimodular and D diagonal, d_1 | d_2 | ... (entries non-negative).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub diagonal: Vec<i128>,
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect()
}

fn ck(x: Option<i128>) -> i128 {
    x.expect("integer overflow in Smith normal form")
}

fn row_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, f: i128) {
    if f == 0 {
        return;
    }
    for j in 0..m[dst].len() {
        m[dst][j] = ck(m[dst][j].checked_add(ck(f.checked_mul(m[src][j]))));
    }
}

fn col_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, f: i128) {
    if f == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[dst] = ck(row[dst].checked_add(ck(f.checked_mul(row[src]))));
    }
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form of an r×c integer matrix.
pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> Smith {
    let r = a.len();
    let mut d: Vec<Vec<i128>> = a.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let mut u = identity(r);
    let mut v = identity(cols);
    let mut t = 0;
    while t < r.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = (t..r)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].abs())
        else {
            break;
        };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        let mut dirty = false;
        for i in t + 1..r {
            let q = d[i][t].div_euclid(d[t][t]);
            row_axpy(&mut d, i, t, -q);
            row_axpy(&mut u, i, t, -q);
            dirty |= d[i][t] != 0;
        }
        for j in t + 1..cols {
            let q = d[t][j].div_euclid(d[t][t]);
            col_axpy(&mut d, j, t, -q);
            col_axpy(&mut v, j, t, -q);
            dirty |= d[t][j] != 0;
        }
        if dirty {
            continue;
        }
        // divisibility: fold an offending row into the pivot row and retry
        let p = d[t][t];
        if let Some(i) = (t + 1..r).find(|&i| (t + 1..cols).any(|j| d[i][j] % p != 0)) {
            row_axpy(&mut d, t, i, 1);
            row_axpy(&mut u, t, i, 1);
            continue;
        }
        if p < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let diagonal = (0..r.min(cols)).map(|i| d[i][i]).collect();
    Smith { diagonal, u, v }
}

/// Solution set of A·x ≡ b (mod Z) for x ∈ (Q/Z)^c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Congruence {
    Inconsistent,
    /// Some direction is unconstrained: infinitely many solutions.
    Infinite,
    /// A particular solution and generators of the finite homogeneous solution group,
    /// with the order of each generator.
    Finite { particular: Vec<Rational>, generators: Vec<(Vec<Rational>, u64)> },
}

/// Representative in [0, 1).
pub fn frac(r: &Rational) -> Rational {
    r - &Rational::from_bigint(r.numer().div_floor(&r.denom()))
}

/// Solves A·x ≡ b (mod Z) over Q/Z by Smith normal form.
pub fn solve_mod_one(a: &[Vec<i64>], b: &[Rational], cols: usize) -> Congruence {
    let s = smith_normal_form(a, cols);
    let r = a.len();
    // c = U·b
    let c: Vec<Rational> = (0..r)
        .map(|i| {
            let mut acc = Rational::zero();
            for (k, bk) in b.iter().enumerate() {
                if s.u[i][k] != 0 {
                    acc = &acc + &(&Rational::from_int(s.u[i][k] as i64) * bk);
                }
            }
            frac(&acc)
        })
        .collect();
    let k = s.diagonal.len();
    if c.iter().skip(k).any(|x| !x.is_zero()) {
        return Congruence::Inconsistent;
    }
    let mut y = Vec::with_capacity(cols);
    let mut gens_y = Vec::new();
    for i in 0..cols {
        let di = if i < k { s.diagonal[i] } else { 0 };
        if di == 0 {
            if i < k && !c[i].is_zero() {
                return Congruence::Inconsistent;
            }
            return if (i..k).any(|j| s.diagonal[j] == 0 && !c[j].is_zero()) {
                Congruence::Inconsistent
            } else {
                Congruence::Infinite
            };
        }
        y.push(&c[i] * &Rational::new(1, di as i64));
        if di > 1 {
            gens_y.push((i, di as u64));
        }
    }
    let to_x = |yv: &dyn Fn(usize) -> Rational| -> Vec<Rational> {
        (0..cols)
            .map(|row| {
                let mut acc = Rational::zero();
                for col in 0..cols {
                    if s.v[row][col] != 0 {
                        acc = &acc + &(&Rational::from_int(s.v[row][col] as i64) * &yv(col));
                    }
                }
                frac(&acc)
            })
            .collect()
    };
    let particular = to_x(&|j| y[j].clone());
    let generators = gens_y
        .iter()
        .map(|&(i, di)| (to_x(&|j| if j == i { Rational::new(1, di as i64) } else { Rational::zero() }), di))
        .collect();
    Congruence::Finite { particular, generators }
}

/// Every solution of a finite congruence system, in a fixed order.
pub fn enumerate(particular: &[Rational], generators: &[(Vec<Rational>, u64)]) -> Vec<Vec<Rational>> {
    let mut out = vec![particular.to_vec()];
    for (g, ord) in generators {
        let mut next = Vec::with_capacity(out.len() * *ord as usize);
        for x in &out {
            let mut cur = x.clone();
            for _ in 0..*ord {
                next.push(cur.clone());
                cur = cur.iter().zip(g).map(|(a, b)| frac(&(a + b))).collect();
            }
        }
        out = next;
    }
    out
}
