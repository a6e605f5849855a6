//! Dense exact linear algebra over Q(ζ_N) and F_p.
//!
//! Rows are vectors of equal length at a common conductor. Elimination always
//! picks the leftmost available pivot column and the first row carrying it.

use crate::exactnum::primefield::{inv_mod, mul_mod};
use crate::exactnum::Cyclotomic;

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Cyclotomic>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(col) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                if !pv.is_zero() {
                    row[j] = &row[j] - &(&f * pv);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Cyclotomic>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of {v : rows·v = 0}, itself in reduced row echelon form.
pub fn kernel(rows: &[Vec<Cyclotomic>], ncols: usize, conductor: u64) -> Vec<Vec<Cyclotomic>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Cyclotomic::zero(conductor); ncols];
        v[free] = Cyclotomic::one(conductor);
        for (row, &pc) in m.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[pc] = -&row[free];
            }
        }
        basis.push(v);
    }
    rref(&mut basis);
    basis
}

/// Rank over F_p.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_multiple_of(p)) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][col] % p, p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x % p, inv, p);
        }
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[col] % p;
            if f == 0 {
                continue;
            }
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x = (*x % p + p - mul_mod(f, *pv, p)) % p;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::zeta;

    fn q(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(v, 4)
    }

    #[test]
    fn kernel_of_small_matrix() {
        let i = zeta(4, 1);
        // [1, i, 0], [i, -1, 0]: second row is i times the first
        let rows = vec![vec![q(1), i.clone(), q(0)], vec![i.clone(), q(-1), q(0)]];
        assert_eq!(rank(&rows), 1);
        let k = kernel(&rows, 3, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot = &(&rows[0][0] * &v[0]) + &(&rows[0][1] * &v[1]);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn modular_rank_matches() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank_mod_p(rows, 7), 2);
        assert_eq!(rank_mod_p(vec![vec![7, 14]], 7), 0);
    }
}
