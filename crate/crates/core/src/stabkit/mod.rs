//! Stabilizers: semi-permutation symmetries of a form, lifts from PGL to GL fixing
//! the form, and stabilizers of five points on the projective line.

pub mod snf;

use std::collections::HashMap;

use indexmap::IndexSet;
use num_integer::Integer;
use serde::Serialize;

use crate::exactnum::{Cyclotomic, Rational};
use crate::polyring::{PolyError, Polynomial, SquareMatrix};
use crate::projgroup::{matrix_order, projective_order, GeneratedGroup, GroupError, Mode, ProjectiveClass};
use snf::{enumerate, frac, solve_mod_one, Congruence};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabError {
    #[error("permutation {0:?} admits a positive-dimensional family of diagonal scalings")]
    InfiniteFamily(Vec<usize>),
    #[error("matrix does not leave the form semi-invariant")]
    NotSemiInvariant,
    #[error("semi-invariance factor is not a root of unity")]
    NonTorsionFactor,
    #[error("group was not built by closure, so no word tree is available")]
    NoTree,
    #[error("lifted generators close to order {got}, expected {expected}")]
    LiftCheckFailed { got: usize, expected: usize },
    #[error("point {0} is not a root of the binary form")]
    RootMismatch(usize),
    #[error("the given roots are not pairwise distinct")]
    NotDistinct,
    #[error("a binary form needs at least three distinct roots here")]
    TooFewRoots,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One diagonal scaling s_k = e^{2πi d_k} with factor λ = e^{2πi l}, values in [0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalSolution {
    pub scales: Vec<Rational>,
    pub factor: Rational,
}

fn root(q: &Rational) -> Cyclotomic {
    let (a, b) = q.as_small().expect("small rational exponent");
    Cyclotomic::root_of_unity(b as u64, a)
}

impl DiagonalSolution {
    /// Least common denominator of the scales and the factor.
    pub fn modulus(&self) -> u64 {
        self.scales.iter().chain([&self.factor]).fold(1u64, |m, q| m.lcm(&(q.as_small().expect("small").1 as u64)))
    }

    /// The semi-permutation matrix with row k equal to s_k at column perm[k].
    pub fn matrix(&self, perm: &[usize]) -> SquareMatrix {
        let m = self.modulus();
        let scale: Vec<Cyclotomic> = self.scales.iter().map(|q| root(q).at(m)).collect();
        SquareMatrix::semi_permutation(perm, &scale)
    }
}

/// All diagonal scalings D making D·P_σ a symmetry of F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalSolutionSet {
    pub perm: Vec<usize>,
    pub solutions: Vec<DiagonalSolution>,
    /// Some coefficient ratio c_{σ(e)}/c_e is not a root of unity, so nothing is reported.
    pub non_torsion: bool,
}

/// Solves for the diagonal part of semi-permutation symmetries with permutation σ.
///
/// `semi = true` asks for A(F) = λF up to scalars (d_1 normalized to 0, λ free);
/// `semi = false` asks for A(F) = F exactly. Each equation reads
/// Σ e_k d_k − l ≡ r_e (mod 1) where ζ^{r_e} = c_{σ(e)} / c_e, and the system is
/// solved exactly over Q/Z through a Smith normal form.
pub fn diagonal_solutions(f: &Polynomial, perm: &[usize], semi: bool) -> Result<DiagonalSolutionSet, StabError> {
    let n = f.nvars();
    assert_eq!(perm.len(), n);
    let empty = |non_torsion| Ok(DiagonalSolutionSet { perm: perm.to_vec(), solutions: vec![], non_torsion });
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (e, c) in f.terms() {
        let e2 = e.permute(perm);
        let Some(c2) = f.coeff(&e2) else {
            return empty(false);
        };
        let ratio = c2 * &c.inv().expect("support coefficient is nonzero");
        let Some((m, j)) = ratio.as_root_of_unity() else {
            return empty(true);
        };
        let ents = e.entries();
        let mut row: Vec<i64> = if semi { ents[1..].iter().map(|&x| x as i64).collect() } else { ents.iter().map(|&x| x as i64).collect() };
        if semi {
            row.push(-1);
        }
        rows.push(row);
        rhs.push(Rational::new(j as i64, m as i64));
    }
    let (particular, generators) = match solve_mod_one(&rows, &rhs, n) {
        Congruence::Inconsistent => return empty(false),
        Congruence::Infinite => return Err(StabError::InfiniteFamily(perm.to_vec())),
        Congruence::Finite { particular, generators } => (particular, generators),
    };
    let mut solutions = Vec::new();
    for x in enumerate(&particular, &generators) {
        let sol = if semi {
            let mut scales = vec![Rational::zero()];
            scales.extend_from_slice(&x[..n - 1]);
            DiagonalSolution { scales, factor: x[n - 1].clone() }
        } else {
            DiagonalSolution { scales: x, factor: Rational::zero() }
        };
        let a = sol.matrix(perm);
        let lambda = f.semi_invariance_factor(&a)?.ok_or(StabError::NotSemiInvariant)?;
        assert_eq!(lambda, root(&sol.factor).at(lambda.conductor()), "diagonal solution fails substitution");
        solutions.push(sol);
    }
    Ok(DiagonalSolutionSet { perm: perm.to_vec(), solutions, non_torsion: false })
}

/// Whether σ maps the support of F onto itself.
fn preserves_support(f: &Polynomial, perm: &[usize]) -> bool {
    f.terms().all(|(e, _)| f.contains_monomial(&e.permute(perm)))
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Report of a full semi-permutation stabilizer computation.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SemipermReport {
    #[serde(serialize_with = "crate::decimal::int")]
    pub order: usize,
    /// Number of permutations preserving the support.
    pub permutations: usize,
    /// Permutations skipped because a coefficient ratio is not a root of unity.
    pub non_torsion: usize,
    #[serde(skip)]
    pub group: GeneratedGroup,
}

/// The group of semi-permutation matrices A with A(F) ∝ F (or A(F) = F when `semi` is false),
/// as a projective (resp. linear) group.
pub fn semiperm_stabilizer(f: &Polynomial, semi: bool) -> Result<SemipermReport, StabError> {
    let n = f.nvars();
    let mut set: IndexSet<SquareMatrix> = IndexSet::new();
    let mut count = 0usize;
    let mut supported = 0usize;
    let mut non_torsion = 0usize;
    for perm in permutations(n) {
        if !preserves_support(f, &perm) {
            continue;
        }
        supported += 1;
        let sols = diagonal_solutions(f, &perm, semi)?;
        non_torsion += sols.non_torsion as usize;
        for s in &sols.solutions {
            let a = s.matrix(&perm);
            let a = if semi { ProjectiveClass::canonicalize(&a)?.into_rep() } else { a };
            set.insert(a);
            count += 1;
        }
    }
    let mode = if semi { Mode::Projective } else { Mode::Linear };
    let elems: Vec<SquareMatrix> = set.into_iter().collect();
    let group = GeneratedGroup::from_closed_set(&elems, mode)?;
    assert_eq!(group.order(), count, "semi-permutation solutions do not form a group of the expected size");
    Ok(SemipermReport { order: group.order(), permutations: supported, non_torsion, group })
}

/// (m, j) with λ = ζ_m^j, for a semi-invariant matrix.
fn torsion_factor(f: &Polynomial, a: &SquareMatrix) -> Result<(u64, u64), StabError> {
    let lambda = f.semi_invariance_factor(a)?.ok_or(StabError::NotSemiInvariant)?;
    lambda.as_root_of_unity().ok_or(StabError::NonTorsionFactor)
}

/// c·A with (cA)(F) = F for the k-th branch c = ζ_{dm}^{-j}·ζ_d^k.
fn branch(f: &Polynomial, a: &SquareMatrix, k: u64) -> Result<SquareMatrix, StabError> {
    let d = f.degree() as u64;
    let (m, j) = torsion_factor(f, a)?;
    let c = &Cyclotomic::root_of_unity(d * m, -(j as i64)) * &Cyclotomic::root_of_unity(d, k as i64).at(d * m);
    let l = a.conductor().lcm(&c.conductor());
    let b = a.at(l).scale(&c.at(l));
    let lambda = f.semi_invariance_factor(&b)?.ok_or(StabError::NotSemiInvariant)?;
    assert!(lambda.is_one(), "branch lift does not fix the form");
    Ok(b)
}

/// A representative of [A] fixing F whose matrix order equals the projective order of [A],
/// if one exists.
pub fn f_lift_element(a: &ProjectiveClass, f: &Polynomial) -> Result<Option<SquareMatrix>, StabError> {
    let ord = projective_order(a)?;
    for k in 0..f.degree() as u64 {
        let b = branch(f, a.rep(), k)?;
        if matrix_order(&b, ord) == Some(ord) {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Result of the group lifting problem.
#[derive(Clone, Debug)]
pub struct GroupLift {
    /// Lifted generators, one per generator of the projective group.
    pub generators: Vec<SquareMatrix>,
    /// Branch exponent k_i chosen for each generator.
    pub branches: Vec<u64>,
}

/// Finds a subgroup of GL(n) fixing F mapping isomorphically onto the projective group G.
///
/// Each generator has d lifts fixing F, differing by ζ_d^k. Lifting along the
/// breadth-first tree of G and comparing each product g_i·w with the lift of its
/// target gives one relation Σ_j k_j n_j + t ≡ 0 (mod d) on the branch choices,
/// and these congruences are solved exactly. The answer is then confirmed by
/// enumerating the lifted group.
pub fn f_lift_group(g: &GeneratedGroup, f: &Polynomial) -> Result<Option<GroupLift>, StabError> {
    let tree = g.tree().ok_or(StabError::NoTree)?;
    let d = f.degree() as u64;
    let gen_idx = g.generator_indices().to_vec();
    let ng = gen_idx.len();
    let base: Vec<SquareMatrix> = gen_idx.iter().map(|&i| branch(f, g.element(i), 0)).collect::<Result<_, _>>()?;
    let l = base.iter().fold(g.conductor().lcm(&d), |acc, b| acc.lcm(&b.conductor()));
    let base: Vec<SquareMatrix> = base.iter().map(|b| b.at(l)).collect();
    let mut words: Vec<SquareMatrix> = Vec::with_capacity(g.order());
    let mut sums: Vec<Vec<u64>> = Vec::with_capacity(g.order());
    for (e, &(parent, gi)) in tree.iter().enumerate() {
        if e == 0 {
            words.push(SquareMatrix::identity(g.n(), l));
            sums.push(vec![0; ng]);
        } else {
            words.push(base[gi].mul(&words[parent]));
            let mut s = sums[parent].clone();
            s[gi] = (s[gi] + 1) % d;
            sums.push(s);
        }
    }
    let mut eqs: HashMap<Vec<u64>, u64> = HashMap::new();
    let mut pending: Vec<(Vec<u64>, u64)> = Vec::new();
    for e in 0..g.order() {
        for (i, &gi) in gen_idx.iter().enumerate() {
            let t = g.mul_idx(gi, e);
            let p = base[i].mul(&words[e]);
            let pos = words[t].entries().iter().position(|x| !x.is_zero()).expect("invertible");
            let s = &p.entries()[pos] * &words[t].entries()[pos].inv().expect("nonzero");
            let (m, j) = s.as_root_of_unity().ok_or(StabError::NotSemiInvariant)?;
            let tw = j * (d / m);
            let mut nv: Vec<u64> = sums[e].clone();
            nv[i] = (nv[i] + 1) % d;
            for (a, b) in nv.iter_mut().zip(&sums[t]) {
                *a = (*a + d - b) % d;
            }
            if nv.iter().all(|&x| x == 0) && tw == 0 {
                continue;
            }
            match eqs.get(&nv) {
                Some(&old) if old == tw => {}
                Some(_) => return Ok(None),
                None => {
                    eqs.insert(nv.clone(), tw);
                    pending.push((nv, tw));
                }
            }
        }
    }
    // Σ n_j x_j ≡ -t/d and d·x_j ≡ 0 over Q/Z, where x_j = k_j/d
    let mut rows: Vec<Vec<i64>> = pending.iter().map(|(nv, _)| nv.iter().map(|&x| x as i64).collect()).collect();
    let mut rhs: Vec<Rational> = pending.iter().map(|(_, t)| frac(&Rational::new(-(*t as i64), d as i64))).collect();
    for j in 0..ng {
        let mut r = vec![0i64; ng];
        r[j] = d as i64;
        rows.push(r);
        rhs.push(Rational::zero());
    }
    let x = match solve_mod_one(&rows, &rhs, ng) {
        Congruence::Finite { particular, .. } => particular,
        Congruence::Inconsistent => return Ok(None),
        Congruence::Infinite => unreachable!("d·x_j ≡ 0 bounds every unknown"),
    };
    let branches: Vec<u64> = x.iter().map(|q| (q * &Rational::from_int(d as i64)).as_small().expect("small").0 as u64).collect();
    let generators: Vec<SquareMatrix> = base
        .iter()
        .zip(&branches)
        .map(|(b, &k)| b.scale(&Cyclotomic::root_of_unity(d, k as i64).at(l)))
        .collect();
    let lifted = match GeneratedGroup::linear(&generators, 10 * g.order()) {
        Ok(h) => h,
        Err(GroupError::CapExceeded(_)) => return Err(StabError::LiftCheckFailed { got: 10 * g.order(), expected: g.order() }),
        Err(e) => return Err(e.into()),
    };
    if lifted.order() != g.order() {
        return Err(StabError::LiftCheckFailed { got: lifted.order(), expected: g.order() });
    }
    Ok(Some(GroupLift { generators, branches }))
}

/// Stabilizer in PGL(2) of the roots of a binary form, given as points [a : b].
///
/// A projective transformation is fixed by the images of three points, so the
/// candidates are the maps sending the first three roots to each ordered triple of
/// distinct roots; those permuting the whole root set are kept.
pub fn binary_quintic_stabilizer(h: &Polynomial, roots: &[[Cyclotomic; 2]]) -> Result<GeneratedGroup, StabError> {
    assert_eq!(h.nvars(), 2);
    if roots.len() < 3 {
        return Err(StabError::TooFewRoots);
    }
    let m = roots.iter().flatten().fold(h.conductor(), |acc, x| acc.lcm(&x.conductor()));
    let pts: Vec<[Cyclotomic; 2]> = roots.iter().map(|r| [r[0].at(m), r[1].at(m)]).collect();
    for (i, r) in pts.iter().enumerate() {
        if !h.at(m).eval(r).is_zero() {
            return Err(StabError::RootMismatch(i));
        }
    }
    let cross = |p: &[Cyclotomic; 2], q: &[Cyclotomic; 2]| &(&p[0] * &q[1]) - &(&p[1] * &q[0]);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if cross(&pts[i], &pts[j]).is_zero() {
                return Err(StabError::NotDistinct);
            }
        }
    }
    // T = [αr1 βr2] with αr1 + βr2 = r3, so T sends [1:0], [0:1], [1:1] to r1, r2, r3
    let frame = |a: &[Cyclotomic; 2], b: &[Cyclotomic; 2], c: &[Cyclotomic; 2]| -> SquareMatrix {
        let det = cross(a, b);
        let di = det.inv().expect("distinct points");
        let alpha = &cross(c, b) * &di;
        let beta = &cross(a, c) * &di;
        SquareMatrix::from_rows(vec![vec![&alpha * &a[0], &beta * &b[0]], vec![&alpha * &a[1], &beta * &b[1]]])
            .expect("2x2")
    };
    let src_inv = frame(&pts[0], &pts[1], &pts[2]).inverse()?;
    let on_roots = |a: &SquareMatrix| {
        pts.iter().all(|p| {
            let img = [&(a.get(0, 0) * &p[0]) + &(a.get(0, 1) * &p[1]), &(a.get(1, 0) * &p[0]) + &(a.get(1, 1) * &p[1])];
            pts.iter().any(|q| cross(&img, q).is_zero())
        })
    };
    let k = pts.len();
    let mut keep = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                if i == j || j == l || i == l {
                    continue;
                }
                let a = frame(&pts[i], &pts[j], &pts[l]).mul(&src_inv);
                if on_roots(&a) {
                    h.semi_invariance_factor(&a)?.ok_or(StabError::NotSemiInvariant)?;
                    keep.push(ProjectiveClass::canonicalize(&a)?.into_rep());
                }
            }
        }
    }
    Ok(GeneratedGroup::from_closed_set(&keep, Mode::Projective)?)
}
