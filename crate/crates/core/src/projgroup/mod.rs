//! Finite subgroups of PGL(n) given by generators: enumeration, orders, fingerprints.

use std::collections::{HashMap, VecDeque};

use indexmap::IndexSet;
use num_integer::Integer;
use serde::Serialize;

use crate::exactnum::Cyclotomic;
use crate::polyring::{PolyError, Polynomial, SquareMatrix};

pub const DEFAULT_CAP: usize = 200_000;
const ORDER_CAP: u64 = 1_000_000;
/// Conjugacy classes are only counted for groups up to this order.
pub const CLASS_COUNT_LIMIT: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("group enumeration exceeded the cap of {0} elements")]
    CapExceeded(u64),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("group element {0} does not leave the polynomial semi-invariant")]
    NotInvariant(usize),
    #[error("element set is not closed under multiplication")]
    NotClosed,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A matrix scaled so its first nonzero entry (row-major) is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjectiveClass(SquareMatrix);

fn normalize(a: SquareMatrix) -> SquareMatrix {
    let first = a.entries().iter().find(|x| !x.is_zero()).expect("zero matrix").clone();
    if first.is_one() {
        return a;
    }
    let inv = first.inv().expect("nonzero entry");
    let n = a.n();
    let m = a.conductor();
    let entries = a.entries().iter().map(|x| if x.is_zero() { x.clone() } else { x * &inv }).collect();
    SquareMatrix::from_entries(n, m, entries)
}

impl ProjectiveClass {
    pub fn canonicalize(a: &SquareMatrix) -> Result<Self, GroupError> {
        if a.det().is_zero() {
            return Err(GroupError::SingularMatrix);
        }
        Ok(ProjectiveClass(normalize(a.clone())))
    }

    /// Canonicalizes a matrix already known to be invertible.
    pub fn from_invertible(a: SquareMatrix) -> Self {
        ProjectiveClass(normalize(a))
    }

    pub fn rep(&self) -> &SquareMatrix {
        &self.0
    }

    pub fn into_rep(self) -> SquareMatrix {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn conductor(&self) -> u64 {
        self.0.conductor()
    }

    pub fn at(&self, m: u64) -> Self {
        ProjectiveClass(self.0.at(m))
    }

    pub fn mul(&self, other: &Self) -> Self {
        ProjectiveClass(normalize(self.0.mul(&other.0)))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn identity(n: usize, conductor: u64) -> Self {
        ProjectiveClass(SquareMatrix::identity(n, conductor))
    }

    /// Exactly one nonzero entry in each row and column.
    pub fn is_semi_permutation(&self) -> bool {
        self.0.semi_permutation_shape().is_some()
    }
}

/// Least m with A^m scalar.
pub fn projective_order(a: &ProjectiveClass) -> Result<u64, GroupError> {
    let mut p = a.rep().clone();
    for m in 1..=ORDER_CAP {
        if p.as_scalar().is_some() {
            return Ok(m);
        }
        p = normalize(p.mul(a.rep()));
    }
    Err(GroupError::CapExceeded(ORDER_CAP))
}

/// Least m with A^m = I (for an honest matrix of finite order).
pub fn matrix_order(a: &SquareMatrix, cap: u64) -> Option<u64> {
    let mut p = a.clone();
    for m in 1..=cap {
        if p.is_identity() {
            return Some(m);
        }
        p = p.mul(a);
    }
    None
}

/// How elements are put into canonical form during enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Elements of PGL(n): scalar multiples are identified.
    Projective,
    /// Elements of GL(n): matrices taken literally.
    Linear,
}

/// A fully enumerated finite group of matrices (projective or linear).
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    mode: Mode,
    n: usize,
    conductor: u64,
    elements: IndexSet<SquareMatrix>,
    /// Index of each generator in `elements`.
    generators: Vec<usize>,
    /// Breadth-first tree: element i = generators[g] · element[parent], when built by closure.
    tree: Option<Vec<(usize, usize)>>,
}

fn common_conductor(gens: &[SquareMatrix]) -> u64 {
    gens.iter().fold(1u64, |acc, g| acc.lcm(&g.conductor()))
}

impl GeneratedGroup {
    fn canon(&self, a: SquareMatrix) -> SquareMatrix {
        match self.mode {
            Mode::Projective => normalize(a),
            Mode::Linear => a,
        }
    }

    /// Enumerates ⟨gens⟩ by breadth-first left multiplication; deterministic element order.
    pub fn closure(gens: &[SquareMatrix], mode: Mode, cap: usize, n_hint: Option<usize>) -> Result<Self, GroupError> {
        let n = match (gens.first(), n_hint) {
            (Some(g), _) => g.n(),
            (None, Some(n)) => n,
            (None, None) => return Err(GroupError::DimensionMismatch),
        };
        if gens.iter().any(|g| g.n() != n) {
            return Err(GroupError::DimensionMismatch);
        }
        let m = common_conductor(gens);
        let mut grp = GeneratedGroup {
            mode,
            n,
            conductor: m,
            elements: IndexSet::new(),
            generators: Vec::new(),
            tree: Some(Vec::new()),
        };
        let lifted: Vec<SquareMatrix> = gens.iter().map(|g| grp.canon(g.at(m))).collect();
        grp.elements.insert(SquareMatrix::identity(n, m));
        let mut tree = vec![(0usize, usize::MAX)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, g) in lifted.iter().enumerate() {
                let prod = grp.canon(g.mul(&grp.elements[i]));
                let (idx, fresh) = grp.elements.insert_full(prod);
                if fresh {
                    if grp.elements.len() > cap {
                        return Err(GroupError::CapExceeded(cap as u64));
                    }
                    tree.push((i, gi));
                    queue.push_back(idx);
                }
            }
        }
        grp.generators = lifted.iter().map(|g| grp.elements.get_index_of(g).expect("generator enumerated")).collect();
        grp.tree = Some(tree);
        Ok(grp)
    }

    /// Projective closure of the classes of `gens`.
    pub fn projective(gens: &[SquareMatrix], cap: usize) -> Result<Self, GroupError> {
        for g in gens {
            if g.det().is_zero() {
                return Err(GroupError::SingularMatrix);
            }
        }
        Self::closure(gens, Mode::Projective, cap, None)
    }

    /// Matrix-group closure in GL(n).
    pub fn linear(gens: &[SquareMatrix], cap: usize) -> Result<Self, GroupError> {
        Self::closure(gens, Mode::Linear, cap, None)
    }

    /// Group on a set of matrices that should already be closed under multiplication.
    /// Generators are picked greedily, each one being the first element not yet reached;
    /// elements are reordered by discovery so the tree stays valid.
    pub fn from_closed_set(set: &[SquareMatrix], mode: Mode) -> Result<Self, GroupError> {
        let n = set.first().ok_or(GroupError::DimensionMismatch)?.n();
        if set.iter().any(|g| g.n() != n) {
            return Err(GroupError::DimensionMismatch);
        }
        let m = common_conductor(set);
        let mut grp = GeneratedGroup {
            mode,
            n,
            conductor: m,
            elements: IndexSet::new(),
            generators: Vec::new(),
            tree: None,
        };
        let mut all: IndexSet<SquareMatrix> = IndexSet::new();
        all.insert(SquareMatrix::identity(n, m));
        for a in set {
            all.insert(grp.canon(a.at(m)));
        }
        let mut member = vec![false; all.len()];
        member[0] = true;
        let mut list = vec![0usize];
        let mut tree = vec![(0usize, usize::MAX)];
        let mut gens: Vec<usize> = Vec::new();
        let visit = |x: usize, gi: usize, g: usize, member: &mut Vec<bool>, list: &mut Vec<usize>, tree: &mut Vec<(usize, usize)>, pos: usize| {
            let y = all.get_index_of(&grp.canon(all[g].mul(&all[x]))).ok_or(GroupError::NotClosed)?;
            if !member[y] {
                member[y] = true;
                list.push(y);
                tree.push((pos, gi));
            }
            Ok::<(), GroupError>(())
        };
        for cand in 1..all.len() {
            if member[cand] {
                continue;
            }
            gens.push(cand);
            let gi = gens.len() - 1;
            let old = list.len();
            for pos in 0..old {
                visit(list[pos], gi, cand, &mut member, &mut list, &mut tree, pos)?;
            }
            let mut head = old;
            while head < list.len() {
                for (gj, &g) in gens.iter().enumerate() {
                    visit(list[head], gj, g, &mut member, &mut list, &mut tree, head)?;
                }
                head += 1;
            }
        }
        let pos_of: HashMap<usize, usize> = list.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        grp.generators = gens.iter().map(|g| pos_of[g]).collect();
        grp.elements = list.iter().map(|&i| all[i].clone()).collect();
        grp.tree = Some(tree);
        Ok(grp)
    }

    /// Subgroup made of the listed element indices (assumed closed and starting
    /// with the identity), keeping the parent's order. Generators are chosen greedily.
    fn subset(&self, idx: &[usize]) -> GeneratedGroup {
        let mut sub = GeneratedGroup {
            mode: self.mode,
            n: self.n,
            conductor: self.conductor,
            elements: idx.iter().map(|&i| self.elements[i].clone()).collect(),
            generators: Vec::new(),
            tree: None,
        };
        let mut covered = vec![false; sub.order()];
        covered[0] = true;
        for i in 1..sub.order() {
            if !covered[i] {
                sub.generators.push(i);
                for x in sub.subgroup_closure(&sub.generators.clone()) {
                    covered[x] = true;
                }
            }
        }
        sub
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn elements(&self) -> impl Iterator<Item = &SquareMatrix> {
        self.elements.iter()
    }

    pub fn element(&self, i: usize) -> &SquareMatrix {
        &self.elements[i]
    }

    pub fn index_of(&self, a: &SquareMatrix) -> Option<usize> {
        let a = self.canon(a.at(self.conductor));
        self.elements.get_index_of(&a)
    }

    pub fn contains(&self, a: &SquareMatrix) -> bool {
        a.conductor() <= self.conductor && self.conductor.is_multiple_of(a.conductor()) && self.index_of(a).is_some()
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    /// Parent links of the breadth-first tree, if this group was built by closure.
    pub fn tree(&self) -> Option<&[(usize, usize)]> {
        self.tree.as_deref()
    }

    /// Index of element_i · element_j.
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        let p = self.canon(self.elements[i].mul(&self.elements[j]));
        self.elements.get_index_of(&p).expect("group is closed")
    }

    /// Element orders, computed by walking each cyclic subgroup once.
    pub fn element_orders(&self) -> Vec<u64> {
        let mut ord = vec![0u64; self.order()];
        for start in 0..self.order() {
            if ord[start] != 0 {
                continue;
            }
            let mut pw = vec![start];
            let mut cur = self.elements[start].clone();
            while !cur.is_identity() {
                cur = self.canon(cur.mul(&self.elements[start]));
                pw.push(self.elements.get_index_of(&cur).expect("group is closed"));
            }
            let m = pw.len() as u64;
            for (k, &idx) in pw.iter().enumerate() {
                let k = k as u64 + 1;
                ord[idx] = m / k.gcd(&m);
            }
        }
        ord
    }

    fn inverse_idx(&self, i: usize, order: u64) -> usize {
        let p = self.elements[i].pow(order - 1);
        self.elements.get_index_of(&self.canon(p)).expect("group is closed")
    }

    /// Smallest subgroup containing the given element indices.
    fn subgroup_closure(&self, seeds: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        let id = 0usize;
        member[id] = true;
        let mut list = vec![id];
        let gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != id).collect();
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in &gens {
                let y = self.mul_idx(g, x);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
        }
        list
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        let orders = self.element_orders();
        let mut hist = std::collections::BTreeMap::new();
        for &o in &orders {
            *hist.entry(o).or_insert(0usize) += 1;
        }
        let exponent = orders.iter().fold(1u64, |a, &b| a.lcm(&b));
        let gens = &self.generators;
        let is_abelian = gens.iter().all(|&a| gens.iter().all(|&b| self.mul_idx(a, b) == self.mul_idx(b, a)));
        let center: Vec<usize> = (0..self.order())
            .filter(|&x| gens.iter().all(|&g| self.mul_idx(g, x) == self.mul_idx(x, g)))
            .collect();
        let inv: HashMap<usize, usize> = gens.iter().map(|&g| (g, self.inverse_idx(g, orders[g]))).collect();
        let derived = self.derived_subgroup(&inv);
        let class_count = (self.order() <= CLASS_COUNT_LIMIT).then(|| self.class_count(&inv));
        GroupFingerprint {
            order: self.order(),
            is_abelian,
            exponent,
            element_order_histogram: hist,
            center_order: center.len(),
            derived_subgroup_order: derived.len(),
            conjugacy_class_count: class_count,
        }
    }

    /// Normal closure of the generator commutators.
    fn derived_subgroup(&self, inv: &HashMap<usize, usize>) -> Vec<usize> {
        let gens = &self.generators;
        let mut seeds = Vec::new();
        for &a in gens {
            for &b in gens {
                let ab = self.mul_idx(a, b);
                let c = self.mul_idx(self.mul_idx(ab, inv[&a]), inv[&b]);
                if c != 0 && !seeds.contains(&c) {
                    seeds.push(c);
                }
            }
        }
        loop {
            let h = self.subgroup_closure(&seeds);
            let mut member = vec![false; self.order()];
            for &x in &h {
                member[x] = true;
            }
            let mut added = false;
            for s in seeds.clone() {
                for &g in gens {
                    let conj = self.mul_idx(self.mul_idx(g, s), inv[&g]);
                    if !member[conj] {
                        seeds.push(conj);
                        added = true;
                    }
                }
            }
            if !added {
                return h;
            }
        }
    }

    /// Number of orbits under conjugation by the generators.
    fn class_count(&self, inv: &HashMap<usize, usize>) -> usize {
        let mut seen = vec![false; self.order()];
        let mut classes = 0;
        for start in 0..self.order() {
            if seen[start] {
                continue;
            }
            classes += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &g in &self.generators {
                    let y = self.mul_idx(self.mul_idx(g, x), inv[&g]);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        classes
    }

    /// Elements [A] whose canonical representative satisfies A(F) = det(A)·F.
    ///
    /// For n = d = 5 both sides scale by c^5 under A → cA, so the test does not
    /// depend on the representative.
    pub fn gorenstein_subgroup(&self, f: &Polynomial) -> Result<GeneratedGroup, GroupError> {
        if f.nvars() != self.n {
            return Err(GroupError::DimensionMismatch);
        }
        let mut keep = Vec::new();
        for (i, a) in self.elements.iter().enumerate() {
            let lambda = f.semi_invariance_factor(a)?.ok_or(GroupError::NotInvariant(i))?;
            if lambda == a.det() {
                keep.push(i);
            }
        }
        Ok(self.subset(&keep))
    }

    /// Semi-invariance factor of every element (None where F is not proportional).
    pub fn factors(&self, f: &Polynomial) -> Result<Vec<Option<Cyclotomic>>, GroupError> {
        self.elements.iter().map(|a| f.semi_invariance_factor(a).map_err(GroupError::from)).collect()
    }
}

/// Structural invariants used in place of an isomorphism-type lookup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupFingerprint {
    #[serde(serialize_with = "crate::decimal::int")]
    pub order: usize,
    pub is_abelian: bool,
    #[serde(serialize_with = "crate::decimal::int")]
    pub exponent: u64,
    #[serde(serialize_with = "crate::decimal::map")]
    pub element_order_histogram: std::collections::BTreeMap<u64, usize>,
    #[serde(serialize_with = "crate::decimal::int")]
    pub center_order: usize,
    #[serde(serialize_with = "crate::decimal::int")]
    pub derived_subgroup_order: usize,
    /// `None` when the group is larger than [`CLASS_COUNT_LIMIT`].
    #[serde(serialize_with = "crate::decimal::opt")]
    pub conjugacy_class_count: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::zeta;
    use crate::polyring::parse_matrices;

    #[test]
    fn canonical_forms() {
        let s = SquareMatrix::scalar(5, zeta(5, 1));
        assert!(ProjectiveClass::canonicalize(&s).unwrap().is_identity());
        let d = SquareMatrix::diagonal_roots(5, &[1, 0, 0, 0, 0]);
        let c = ProjectiveClass::canonicalize(&d).unwrap();
        assert_eq!(c.rep(), &SquareMatrix::diagonal_roots(5, &[0, 4, 4, 4, 4]));
        let p = SquareMatrix::permutation(&[1, 2, 3, 4, 0], 1);
        assert_eq!(ProjectiveClass::canonicalize(&p).unwrap().rep(), &p);
        let c2 = ProjectiveClass::canonicalize(&d.scale(&zeta(7, 3))).unwrap();
        assert_eq!(c2.rep(), &c.rep().at(35));
        assert!(c.is_semi_permutation());
    }

    #[test]
    fn projective_orders() {
        let a = ProjectiveClass::canonicalize(&SquareMatrix::diagonal_roots(25, &[0, 1, -4, 16, 11])).unwrap();
        assert_eq!(projective_order(&a).unwrap(), 25);
        assert_eq!(projective_order(&ProjectiveClass::identity(5, 1)).unwrap(), 1);
        let k = ProjectiveClass::canonicalize(&SquareMatrix::diagonal_roots(5, &[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(projective_order(&k).unwrap(), 5);
    }

    #[test]
    fn trivial_and_cyclic_groups() {
        let g = GeneratedGroup::projective(&[SquareMatrix::scalar(5, zeta(5, 1))], 10).unwrap();
        assert_eq!(g.order(), 1);
        let fp = g.fingerprint();
        assert!(fp.is_abelian);
        assert_eq!(fp.exponent, 1);
        let c = GeneratedGroup::projective(&[SquareMatrix::diagonal_roots(8, &[0, 1, 3, 0, 2])], 100).unwrap();
        let fp = c.fingerprint();
        assert_eq!((fp.order, fp.exponent, fp.conjugacy_class_count), (8, 8, Some(8)));
        assert!(matches!(
            GeneratedGroup::projective(&[SquareMatrix::diagonal_roots(8, &[0, 1, 3, 0, 2])], 4),
            Err(GroupError::CapExceeded(4))
        ));
    }

    #[test]
    fn symmetric_group_fingerprint() {
        let gens = parse_matrices("0,1,0\n1,0,0\n0,0,1\n\n0,1,0\n0,0,1\n1,0,0\n").unwrap();
        let g = GeneratedGroup::projective(&gens, 100).unwrap();
        let fp = g.fingerprint();
        assert_eq!(fp.order, 6);
        assert!(!fp.is_abelian);
        assert_eq!(fp.center_order, 1);
        assert_eq!(fp.derived_subgroup_order, 3);
        assert_eq!(fp.conjugacy_class_count, Some(3));
        assert_eq!(fp.element_order_histogram.values().sum::<usize>(), 6);
        let lin = GeneratedGroup::linear(&gens, 100).unwrap();
        assert_eq!(lin.order(), 6);
    }
}
