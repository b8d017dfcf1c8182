//! Finite groups given by multiplication tables, and the fusion rings and
//! sequences built from them.

mod catalog;
mod characters;
mod extension;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ring::FusionRing;
use crate::ring::Unit;
use crate::validation::{ValidationReport, ViolationKind};

pub use catalog::{catalog, catalog_group, CatalogEntry};
pub use characters::{admissible_primes, rep_g_fusion, rep_g_fusion_at, CharacterFusion};
pub use extension::{extension_sequence, inflation_matrix, restriction_matrix, restriction_matrix_at, restriction_sequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    name: Option<String>,
}

/// Exhaustive check of the group axioms on a raw table.
pub fn validate_group(mult: &[Vec<usize>]) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let n = mult.len();
    if n == 0 {
        rep.push(ViolationKind::Shape, vec![], "empty table");
        return rep;
    }
    for (a, row) in mult.iter().enumerate() {
        if row.len() != n {
            rep.push(ViolationKind::Shape, vec![a], format!("row {a} has length {}", row.len()));
        }
        if let Some((b, &c)) = row.iter().enumerate().find(|(_, &c)| c >= n) {
            rep.push(ViolationKind::Shape, vec![a, b], format!("entry {c} out of range"));
        }
    }
    if !rep.is_valid() {
        return rep;
    }
    let Some(e) = find_identity(mult) else {
        rep.push(ViolationKind::GroupAxiom, vec![], "no two-sided identity");
        return rep;
    };
    for a in 0..n {
        let left = (0..n).filter(|&b| mult[a][b] == e).count();
        let right = (0..n).filter(|&b| mult[b][a] == e).count();
        let two_sided = (0..n).any(|b| mult[a][b] == e && mult[b][a] == e);
        if left != 1 || right != 1 || !two_sided {
            rep.push(ViolationKind::GroupAxiom, vec![a], format!("element {a} has no unique inverse"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = mult[a][b];
            for c in 0..n {
                if mult[ab][c] != mult[a][mult[b][c]] {
                    rep.push(ViolationKind::GroupAxiom, vec![a, b, c], "(ab)c != a(bc)");
                    if rep.is_full() {
                        return rep;
                    }
                }
            }
        }
    }
    rep
}

fn find_identity(mult: &[Vec<usize>]) -> Option<usize> {
    let n = mult.len();
    (0..n).find(|&e| (0..n).all(|x| mult[e][x] == x && mult[x][e] == x))
}

impl GroupTable {
    /// Validates the table; the identity is whichever element acts trivially.
    pub fn new(mult: Vec<Vec<usize>>) -> Result<Self> {
        let rep = validate_group(&mult);
        if !rep.is_valid() {
            return Err(Error::Invalid(rep));
        }
        let identity = find_identity(&mult).expect("validated");
        let n = mult.len();
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| mult[a][b] == identity).expect("validated"))
            .collect();
        Ok(GroupTable {
            mult,
            identity,
            inverse,
            name: None,
        })
    }

    /// Closes `gens` under `mul`; elements are indexed in sorted order.
    pub fn generate<T: Clone + Ord>(gens: &[T], identity: T, mul: impl Fn(&T, &T) -> T) -> Self {
        let mut elems: BTreeSet<T> = BTreeSet::from([identity]);
        let mut frontier: Vec<T> = elems.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = mul(&x, g);
                if elems.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let elems: Vec<T> = elems.into_iter().collect();
        let index: BTreeMap<&T, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mult = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect())
            .collect();
        Self::new(mult).expect("closure of generators is a group")
    }

    /// Table of an explicitly indexed group: `mul(a, b)` for `a, b < n`.
    pub fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::new((0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |e, a| e.lcm(&self.element_order(a)))
    }

    pub fn is_subgroup(&self, set: &BTreeSet<usize>) -> bool {
        set.contains(&self.identity)
            && set.iter().all(|&a| a < self.order() && set.contains(&self.inv(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, set: &BTreeSet<usize>) -> bool {
        self.is_subgroup(set)
            && (0..self.order()).all(|g| set.iter().all(|&h| set.contains(&self.mul(self.mul(g, h), self.inv(g)))))
    }

    pub fn subgroup_generated(&self, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let conj: BTreeSet<usize> = (0..self.order())
            .flat_map(|g| set.iter().map(move |&h| (g, h)))
            .map(|(g, h)| self.mul(self.mul(g, h), self.inv(g)))
            .collect();
        self.subgroup_generated(conj)
    }

    /// Every subgroup, ordered by size then lexicographically.
    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut found = vec![BTreeSet::from([self.identity])];
        let mut frontier = 0;
        while frontier < found.len() {
            let current = found[frontier].clone();
            for x in 0..self.order() {
                if !current.contains(&x) {
                    let next = self.subgroup_generated(current.iter().copied().chain([x]));
                    if !found.contains(&next) {
                        found.push(next);
                    }
                }
            }
            frontier += 1;
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
    }

    pub fn normal_subgroups(&self) -> Vec<BTreeSet<usize>> {
        self.subgroups().into_iter().filter(|s| self.is_normal(s)).collect()
    }

    /// The subgroup on `set` with its own indexing; `embed[h]` is the
    /// element of `self` at index `h`.
    pub fn subgroup_table(&self, set: &BTreeSet<usize>) -> Result<(GroupTable, Vec<usize>)> {
        if !self.is_subgroup(set) {
            return Err(Error::NotSubgroup(format!("{set:?}")));
        }
        let embed: Vec<usize> = set.iter().copied().collect();
        let pos = |x: usize| embed.binary_search(&x).expect("closed");
        let table = Self::from_fn(embed.len(), |a, b| pos(self.mul(embed[a], embed[b])))?;
        Ok((table, embed))
    }

    /// `G / N` with cosets indexed by their smallest element, and the coset
    /// of every element.
    pub fn quotient(&self, normal: &BTreeSet<usize>) -> Result<(GroupTable, Vec<usize>)> {
        if !self.is_subgroup(normal) {
            return Err(Error::NotSubgroup(format!("{normal:?}")));
        }
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset[g] == usize::MAX {
                for &h in normal {
                    coset[self.mul(g, h)] = reps.len();
                }
                reps.push(g);
            }
        }
        let table = Self::from_fn(reps.len(), |a, b| coset[self.mul(reps[a], reps[b])])?;
        Ok((table, coset))
    }

    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let m = other.order();
        Self::from_fn(self.order() * m, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
        .expect("product of groups")
    }

    pub fn center(&self) -> BTreeSet<usize> {
        let n = self.order();
        (0..n).filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a))).collect()
    }
}

/// Conjugacy classes, each sorted, ordered by smallest element (so the
/// identity class comes first when the identity is element 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `inverse_class[c]` is the class of inverses of class `c`.
    pub inverse_class: Vec<usize>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn identity_class(&self, g: &GroupTable) -> usize {
        self.class_of[g.identity()]
    }
}

pub fn conjugacy_classes(g: &GroupTable) -> ClassData {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let orbit: BTreeSet<usize> = (0..n).map(|x| g.mul(g.mul(x, a), g.inv(x))).collect();
        for &b in &orbit {
            class_of[b] = classes.len();
        }
        classes.push(orbit.into_iter().collect());
    }
    let inverse_class = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    ClassData {
        classes,
        class_of,
        inverse_class,
    }
}

/// `Vec(G)`: basis `G`, `δ_g δ_h = δ_{gh}`, dual = inverse.
pub fn vec_g_ring(g: &GroupTable) -> FusionRing {
    let n = g.order();
    let products = (0..n * n).map(|p| vec![(g.mul(p / n, p % n), BigUint::from(1u32))]).collect();
    let dual = (0..n).map(|a| g.inv(a)).collect();
    FusionRing::from_products(Unit::Simple(g.identity()), dual, products).expect("group table shape")
}

/// Semidirect product `Z_m ⋊ Z_n` where the generator of `Z_n` acts by
/// `x ↦ k x`; element `(a, b)` has index `a * n + b`.
pub fn semidirect_cyclic(m: usize, n: usize, k: usize) -> Result<GroupTable> {
    let mut kp = vec![1 % m; n + 1];
    for b in 1..=n {
        kp[b] = kp[b - 1] * k % m;
    }
    if kp[n] != 1 % m {
        return Err(Error::Precondition(format!("{k}^{n} is not 1 mod {m}")));
    }
    GroupTable::from_fn(m * n, |x, y| {
        let (a, b) = (x / n, x % n);
        let (c, d) = (y / n, y % n);
        ((a + kp[b] * c) % m) * n + (b + d) % n
    })
}

pub fn cyclic(n: usize) -> GroupTable {
    GroupTable::from_fn(n, |a, b| (a + b) % n).expect("cyclic group")
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> GroupTable {
    semidirect_cyclic(n, 2, n - 1).expect("dihedral group")
}

/// Generalized quaternion group of order `4n`: `a^{2n} = 1`, `b^2 = a^n`,
/// `b a b^{-1} = a^{-1}`. Element `a^i b^j` has index `2 i + j`.
pub fn quaternion(n: usize) -> GroupTable {
    let m = 2 * n;
    GroupTable::from_fn(2 * m, |x, y| {
        let (i, j) = (x / 2, x % 2);
        let (k, l) = (y / 2, y % 2);
        let (e, s) = if j == 0 { (i + k, l) } else { (i + m - k, 1 + l) };
        let (e, s) = if s == 2 { (e + n, 0) } else { (e, s) };
        (e % m) * 2 + s
    })
    .expect("quaternion group")
}

/// Permutation group generated by `gens` (images of `0..degree`).
pub fn permutation_group(gens: &[Vec<usize>]) -> GroupTable {
    let degree = gens.first().map_or(0, Vec::len);
    let compose = |p: &Vec<usize>, q: &Vec<usize>| -> Vec<usize> { (0..p.len()).map(|i| p[q[i]]).collect() };
    GroupTable::generate(gens, (0..degree).collect(), compose)
}

pub fn symmetric(n: usize) -> GroupTable {
    if n < 2 {
        return cyclic(1);
    }
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(0, 1);
    permutation_group(&[t, (0..n).map(|i| (i + 1) % n).collect()])
}

pub fn alternating(n: usize) -> GroupTable {
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|c| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = c;
            p[c] = 0;
            p
        })
        .collect();
    permutation_group(&gens)
}
