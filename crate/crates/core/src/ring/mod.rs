//! Fusion rings: Grothendieck rings of (multi)fusion and finite tensor
//! categories, stored with exact nonnegative structure constants.
//!
//! Basis element `i` stands for the simple object `X_i`; the product
//! `X_i * X_j` is kept as a sparse expansion `[(k, N_ij^k)]` sorted by `k`.

mod dims;
mod ops;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::{rat_from_uint, Rational};
use crate::matrix::QMatrix;
use crate::validation::{ValidationReport, ViolationKind};

pub use dims::{fpdim_category, fpdim_object, fpdims, regular_object};
pub use ops::{
    based_subring_closure, deligne_product, find_isomorphism, is_based_subring, opposite_ring, restrict_to_subring,
    based_subrings,
};

/// Sparse nonnegative integer combination of basis elements, sorted by index
/// with no zero entries.
pub type Expansion = Vec<(usize, BigUint)>;

pub(crate) fn normalize_expansion(mut e: Vec<(usize, BigUint)>) -> Expansion {
    e.sort_by_key(|(k, _)| *k);
    let mut out: Expansion = Vec::with_capacity(e.len());
    for (k, c) in e {
        if c.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((last, acc)) if *last == k => *acc += c,
            _ => out.push((k, c)),
        }
    }
    out
}

pub(crate) fn expansion_coeff(e: &Expansion, k: usize) -> BigUint {
    e.binary_search_by_key(&k, |(i, _)| *i)
        .map(|pos| e[pos].1.clone())
        .unwrap_or_default()
}

/// How the unit object decomposes into basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    Simple(usize),
    /// Multifusion: the unit is the sum of these basis elements.
    Components(Vec<usize>),
}

impl Unit {
    pub fn components(&self) -> &[usize] {
        match self {
            Unit::Simple(u) => std::slice::from_ref(u),
            Unit::Components(c) => c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    rank: usize,
    unit: Unit,
    dual: Vec<usize>,
    products: Vec<Expansion>,
    cartan: Option<Vec<Vec<BigUint>>>,
    labels: Option<Vec<String>>,
}

impl FusionRing {
    /// Builds a ring from sparse products indexed by `i * rank + j`. Shapes
    /// and index ranges are checked here; the ring axioms are left to
    /// [`validate_ring`].
    pub fn from_products(unit: Unit, dual: Vec<usize>, products: Vec<Expansion>) -> Result<Self> {
        let rank = dual.len();
        if rank == 0 {
            return Err(Error::Precondition("rank must be positive".into()));
        }
        if products.len() != rank * rank {
            return Err(Error::DimensionMismatch {
                expected: rank * rank,
                found: products.len(),
            });
        }
        for &u in unit.components() {
            if u >= rank {
                return Err(Error::IndexOutOfRange { index: u, size: rank });
            }
        }
        if unit.components().is_empty() {
            return Err(Error::Precondition("unit has no components".into()));
        }
        for &d in &dual {
            if d >= rank {
                return Err(Error::IndexOutOfRange { index: d, size: rank });
            }
        }
        let products: Vec<Expansion> = products.into_iter().map(normalize_expansion).collect();
        for e in &products {
            if let Some(&(k, _)) = e.last() {
                if k >= rank {
                    return Err(Error::IndexOutOfRange { index: k, size: rank });
                }
            }
        }
        Ok(FusionRing {
            rank,
            unit,
            dual,
            products,
            cartan: None,
            labels: None,
        })
    }

    /// Builds a ring from a dense `N[i][j][k]` table.
    pub fn from_dense(unit: Unit, dual: Vec<usize>, n: &[Vec<Vec<BigUint>>]) -> Result<Self> {
        let rank = dual.len();
        if n.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: n.len(),
            });
        }
        let mut products = Vec::with_capacity(rank * rank);
        for row in n {
            if row.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: row.len(),
                });
            }
            for col in row {
                if col.len() != rank {
                    return Err(Error::DimensionMismatch {
                        expected: rank,
                        found: col.len(),
                    });
                }
                products.push(col.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        Self::from_products(unit, dual, products)
    }

    /// Convenience constructor from a closure `(i, j, k) -> N_ij^k`.
    pub fn from_fn(rank: usize, unit: Unit, dual: Vec<usize>, f: impl Fn(usize, usize, usize) -> u64) -> Result<Self> {
        let mut products = Vec::with_capacity(rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                products.push(
                    (0..rank)
                        .filter_map(|k| {
                            let c = f(i, j, k);
                            (c > 0).then(|| (k, BigUint::from(c)))
                        })
                        .collect(),
                );
            }
        }
        Self::from_products(unit, dual, products)
    }

    pub fn with_cartan(mut self, cartan: Vec<Vec<BigUint>>) -> Result<Self> {
        if cartan.len() != self.rank || cartan.iter().any(|r| r.len() != self.rank) {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: cartan.len(),
            });
        }
        self.cartan = Some(cartan);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> &Unit {
        &self.unit
    }

    pub fn unit_components(&self) -> &[usize] {
        self.unit.components()
    }

    /// The unit index of a fusion ring; `None` for a multifusion ring.
    pub fn simple_unit(&self) -> Option<usize> {
        match self.unit {
            Unit::Simple(u) => Some(u),
            Unit::Components(_) => None,
        }
    }

    pub fn is_multifusion(&self) -> bool {
        matches!(self.unit, Unit::Components(_))
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn cartan(&self) -> Option<&Vec<Vec<BigUint>>> {
        self.cartan.as_ref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        self.labels
            .as_ref()
            .map(|l| l[i].clone())
            .unwrap_or_else(|| format!("X{i}"))
    }

    /// Cartan matrix absent or equal to the identity.
    pub fn is_semisimple(&self) -> bool {
        match &self.cartan {
            None => true,
            Some(c) => c.iter().enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            }),
        }
    }

    /// `N_ij^k`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> BigUint {
        expansion_coeff(&self.products[i * self.rank + j], k)
    }

    pub fn product(&self, i: usize, j: usize) -> &Expansion {
        &self.products[i * self.rank + j]
    }

    /// Product of two sparse integer combinations.
    pub fn multiply(&self, x: &Expansion, y: &Expansion) -> Expansion {
        let mut acc: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.product(*i, *j) {
                    *acc.entry(*k).or_default() += &ab * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Rational combinations multiplied in `Gr ⊗ Q`.
    pub fn multiply_rational(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rank];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.product(i, j) {
                    out[*k] += &ab * rat_from_uint(c);
                }
            }
        }
        out
    }

    pub fn unit_expansion(&self) -> Expansion {
        let mut e: Expansion = self.unit_components().iter().map(|&u| (u, BigUint::one())).collect();
        e.sort_by_key(|(k, _)| *k);
        e
    }
}

/// An element of `Gr(A) ⊗ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckElement {
    pub coeffs: Vec<Rational>,
}

impl GrothendieckElement {
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); rank];
        coeffs[i] = Rational::one();
        GrothendieckElement { coeffs }
    }

    pub fn unit(ring: &FusionRing) -> Self {
        let mut coeffs = vec![Rational::zero(); ring.rank()];
        for &u in ring.unit_components() {
            coeffs[u] = Rational::one();
        }
        GrothendieckElement { coeffs }
    }

    pub fn from_expansion(rank: usize, e: &Expansion) -> Self {
        let mut coeffs = vec![Rational::zero(); rank];
        for (k, c) in e {
            coeffs[*k] = rat_from_uint(c);
        }
        GrothendieckElement { coeffs }
    }
}

/// Matrix of left multiplication by `x`: `L[k][j] = sum_i x_i N_ij^k`.
pub fn left_mult_matrix(ring: &FusionRing, x: &GrothendieckElement) -> Result<QMatrix> {
    let r = ring.rank();
    if x.coeffs.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: x.coeffs.len(),
        });
    }
    let mut m = QMatrix::zeros(r, r);
    for (i, xi) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for j in 0..r {
            for (k, c) in ring.product(i, j) {
                m[(*k, j)] += xi * rat_from_uint(c);
            }
        }
    }
    Ok(m)
}

pub(crate) fn basis_left_mult(ring: &FusionRing, i: usize) -> QMatrix {
    left_mult_matrix(ring, &GrothendieckElement::basis(ring.rank(), i)).expect("basis element has ring rank")
}

/// Checks every ring invariant and reports each violation with its indices.
///
/// Unit-duality (`sum_u N_{i j}^u = delta_{j, i*}`) and the reciprocity
/// `N_ij^k = N_{i* k}^j` only hold for semisimple rings and are skipped when
/// a nontrivial Cartan matrix is present.
pub fn validate_ring(ring: &FusionRing) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let r = ring.rank();
    let units = ring.unit_components();

    let mut seen = vec![false; r];
    for &u in units {
        if std::mem::replace(&mut seen[u], true) {
            rep.push(ViolationKind::Shape, vec![u], "unit component listed twice");
        }
    }

    for i in 0..r {
        if ring.dual(ring.dual(i)) != i {
            rep.push(ViolationKind::Duality, vec![i], "duality is not an involution");
        }
    }

    for j in 0..r {
        let mut left: BTreeMap<usize, BigUint> = BTreeMap::new();
        let mut right: BTreeMap<usize, BigUint> = BTreeMap::new();
        for &u in units {
            for (k, c) in ring.product(u, j) {
                *left.entry(*k).or_default() += c;
            }
            for (k, c) in ring.product(j, u) {
                *right.entry(*k).or_default() += c;
            }
        }
        for (side, map) in [("left", &left), ("right", &right)] {
            for k in 0..r {
                let c = map.get(&k).cloned().unwrap_or_default();
                let expected = if k == j { BigUint::one() } else { BigUint::zero() };
                if c != expected {
                    rep.push(
                        ViolationKind::UnitLaw,
                        vec![j, k],
                        format!("{side} unit multiplicity of X{k} in 1*X{j} is {c}"),
                    );
                }
            }
        }
    }

    let semisimple = ring.is_semisimple();
    let dual_ok = !rep.has(ViolationKind::Duality);
    for i in 0..r {
        for j in 0..r {
            let e = ring.product(i, j);
            if semisimple {
                let units_in: BigUint = units.iter().map(|&u| expansion_coeff(e, u)).sum();
                let expected = if j == ring.dual(i) { BigUint::one() } else { BigUint::zero() };
                if units_in != expected {
                    rep.push(
                        ViolationKind::Duality,
                        vec![i, j],
                        format!("unit multiplicity in X{i}*X{j} is {units_in}"),
                    );
                }
            }
            if dual_ok {
                for k in 0..r {
                    let c = expansion_coeff(e, k);
                    let flipped = ring.n(ring.dual(j), ring.dual(i), ring.dual(k));
                    if c != flipped {
                        rep.push(ViolationKind::Duality, vec![i, j, k], "N_ij^k != N_{j*i*}^{k*}");
                    }
                    if semisimple && c != ring.n(ring.dual(i), k, j) {
                        rep.push(ViolationKind::Reciprocity, vec![i, j, k], "N_ij^k != N_{i*k}^j");
                    }
                }
            }
            if rep.is_full() {
                return rep;
            }
        }
    }

    for i in 0..r {
        for j in 0..r {
            let ij = ring.product(i, j);
            for k in 0..r {
                let lhs = ring.multiply(ij, &vec![(k, BigUint::one())]);
                let rhs = ring.multiply(&vec![(i, BigUint::one())], ring.product(j, k));
                if lhs != rhs {
                    let l = lhs.iter().chain(&rhs).map(|(l, _)| *l).next().unwrap_or(0);
                    rep.push(
                        ViolationKind::Associativity,
                        vec![i, j, k, l],
                        format!("(X{i}X{j})X{k} != X{i}(X{j}X{k})"),
                    );
                    if rep.is_full() {
                        return rep;
                    }
                }
            }
        }
    }

    if let Some(c) = ring.cartan() {
        for (i, row) in c.iter().enumerate() {
            if row[i].is_zero() {
                rep.push(ViolationKind::Cartan, vec![i], "Cartan diagonal entry is zero");
            }
        }
    }
    rep
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::interval::rat;

    #[test]
    fn group_ring_is_valid() {
        assert!(validate_ring(&vec_z(2)).is_valid());
        assert!(validate_ring(&vec_z(5)).is_valid());
    }

    #[test]
    fn fibonacci_is_valid_by_enumeration() {
        let f = fib();
        // All 2^4 associativity quadruples by direct summation.
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let lhs: BigUint = (0..2).map(|m| f.n(i, j, m) * f.n(m, k, l)).sum();
                        let rhs: BigUint = (0..2).map(|m| f.n(j, k, m) * f.n(i, m, l)).sum();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        assert!(validate_ring(&f).is_valid());
    }

    #[test]
    fn broken_unit_is_reported() {
        let bad = FusionRing::from_fn(2, Unit::Simple(0), vec![0, 1], |i, j, k| {
            if (i, j, k) == (0, 1, 1) {
                0
            } else {
                fib().n(i, j, k).try_into().unwrap()
            }
        })
        .unwrap();
        let rep = validate_ring(&bad);
        let v = rep.first(ViolationKind::UnitLaw).unwrap();
        assert_eq!(v.indices, vec![1, 1]);
    }

    #[test]
    fn non_involutive_dual_is_reported() {
        let bad = FusionRing::from_fn(3, Unit::Simple(0), vec![0, 2, 0], |i, j, k| ((i + j) % 3 == k) as u64).unwrap();
        assert!(validate_ring(&bad).has(ViolationKind::Duality));
    }

    #[test]
    fn left_mult_examples() {
        let f = fib();
        let l = left_mult_matrix(&f, &GrothendieckElement::basis(2, 1)).unwrap();
        assert_eq!(l, QMatrix::from_ints(&[[0, 1], [1, 1]]));
        let s3 = rep_s3();
        let l = left_mult_matrix(&s3, &GrothendieckElement::unit(&s3)).unwrap();
        assert_eq!(l, QMatrix::identity(3));
        let z2 = vec_z(2);
        let l = left_mult_matrix(&z2, &GrothendieckElement::basis(2, 1)).unwrap();
        assert_eq!(l, QMatrix::from_ints(&[[0, 1], [1, 0]]));
        assert!(left_mult_matrix(&z2, &GrothendieckElement::basis(3, 1)).is_err());
    }

    #[test]
    fn rational_multiplication() {
        let f = fib();
        let x = vec![rat(0, 1), rat(1, 1)];
        assert_eq!(f.multiply_rational(&x, &x), vec![rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn shape_errors() {
        assert!(FusionRing::from_products(Unit::Simple(3), vec![0, 1], vec![vec![]; 4]).is_err());
        assert!(FusionRing::from_products(Unit::Simple(0), vec![0, 1], vec![vec![]; 3]).is_err());
        assert!(FusionRing::from_products(Unit::Simple(0), vec![0, 1], vec![vec![(2, BigUint::one())]; 4]).is_err());
    }
}
