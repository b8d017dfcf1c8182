//! Based modules over fusion rings, their dimensions, duals and `End(M)`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{rat_from_uint, Interval};
use crate::matrix::QMatrix;
use crate::perron::{perron_vector_enclosure, PerronOptions};
use crate::ring::{fpdim_category, opposite_ring, FusionRing, Unit};
use crate::validation::{ValidationReport, ViolationKind};

/// Dense nonnegative integer matrix, row-major.
pub type IntMatrix = Vec<Vec<BigUint>>;

/// `a[i][j][k]` is the multiplicity of `M_k` in `X_i ⊗ M_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedModule {
    ring: Arc<FusionRing>,
    mrank: usize,
    a: Vec<Vec<Vec<BigUint>>>,
    labels: Option<Vec<String>>,
}

impl BasedModule {
    pub fn new(ring: Arc<FusionRing>, a: Vec<Vec<Vec<BigUint>>>) -> Result<Self> {
        if a.len() != ring.rank() {
            return Err(Error::DimensionMismatch {
                expected: ring.rank(),
                found: a.len(),
            });
        }
        let mrank = a.first().map_or(0, Vec::len);
        if mrank == 0 {
            return Err(Error::Precondition("module rank must be positive".into()));
        }
        for slice in &a {
            if slice.len() != mrank {
                return Err(Error::DimensionMismatch {
                    expected: mrank,
                    found: slice.len(),
                });
            }
            for row in slice {
                if row.len() != mrank {
                    return Err(Error::DimensionMismatch {
                        expected: mrank,
                        found: row.len(),
                    });
                }
            }
        }
        Ok(BasedModule {
            ring,
            mrank,
            a,
            labels: None,
        })
    }

    pub fn from_fn(ring: Arc<FusionRing>, mrank: usize, f: impl Fn(usize, usize, usize) -> u64) -> Result<Self> {
        let r = ring.rank();
        let a = (0..r)
            .map(|i| (0..mrank).map(|j| (0..mrank).map(|k| BigUint::from(f(i, j, k))).collect()).collect())
            .collect();
        Self::new(ring, a)
    }

    /// The ring acting on itself: `M_j = X_j`, `a = N`.
    pub fn regular(ring: Arc<FusionRing>) -> Self {
        let r = ring.rank();
        let a = (0..r)
            .map(|i| (0..r).map(|j| (0..r).map(|k| ring.n(i, j, k)).collect()).collect())
            .collect();
        let labels = ring.labels().map(<[String]>::to_vec);
        BasedModule {
            ring,
            mrank: r,
            a,
            labels,
        }
    }

    /// A rank-one module where `X_i` acts by the integer `dims[i]`.
    pub fn rank_one(ring: Arc<FusionRing>, dims: &[BigUint]) -> Result<Self> {
        if dims.len() != ring.rank() {
            return Err(Error::DimensionMismatch {
                expected: ring.rank(),
                found: dims.len(),
            });
        }
        let a = dims.iter().map(|d| vec![vec![d.clone()]]).collect();
        Self::new(ring, a)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.mrank {
            return Err(Error::DimensionMismatch {
                expected: self.mrank,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FusionRing> {
        &self.ring
    }

    pub fn mrank(&self) -> usize {
        self.mrank
    }

    pub fn a(&self, i: usize, j: usize, k: usize) -> &BigUint {
        &self.a[i][j][k]
    }

    pub fn action(&self) -> &[Vec<Vec<BigUint>>] {
        &self.a
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `A_i[k][j] = a[i][j][k]`, the matrix of `X_i` on the module basis.
    pub fn action_matrix(&self, i: usize) -> QMatrix {
        QMatrix::from_fn(self.mrank, self.mrank, |k, j| rat_from_uint(&self.a[i][j][k]))
    }

    /// Same action constants over a different (isomorphic or sub-) ring,
    /// reading `X_i` of the new ring as `X_{embed[i]}` of the old one.
    pub fn pull_back(&self, ring: Arc<FusionRing>, embed: &[usize]) -> Result<Self> {
        let a = embed.iter().map(|&e| self.a[e].clone()).collect();
        let mut m = Self::new(ring, a)?;
        m.labels = self.labels.clone();
        Ok(m)
    }
}

/// Checks module associativity, the unit law and the duality adjunction.
pub fn validate_module(m: &BasedModule) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let ring = m.ring();
    let (r, n) = (ring.rank(), m.mrank());

    for j in 0..n {
        for k in 0..n {
            let c: BigUint = ring.unit_components().iter().map(|&u| m.a(u, j, k)).sum();
            if c != BigUint::from((j == k) as u32) {
                rep.push(ViolationKind::ModuleUnit, vec![j, k], format!("unit sends M{j} to {c} M{k}"));
            }
        }
    }

    for i in 0..r {
        let d = ring.dual(i);
        for j in 0..n {
            for k in 0..n {
                if m.a(i, j, k) != m.a(d, k, j) {
                    rep.push(ViolationKind::ModuleDuality, vec![i, j, k], "a[i][j][k] != a[i*][k][j]");
                }
            }
        }
    }

    let mats: Vec<QMatrix> = (0..r).map(|i| m.action_matrix(i)).collect();
    for i in 0..r {
        for j in 0..r {
            let lhs = mats[i].mul(&mats[j]);
            let mut rhs = QMatrix::zeros(n, n);
            for (k, c) in ring.product(i, j) {
                rhs = rhs.add(&QMatrix::from_fn(n, n, |p, q| rat_from_uint(c) * &mats[*k][(p, q)]));
            }
            if lhs != rhs {
                let (q, p) = (0..n)
                    .flat_map(|q| (0..n).map(move |p| (q, p)))
                    .find(|&(q, p)| lhs[(q, p)] != rhs[(q, p)])
                    .expect("matrices differ");
                rep.push(
                    ViolationKind::ModuleAssociativity,
                    vec![i, j, p, q],
                    format!("(X{i}X{j})M{p} != X{i}(X{j}M{p}) at M{q}"),
                );
                if rep.is_full() {
                    return rep;
                }
            }
        }
    }
    rep
}

/// Connected components of the support graph `j - k` (`a[i][j][k] > 0`).
pub fn module_components(m: &BasedModule) -> Vec<Vec<usize>> {
    let n = m.mrank();
    let mut uf = UnionFind::<usize>::new(n);
    for slice in m.action() {
        for (j, row) in slice.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    uf.union(j, k);
                }
            }
        }
    }
    let labels = uf.into_labeling();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut root_pos = std::collections::BTreeMap::new();
    for (j, root) in labels.into_iter().enumerate() {
        let pos = *root_pos.entry(root).or_insert_with(|| {
            comps.push(Vec::new());
            comps.len() - 1
        });
        comps[pos].push(j);
    }
    comps
}

pub fn is_indecomposable(m: &BasedModule) -> bool {
    module_components(m).len() == 1
}

/// Module dimensions normalized by `FPdim(R_M) = FPdim(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleFPData {
    pub dims: Vec<Interval>,
    /// The factor applied to the Perron vector with first coordinate 1.
    pub normalization_scale: Interval,
}

/// Positive Perron vector of `sum_i A_i`, scaled so `sum_j m_j^2 = FPdim(A)`.
///
/// Each `A_i` fixes the module dimension vector up to the scalar
/// `FPdim(X_i)`, so that vector is the Perron vector of the sum; the sum has
/// a positive diagonal and, for an indecomposable module with the duality
/// adjunction, symmetric support, hence is irreducible.
pub fn module_fpdims(m: &BasedModule, opts: &PerronOptions) -> Result<ModuleFPData> {
    let comps = module_components(m);
    if comps.len() != 1 {
        return Err(Error::Decomposable {
            components: comps.len(),
        });
    }
    let n = m.mrank();
    let sum = (0..m.ring().rank()).fold(QMatrix::zeros(n, n), |acc, i| acc.add(&m.action_matrix(i)));
    let mut local = opts.clone();
    for _ in 0..8 {
        let (_, u) = perron_vector_enclosure(&sum, &local)?;
        let total = fpdim_category(m.ring(), &local)?.interval();
        let norm: Interval = u.iter().map(|x| x * x).sum();
        let ratio = total.checked_div(&norm).ok_or_else(|| Error::Precondition("zero module norm".into()))?;
        let scale = ratio.sqrt(&(&local.tol / crate::interval::rat(16, 1)));
        let dims: Vec<Interval> = u.iter().map(|x| x * &scale).collect();
        if dims.iter().all(|d| d.width() <= opts.tol) {
            return Ok(ModuleFPData {
                dims,
                normalization_scale: scale,
            });
        }
        let widest = dims.iter().map(Interval::width).max().expect("nonempty");
        local.tol = &local.tol / ((widest / &opts.tol).ceil() * crate::interval::rat(4, 1));
    }
    Err(Error::NoConvergence { iterations: 8 })
}

/// The right action `M ⊗ X = *X ⊗ M` read as a left module over the
/// opposite ring: `a∨[i][j][k] = a[i*][j][k]`.
pub fn dual_module(m: &BasedModule) -> BasedModule {
    let ring = m.ring();
    let a = (0..ring.rank()).map(|i| m.action()[ring.dual(i)].clone()).collect();
    BasedModule {
        ring: Arc::new(opposite_ring(ring)),
        mrank: m.mrank(),
        a,
        labels: m.labels.clone(),
    }
}

/// Matrix-unit ring on `E_jk` (index `j * m + k`): `E_jk E_lm = δ_kl E_jm`,
/// unit `Σ E_jj`, dual `E_jk ↦ E_kj`. Rank one when `m = 1`.
pub fn end_ring(m: &BasedModule) -> FusionRing {
    matrix_unit_ring(m.mrank())
}

pub fn matrix_unit_ring(n: usize) -> FusionRing {
    let idx = |j: usize, k: usize| j * n + k;
    let unit = if n == 1 {
        Unit::Simple(0)
    } else {
        Unit::Components((0..n).map(|j| idx(j, j)).collect())
    };
    let dual = (0..n * n).map(|x| idx(x % n, x / n)).collect();
    let products = (0..n * n * n * n)
        .map(|p| {
            let (x, y) = (p / (n * n), p % (n * n));
            let (j, k, l, m) = (x / n, x % n, y / n, y % n);
            if k == l {
                vec![(idx(j, m), BigUint::one())]
            } else {
                Vec::new()
            }
        })
        .collect();
    let labels = (0..n * n).map(|x| format!("E{},{}", x / n, x % n)).collect();
    FusionRing::from_products(unit, dual, products)
        .and_then(|r| r.with_labels(labels))
        .expect("matrix units have consistent shape")
}

/// Column `i` expands `F(X_i) = X_i ⊗ ?` in matrix units: the coefficient of
/// `E_kj` (row `k * m + j`) is `a[i][j][k]`.
pub fn action_functor_matrix(m: &BasedModule) -> IntMatrix {
    let n = m.mrank();
    let r = m.ring().rank();
    (0..n * n)
        .map(|row| {
            let (k, j) = (row / n, row % n);
            (0..r).map(|i| m.a(i, j, k).clone()).collect()
        })
        .collect()
}
