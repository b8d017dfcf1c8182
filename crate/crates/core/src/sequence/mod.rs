//! Sequences `A → B → C ⊠ End(M)` at the level of Grothendieck rings.
//!
//! The target basis is `Y_t ⊠ E_kj` at index `t m^2 + k m + j`, which is
//! the Deligne product basis of `C ⊠ end_ring(M)`.

mod build;
mod check;
mod mutate;
mod theorems;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::module::{action_functor_matrix, end_ring, validate_module, BasedModule, IntMatrix};
use crate::ring::{deligne_product, validate_ring, Expansion, FusionRing};
use crate::validation::{ValidationReport, ViolationKind};

pub use build::make_deligne_sequence;
pub use check::{
    alpha_window, check_exact, compute_alpha, AlphaCertificate, AlphaDecision, ExactnessReport, NotExactReason, Verdict,
};
pub use mutate::{reroute_f, shrink_a};
pub use theorems::{
    dual_dims_check, induced_module_dims, internal_hom_fpdim_check, regular_image_check, DualDimsReport,
    InducedDims, InternalHomCheck, RegularImageCheck,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceData {
    pub a: Arc<FusionRing>,
    pub b: Arc<FusionRing>,
    pub c: Arc<FusionRing>,
    /// Module over `a`.
    pub module: BasedModule,
    /// `rank(B) × rank(A)`: column `a` is `ι(X_a)`.
    pub iota: IntMatrix,
    /// `rank(C) m^2 × rank(B)`: column `i` is `F(X_i)`.
    pub f: IntMatrix,
}

impl SequenceData {
    pub fn mrank(&self) -> usize {
        self.module.mrank()
    }

    pub fn target_rank(&self) -> usize {
        self.c.rank() * self.mrank() * self.mrank()
    }

    /// Index of `Y_t ⊠ E_kj`.
    pub fn target_index(&self, t: usize, k: usize, j: usize) -> usize {
        let m = self.mrank();
        t * m * m + k * m + j
    }

    /// `C ⊠ End(M)`.
    pub fn target_ring(&self) -> FusionRing {
        deligne_product(&self.c, &end_ring(&self.module))
    }

    /// Unit of `C`; validation rejects multifusion `C`.
    pub fn unit_c(&self) -> usize {
        self.c.unit_components()[0]
    }

    /// Whether target row `row` lies in the `1_C ⊠ End(M)` component.
    pub fn is_trivial_c_row(&self, row: usize) -> bool {
        let m2 = self.mrank() * self.mrank();
        self.c.unit_components().contains(&(row / m2))
    }

    pub fn f_column(&self, i: usize) -> Expansion {
        column(&self.f, i)
    }

    pub fn iota_column(&self, a: usize) -> Expansion {
        column(&self.iota, a)
    }

    /// B-simples hit by `ι`, assuming columns are basis vectors.
    pub fn iota_image(&self) -> BTreeSet<usize> {
        (0..self.a.rank())
            .flat_map(|a| self.iota_column(a).into_iter().map(|(k, _)| k))
            .collect()
    }
}

pub(crate) fn column(m: &IntMatrix, i: usize) -> Expansion {
    m.iter()
        .enumerate()
        .filter(|(_, row)| !row[i].is_zero())
        .map(|(r, row)| (r, row[i].clone()))
        .collect()
}

fn apply(m: &IntMatrix, x: &Expansion) -> Expansion {
    let mut out: Expansion = Vec::new();
    for (r, row) in m.iter().enumerate() {
        let v: BigUint = x.iter().map(|(i, c)| &row[*i] * c).sum();
        if !v.is_zero() {
            out.push((r, v));
        }
    }
    out
}

fn map_dual(ring: &FusionRing, x: &Expansion) -> Expansion {
    let mut e: Expansion = x.iter().map(|(k, c)| (ring.dual(*k), c.clone())).collect();
    e.sort_by_key(|(k, _)| *k);
    e
}

fn matrix_shape_ok(rep: &mut ValidationReport, name: &str, m: &IntMatrix, rows: usize, cols: usize) -> bool {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        rep.push(
            ViolationKind::Shape,
            vec![rows, cols],
            format!("{name} must be {rows}×{cols}"),
        );
        false
    } else {
        true
    }
}

/// Checks the components, the matrix shapes, that `ι` embeds simples into
/// simples, that `ι` and `F` are unital, dual-preserving ring maps, and
/// that `F ∘ ι` is the action functor of `A` on `M`.
pub fn validate_sequence(s: &SequenceData) -> ValidationReport {
    let mut rep = ValidationReport::new();
    for (name, ring) in [("A", &s.a), ("B", &s.b), ("C", &s.c)] {
        rep.extend_prefixed(name, validate_ring(ring));
        if !ring.is_semisimple() {
            rep.push(ViolationKind::NonSemisimple, vec![], format!("{name} has a nontrivial Cartan matrix"));
        }
    }
    if s.c.is_multifusion() {
        rep.push(ViolationKind::Shape, vec![], "C must have a simple unit");
    }
    if s.module.ring() != s.a.as_ref() {
        rep.push(ViolationKind::Shape, vec![], "module is not over A");
    }
    rep.extend_prefixed("M", validate_module(&s.module));
    let (ra, rb) = (s.a.rank(), s.b.rank());
    let shapes = matrix_shape_ok(&mut rep, "iota", &s.iota, rb, ra)
        & matrix_shape_ok(&mut rep, "F", &s.f, s.target_rank(), rb);
    if !rep.is_valid() || !shapes {
        return rep;
    }

    // ι sends simples to distinct simples.
    let mut seen = BTreeSet::new();
    for a in 0..ra {
        let col = s.iota_column(a);
        let ok = col.len() == 1 && col[0].1 == BigUint::from(1u32);
        if !ok || !seen.insert(col.first().map(|(k, _)| *k)) {
            rep.push(ViolationKind::Embedding, vec![a], "iota column is not a distinct basis vector");
        }
    }
    if !rep.is_valid() {
        return rep;
    }
    let target = s.target_ring();
    check_hom(&mut rep, "iota", &s.a, &s.b, &s.iota);
    check_hom(&mut rep, "F", &s.b, &target, &s.f);

    let af = action_functor_matrix(&s.module);
    let m2 = s.mrank() * s.mrank();
    let uc = s.unit_c();
    for a in 0..ra {
        let image = apply(&s.f, &s.iota_column(a));
        for (row, c) in &image {
            if row / m2 != uc {
                rep.push(ViolationKind::ActionCompatibility, vec![a, *row], "F∘ι leaves the 1_C component");
            } else if af[row % m2][a] != *c {
                rep.push(ViolationKind::ActionCompatibility, vec![a, *row], "F∘ι differs from the action functor");
            }
        }
        for e in 0..m2 {
            let row = uc * m2 + e;
            if !af[e][a].is_zero() && !image.iter().any(|(r, _)| *r == row) {
                rep.push(ViolationKind::ActionCompatibility, vec![a, row], "F∘ι misses an action term");
            }
        }
    }
    rep
}

/// Ring-map checks for `phi: src → dst`: products, unit and duals.
fn check_hom(rep: &mut ValidationReport, name: &str, src: &FusionRing, dst: &FusionRing, phi: &IntMatrix) {
    let n = src.rank();
    let cols: Vec<Expansion> = (0..n).map(|i| column(phi, i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = apply(phi, src.product(i, j));
            let rhs = dst.multiply(&cols[i], &cols[j]);
            if lhs != rhs {
                rep.push(
                    ViolationKind::Homomorphism,
                    vec![i, j],
                    format!("{name}(X{i} X{j}) != {name}(X{i}) {name}(X{j})"),
                );
                if rep.is_full() {
                    return;
                }
            }
        }
    }
    if apply(phi, &src.unit_expansion()) != dst.unit_expansion() {
        rep.push(ViolationKind::UnitPreservation, vec![], format!("{name} does not preserve the unit"));
    }
    for i in 0..n {
        if cols[src.dual(i)] != map_dual(dst, &cols[i]) {
            rep.push(ViolationKind::DualPreservation, vec![i], format!("{name} does not commute with duals"));
        }
    }
}

/// B-simples whose image lies entirely in `1_C ⊠ End(M)`.
pub fn kernel_simples(s: &SequenceData) -> BTreeSet<usize> {
    (0..s.b.rank())
        .filter(|&i| s.f_column(i).iter().all(|(row, _)| s.is_trivial_c_row(*row)))
        .collect()
}

/// Every target simple occurs in some `F(X_i)`.
pub fn is_surjective_gr(s: &SequenceData) -> bool {
    s.f.iter().all(|row| row.iter().any(|c| !c.is_zero()))
}

/// Simples outside the kernel have no constituent in `1_C ⊠ End(M)`.
pub fn normality_check(s: &SequenceData) -> bool {
    let kernel = kernel_simples(s);
    (0..s.b.rank())
        .filter(|i| !kernel.contains(i))
        .all(|i| s.f_column(i).iter().all(|(row, _)| !s.is_trivial_c_row(*row)))
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn constructed_sequences_are_valid() {
        assert!(validate_sequence(&s3_sequence()).is_valid(), "{}", validate_sequence(&s3_sequence()));
        assert!(validate_sequence(&fib_deligne()).is_valid());
        assert!(validate_sequence(&s3_too_small()).is_valid());
    }

    #[test]
    fn corrupted_f_is_reported() {
        let mut s = s3_sequence();
        // Move the trivial constituent of the sign representation elsewhere.
        let (r0, r1) = (0, 1);
        s.f[r0][1] = BigUint::zero();
        s.f[r1][1] = BigUint::from(1u32);
        let rep = validate_sequence(&s);
        assert!(rep.has(ViolationKind::Homomorphism));
        let v = rep.first(ViolationKind::Homomorphism).unwrap();
        assert_eq!(v.indices.len(), 2);
    }

    #[test]
    fn kernels() {
        let s = s3_sequence();
        let k = kernel_simples(&s);
        assert_eq!(k, s.iota_image());
        assert_eq!(k.len(), 2);
        let d = fib_deligne();
        assert_eq!(kernel_simples(&d), d.iota_image());
        assert_eq!(kernel_simples(&s3_too_small()).len(), 2);
    }

    #[test]
    fn surjectivity_and_normality() {
        for s in [s3_sequence(), fib_deligne(), s3_too_small()] {
            assert!(is_surjective_gr(&s));
            assert!(normality_check(&s));
        }
        let mut s = s3_sequence();
        for row in s.f.iter_mut().skip(1) {
            for c in row.iter_mut() {
                *c = BigUint::zero();
            }
        }
        assert!(!is_surjective_gr(&s));
    }
}
