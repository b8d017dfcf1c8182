//! Small named rings and modules shipped with the crate.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::corpus::CorpusSource;
use crate::group::{catalog, catalog_group, extension_sequence, rep_g_fusion, vec_g_ring};
use crate::sequence::{make_deligne_sequence, SequenceData};
use crate::module::BasedModule;
use crate::perron::PerronOptions;
use crate::ring::{fpdims, FusionRing, Unit};

fn labelled(r: FusionRing, labels: &[&str]) -> FusionRing {
    r.with_labels(labels.iter().map(|s| s.to_string()).collect())
        .expect("label count")
}

fn group(name: &str) -> crate::group::GroupTable {
    catalog_group(name).expect("catalog group")
}

fn rep(name: &str) -> FusionRing {
    rep_g_fusion(&group(name)).expect("character table").ring
}

/// `X ⊗ X = 1 + X`.
pub fn fibonacci() -> FusionRing {
    let r = FusionRing::from_fn(2, Unit::Simple(0), vec![0, 1], |i, j, k| match (i, j) {
        (0, _) => (j == k) as u64,
        (_, 0) => (i == k) as u64,
        _ => 1,
    })
    .expect("shape");
    labelled(r, &["1", "X"])
}

/// `1, ψ, σ` with `ψ² = 1`, `ψσ = σψ = σ`, `σ² = 1 + ψ`.
pub fn ising() -> FusionRing {
    let table = |i: usize, j: usize| -> [u64; 3] {
        match (i, j) {
            (0, x) | (x, 0) => [(x == 0) as u64, (x == 1) as u64, (x == 2) as u64],
            (1, 1) => [1, 0, 0],
            (1, 2) | (2, 1) => [0, 0, 1],
            _ => [1, 1, 0],
        }
    };
    let r = FusionRing::from_fn(3, Unit::Simple(0), vec![0, 1, 2], |i, j, k| table(i, j)[k]).expect("shape");
    labelled(r, &["1", "ψ", "σ"])
}

pub fn trivial() -> FusionRing {
    labelled(
        FusionRing::from_fn(1, Unit::Simple(0), vec![0], |_, _, _| 1).expect("shape"),
        &["1"],
    )
}

/// Representations of `Z/p` over a field of characteristic `p`: one
/// simple, whose projective cover has length `p`.
pub fn rep_zp_modular(p: u32) -> FusionRing {
    trivial().with_cartan(vec![vec![BigUint::from(p)]]).expect("shape")
}

/// Representations of `S3` in characteristic 3: simples `1` and `sgn`,
/// Cartan matrix `[[2, 1], [1, 2]]`.
pub fn rep_s3_char3() -> FusionRing {
    let r = FusionRing::from_fn(2, Unit::Simple(0), vec![0, 1], |i, j, k| ((i + j) % 2 == k) as u64).expect("shape");
    let c = |x: u32| BigUint::from(x);
    labelled(r, &["1", "sgn"])
        .with_cartan(vec![vec![c(2), c(1)], vec![c(1), c(2)]])
        .expect("shape")
}

/// Every bundled ring, by file name.
pub fn bundled_rings() -> Vec<(&'static str, FusionRing)> {
    vec![
        ("trivial", trivial()),
        ("vecz2", vec_g_ring(&group("z2"))),
        ("vecz3", vec_g_ring(&group("z3"))),
        ("vecs3", vec_g_ring(&group("s3"))),
        ("repz2", rep("z2")),
        ("reps3", rep("s3")),
        ("repq8", rep("q8")),
        ("fib", fibonacci()),
        ("ising", ising()),
        ("repz3_char3", rep_zp_modular(3)),
        ("reps3_char3", rep_s3_char3()),
    ]
}

pub fn bundled_ring(name: &str) -> Option<FusionRing> {
    bundled_rings().into_iter().find(|(n, _)| *n == name).map(|(_, r)| r)
}

fn fiber(ring: FusionRing) -> BasedModule {
    let ring = Arc::new(ring);
    let dims: Vec<BigUint> = fpdims(&ring, &PerronOptions::default())
        .expect("dimensions")
        .into_iter()
        .map(|d| d.exact_integer.and_then(|n| n.to_biguint()).expect("integer dimension"))
        .collect();
    BasedModule::rank_one(ring, &dims)
        .expect("shape")
        .with_labels(vec!["Vec".into()])
        .expect("shape")
}

/// Every bundled module with the name of the ring it lives over.
pub fn bundled_modules() -> Vec<(&'static str, &'static str, BasedModule)> {
    let ring = |n: &str| bundled_ring(n).expect("bundled ring");
    vec![
        ("vec_regular", "trivial", BasedModule::regular(Arc::new(ring("trivial")))),
        ("fib_regular", "fib", BasedModule::regular(Arc::new(ring("fib")))),
        ("ising_regular", "ising", BasedModule::regular(Arc::new(ring("ising")))),
        ("vec_over_reps3", "reps3", fiber(ring("reps3"))),
        ("vec_over_repq8", "repq8", fiber(ring("repq8"))),
        ("vec_over_vecz2", "vecz2", fiber(ring("vecz2"))),
    ]
}

pub fn bundled_module(name: &str) -> Option<BasedModule> {
    bundled_modules().into_iter().find(|(n, _, _)| *n == name).map(|(_, _, m)| m)
}

/// Named sequences: the `S3 ⊃ A3` and `Z/4 ⊃ Z/2` extensions, the `S3`
/// data with `A` replaced by `Vec`, and two Deligne products.
pub fn bundled_sequences() -> Vec<(&'static str, SequenceData)> {
    let s3 = group("s3");
    let s3_a3 = extension_sequence(&s3, &[0, 2, 4].into()).expect("normal subgroup");
    let vec = Arc::new(trivial());
    let too_small = SequenceData {
        a: vec.clone(),
        module: BasedModule::rank_one(vec, &[BigUint::from(1u32)]).expect("shape"),
        iota: (0..s3_a3.b.rank()).map(|i| vec![BigUint::from((i == 0) as u32)]).collect(),
        ..s3_a3.clone()
    };
    let deligne = |m: &str, c: &str| {
        let m = bundled_module(m).expect("bundled module");
        let c = Arc::new(bundled_ring(c).expect("bundled ring"));
        make_deligne_sequence(m.ring_arc(), &c, &m).expect("indecomposable module")
    };
    vec![
        ("s3_a3", s3_a3),
        ("s3_vec_too_small", too_small),
        ("z4_z2", extension_sequence(&group("z4"), &[0, 2].into()).expect("normal subgroup")),
        ("fib_deligne", deligne("fib_regular", "repz2")),
        ("reps3_vecz2", deligne("vec_over_reps3", "vecz2")),
    ]
}

pub fn bundled_sequence(name: &str) -> Option<SequenceData> {
    bundled_sequences().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}

/// The corpus built from the group catalog and the bundled rings,
/// modules and sequences; identical to the repository data files.
pub fn builtin_corpus() -> CorpusSource {
    CorpusSource {
        groups: catalog()
            .into_iter()
            .map(|e| (e.name.to_string(), catalog_group(e.name).expect("catalog group")))
            .collect(),
        rings: bundled_rings().into_iter().map(|(n, r)| (n.to_string(), r)).collect(),
        modules: bundled_modules().into_iter().map(|(n, _, m)| (n.to_string(), m)).collect(),
        sequences: bundled_sequences().into_iter().map(|(n, s)| (n.to_string(), s)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;
    use crate::module::{is_indecomposable, module_fpdims, validate_module};
    use crate::ring::{fpdim_category, validate_ring};

    #[test]
    fn everything_validates() {
        for (name, r) in bundled_rings() {
            assert!(validate_ring(&r).is_valid(), "{name}: {}", validate_ring(&r));
        }
        for (name, ring, m) in bundled_modules() {
            assert!(validate_module(&m).is_valid(), "{name}");
            assert!(is_indecomposable(&m), "{name}");
            assert_eq!(m.ring(), &bundled_ring(ring).unwrap(), "{name}");
        }
    }

    #[test]
    fn modular_rings() {
        let opts = PerronOptions::default();
        let d = fpdim_category(&rep_zp_modular(5), &opts).unwrap();
        assert_eq!(d.exact_integer, Some(5.into()));
        let d = fpdim_category(&rep_s3_char3(), &opts).unwrap();
        assert_eq!(d.exact_integer, Some(6.into()));
    }

    #[test]
    fn ising_dimension() {
        let d = fpdim_category(&ising(), &PerronOptions::default()).unwrap();
        assert_eq!(d.exact_integer, Some(4.into()));
        let m = module_fpdims(&bundled_module("vec_over_reps3").unwrap(), &PerronOptions::default()).unwrap();
        let x = &m.dims[0];
        assert!(x.lo() * x.lo() <= rat(6, 1) && x.hi() * x.hi() >= rat(6, 1));
    }
}
