mod oracle;

use std::sync::Arc;

use fusionseq::group::{catalog, catalog_group, rep_g_fusion, vec_g_ring};
use fusionseq::interval::{rat, rat_from_uint};
use fusionseq::library::{bundled_modules, bundled_rings};
use fusionseq::module::{action_functor_matrix, dual_module, end_ring, module_fpdims, validate_module};
use fusionseq::ring::{deligne_product, fpdim_category, fpdims, opposite_ring, validate_ring};
use fusionseq::{perron_compare, perron_eigen, BasedModule, FusionRing, Interval, PerronOptions, PerronOrdering, QMatrix};
use num_traits::Zero;
use proptest::prelude::*;

fn small_groups() -> Vec<&'static str> {
    catalog().into_iter().filter(|e| (e.build)().order() <= 16).map(|e| e.name).collect()
}

fn group_ring() -> impl Strategy<Value = (String, FusionRing)> {
    (prop::sample::select(small_groups()), any::<bool>()).prop_map(|(name, rep)| {
        let g = catalog_group(name).unwrap();
        if rep {
            (format!("Rep({name})"), rep_g_fusion(&g).unwrap().ring)
        } else {
            (format!("Vec({name})"), vec_g_ring(&g))
        }
    })
}

/// A positive `n x n` matrix and a copy with one entry lowered by 1.
fn lowered_pair() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (2usize..=6)
        .prop_flat_map(|n| (prop::collection::vec(prop::collection::vec(1i64..=5, n), n), 0..n, 0..n))
        .prop_map(|(a, r, c)| {
            let mut b = a.clone();
            b[r][c] -= 1;
            (a, b)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn lowering_an_entry_strictly_lowers_the_perron_root((a, b) in lowered_pair()) {
        let v = perron_compare(&QMatrix::from_ints(&a), &QMatrix::from_ints(&b), &PerronOptions::default()).unwrap();
        prop_assert_eq!(v.ordering, PerronOrdering::StrictlyLess);
        prop_assert!(v.lambda_b.hi < v.lambda_a.lo);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn two_by_two_bracket_holds_the_larger_root(m in prop::array::uniform2(prop::array::uniform2(0i64..=9))) {
        prop_assume!(m.iter().flatten().any(|&x| x > 0));
        let res = perron_eigen(&QMatrix::from_ints(&m), &PerronOptions::default()).unwrap();
        prop_assert!(oracle::brackets_2x2_root(m, &res.lo, &res.hi), "{:?}: [{}, {}]", m, res.lo, res.hi);
        prop_assert!(res.exact_integer.is_some() || res.width() <= rat(1, 1_000_000_000_000));
    }

    #[test]
    fn perron_root_lies_between_row_sums(
        rows in (2usize..=7).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(1i64..=9, n), n))
    ) {
        let res = perron_eigen(&QMatrix::from_ints(&rows), &PerronOptions::default()).unwrap();
        let sums: Vec<i64> = rows.iter().map(|r| r.iter().sum()).collect();
        prop_assert!(rat(*sums.iter().min().unwrap(), 1) <= res.lo);
        prop_assert!(res.hi <= rat(*sums.iter().max().unwrap(), 1));
        if let Some(n) = &res.exact_integer {
            // The returned vector is then an exact eigenvector.
            let m = QMatrix::from_ints(&rows);
            let lambda = fusionseq::Rational::from_integer(n.clone());
            let mv = m.mul_vec(&res.eigvec);
            prop_assert!(mv.iter().zip(&res.eigvec).all(|(a, b)| *a == &lambda * b));
        }
    }

    #[test]
    fn fpdim_is_a_ring_homomorphism((name, r) in group_ring(), seed in any::<u64>()) {
        let d = fpdims(&r, &PerronOptions::default()).unwrap();
        let (i, j) = ((seed % r.rank() as u64) as usize, ((seed >> 32) % r.rank() as u64) as usize);
        let lhs = &d[i].interval() * &d[j].interval();
        let rhs: Interval = (0..r.rank()).map(|k| d[k].interval().scale(&rat_from_uint(&r.n(i, j, k)))).sum();
        prop_assert!(lhs.intersects(&rhs), "{}: {} vs {}", name, lhs, rhs);
    }

    #[test]
    fn deligne_product_multiplies_dimensions((n1, r1) in group_ring(), (n2, r2) in group_ring()) {
        let opts = PerronOptions::default();
        let p = fpdim_category(&deligne_product(&r1, &r2), &opts).unwrap();
        let a = fpdim_category(&r1, &opts).unwrap().exact_integer.unwrap();
        let b = fpdim_category(&r2, &opts).unwrap().exact_integer.unwrap();
        prop_assert_eq!(p.exact_integer, Some(a * b), "{} ⊠ {}", n1, n2);
    }

    #[test]
    fn opposite_is_an_involution_preserving_dimensions((name, r) in group_ring()) {
        let op = opposite_ring(&r);
        prop_assert_eq!(&opposite_ring(&op), &r);
        prop_assert!(validate_ring(&op).is_valid(), "{}", name);
        let opts = PerronOptions::default();
        prop_assert_eq!(fpdims(&op, &opts).unwrap(), fpdims(&r, &opts).unwrap());
    }

    #[test]
    fn regular_module_laws((name, r) in group_ring()) {
        let m = BasedModule::regular(Arc::new(r.clone()));
        prop_assert!(validate_module(&m).is_valid());
        prop_assert_eq!(&dual_module(&dual_module(&m)), &m);
        let dims = module_fpdims(&m, &PerronOptions::default()).unwrap().dims;
        let ring_dims = fpdims(&r, &PerronOptions::default()).unwrap();
        for (x, y) in dims.iter().zip(&ring_dims) {
            prop_assert!(x.intersects(&y.interval()), "{}: {} vs {}", name, x, y.interval());
        }
    }
}

#[test]
fn bundled_module_laws() {
    let opts = PerronOptions::default();
    for (name, _, m) in bundled_modules() {
        assert_eq!(dual_module(&dual_module(&m)), m, "{name}");
        let e = end_ring(&m);
        assert!(validate_ring(&e).is_valid(), "{name}: {}", validate_ring(&e));
        let f = action_functor_matrix(&m);
        assert!(
            f.iter().all(|row| row.iter().any(|x| !x.is_zero())),
            "{name}: some matrix unit is never hit"
        );
        // Sum_i d_i A_i has the module dimension vector as eigenvector with
        // eigenvalue FPdim(A) = sum_i d_i^2.
        let d = fpdims(m.ring(), &opts).unwrap();
        let md = module_fpdims(&m, &opts).unwrap().dims;
        let total = fpdim_category(m.ring(), &opts).unwrap().interval();
        for k in 0..m.mrank() {
            let lhs: Interval = (0..m.ring().rank())
                .flat_map(|i| (0..m.mrank()).map(move |j| (i, j)))
                .map(|(i, j)| (&d[i].interval() * &md[j]).scale(&rat_from_uint(m.a(i, j, k))))
                .sum();
            let rhs = &total * &md[k];
            assert!(lhs.intersects(&rhs), "{name}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn bundled_ring_homomorphism_exhaustive() {
    let opts = PerronOptions::default();
    for (name, r) in bundled_rings() {
        let d = fpdims(&r, &opts).unwrap();
        for x in &d {
            assert!(x.hi >= rat(1, 1), "{name}: dimension below 1");
        }
        for i in 0..r.rank() {
            for j in 0..r.rank() {
                let lhs = &d[i].interval() * &d[j].interval();
                let rhs: Interval = (0..r.rank()).map(|k| d[k].interval().scale(&rat_from_uint(&r.n(i, j, k)))).sum();
                assert!(lhs.intersects(&rhs), "{name} ({i}, {j}): {lhs} vs {rhs}");
            }
        }
    }
}
