use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::{Expansion, FusionRing, Unit};
use crate::error::{Error, Result};

/// Deligne product `r1 ⊠ r2`: basis `(i, j)` at index `i * rank2 + j`,
/// structure constants multiply, unit and duality act componentwise and the
/// Cartan matrix is the Kronecker product.
pub fn deligne_product(r1: &FusionRing, r2: &FusionRing) -> FusionRing {
    let (n1, n2) = (r1.rank(), r2.rank());
    let idx = |i: usize, j: usize| i * n2 + j;
    let mut products = Vec::with_capacity(n1 * n1 * n2 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            for k in 0..n1 {
                for l in 0..n2 {
                    let mut e: Expansion = Vec::new();
                    for (m, a) in r1.product(i, k) {
                        for (n, b) in r2.product(j, l) {
                            e.push((idx(*m, *n), a * b));
                        }
                    }
                    products.push(e);
                }
            }
        }
    }
    let mut comps: Vec<usize> = r1
        .unit_components()
        .iter()
        .flat_map(|&u| r2.unit_components().iter().map(move |&v| idx(u, v)))
        .collect();
    comps.sort_unstable();
    let unit = if r1.is_multifusion() || r2.is_multifusion() {
        Unit::Components(comps)
    } else {
        Unit::Simple(comps[0])
    };
    let dual = (0..n1 * n2).map(|x| idx(r1.dual(x / n2), r2.dual(x % n2))).collect();

    let mut ring = FusionRing::from_products(unit, dual, products).expect("product of valid shapes");
    if r1.cartan().is_some() || r2.cartan().is_some() {
        let c1 = cartan_or_identity(r1);
        let c2 = cartan_or_identity(r2);
        let kron = (0..n1 * n2)
            .map(|a| (0..n1 * n2).map(|b| &c1[a / n2][b / n2] * &c2[a % n2][b % n2]).collect())
            .collect();
        ring = ring.with_cartan(kron).expect("Kronecker shape");
    }
    if r1.labels().is_some() || r2.labels().is_some() {
        let labels = (0..n1 * n2)
            .map(|x| format!("{}⊠{}", r1.label(x / n2), r2.label(x % n2)))
            .collect();
        ring = ring.with_labels(labels).expect("label count");
    }
    ring
}

pub(crate) fn cartan_or_identity(r: &FusionRing) -> Vec<Vec<BigUint>> {
    match r.cartan() {
        Some(c) => c.clone(),
        None => (0..r.rank())
            .map(|i| (0..r.rank()).map(|j| BigUint::from((i == j) as u32)).collect())
            .collect(),
    }
}

/// `N^op_ij^k = N_ji^k`.
pub fn opposite_ring(ring: &FusionRing) -> FusionRing {
    let r = ring.rank();
    let products = (0..r * r).map(|p| ring.product(p % r, p / r).clone()).collect();
    let mut out = FusionRing::from_products(ring.unit().clone(), ring.duals().to_vec(), products).expect("same shape");
    if let Some(c) = ring.cartan() {
        out = out.with_cartan(c.clone()).expect("same shape");
    }
    if let Some(l) = ring.labels() {
        out = out.with_labels(l.to_vec()).expect("same shape");
    }
    out
}

/// Smallest set of basis elements containing the unit components and
/// `generators` that is closed under duals and products.
pub fn based_subring_closure(ring: &FusionRing, generators: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = ring.unit_components().iter().copied().collect();
    set.extend(generators);
    loop {
        let mut next = set.clone();
        for &i in &set {
            next.insert(ring.dual(i));
            for &j in &set {
                next.extend(ring.product(i, j).iter().map(|(k, _)| *k));
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

pub fn is_based_subring(ring: &FusionRing, set: &BTreeSet<usize>) -> bool {
    ring.unit_components().iter().all(|u| set.contains(u))
        && set.iter().all(|&i| set.contains(&ring.dual(i)))
        && set
            .iter()
            .all(|&i| set.iter().all(|&j| ring.product(i, j).iter().all(|(k, _)| set.contains(k))))
}

/// Every based subring, smallest first.
pub fn based_subrings(ring: &FusionRing) -> Vec<BTreeSet<usize>> {
    let base = based_subring_closure(ring, []);
    let mut found = vec![base];
    let mut frontier = 0;
    while frontier < found.len() {
        let current = found[frontier].clone();
        for x in 0..ring.rank() {
            if current.contains(&x) {
                continue;
            }
            let next = based_subring_closure(ring, current.iter().copied().chain([x]));
            if !found.contains(&next) {
                found.push(next);
            }
        }
        frontier += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
}

/// The based subring on `set` (sorted), with the embedding of its basis.
pub fn restrict_to_subring(ring: &FusionRing, set: &BTreeSet<usize>) -> Result<(FusionRing, Vec<usize>)> {
    if !is_based_subring(ring, set) {
        return Err(Error::Precondition("set is not a based subring".into()));
    }
    if !ring.is_semisimple() {
        return Err(Error::NonSemisimple("subring restriction"));
    }
    let embed: Vec<usize> = set.iter().copied().collect();
    let pos = |x: usize| embed.binary_search(&x).expect("closed set");
    let mut products = Vec::with_capacity(embed.len() * embed.len());
    for &i in &embed {
        for &j in &embed {
            products.push(ring.product(i, j).iter().map(|(k, c)| (pos(*k), c.clone())).collect());
        }
    }
    let unit = match ring.unit() {
        Unit::Simple(u) => Unit::Simple(pos(*u)),
        Unit::Components(c) => Unit::Components(c.iter().map(|&u| pos(u)).collect()),
    };
    let dual = embed.iter().map(|&i| pos(ring.dual(i))).collect();
    let mut sub = FusionRing::from_products(unit, dual, products)?;
    if let Some(l) = ring.labels() {
        sub = sub.with_labels(embed.iter().map(|&i| l[i].clone()).collect())?;
    }
    Ok((sub, embed))
}

fn signature(ring: &FusionRing, i: usize) -> (bool, bool, Vec<BigUint>) {
    let mut sums: Vec<BigUint> = (0..ring.rank())
        .map(|j| ring.product(i, j).iter().map(|(_, c)| c.clone()).sum())
        .collect();
    sums.sort();
    (ring.unit_components().contains(&i), ring.dual(i) == i, sums)
}

/// A basis bijection `p` with `N1_ij^k = N2_{p(i) p(j)}^{p(k)}`, found by
/// backtracking.
pub fn find_isomorphism(r1: &FusionRing, r2: &FusionRing) -> Option<Vec<usize>> {
    let n = r1.rank();
    if n != r2.rank() || r1.unit_components().len() != r2.unit_components().len() {
        return None;
    }
    let sig1: Vec<_> = (0..n).map(|i| signature(r1, i)).collect();
    let sig2: Vec<_> = (0..n).map(|i| signature(r2, i)).collect();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(r1: &FusionRing, r2: &FusionRing, perm: &[usize], x: usize) -> bool {
        let assigned: Vec<usize> = (0..perm.len()).filter(|&i| perm[i] != usize::MAX).collect();
        let d = r1.dual(x);
        if perm[d] != usize::MAX && perm[d] != r2.dual(perm[x]) {
            return false;
        }
        for &i in &assigned {
            for &j in &assigned {
                for &k in &assigned {
                    if (i == x || j == x || k == x) && r1.n(i, j, k) != r2.n(perm[i], perm[j], perm[k]) {
                        return false;
                    }
                }
                if i != x && j != x {
                    continue;
                }
                let lhs: BigUint = r1.product(i, j).iter().map(|(_, c)| c.clone()).sum();
                let rhs: BigUint = r2.product(perm[i], perm[j]).iter().map(|(_, c)| c.clone()).sum();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn search(
        x: usize,
        r1: &FusionRing,
        r2: &FusionRing,
        sig1: &[(bool, bool, Vec<BigUint>)],
        sig2: &[(bool, bool, Vec<BigUint>)],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == perm.len() {
            return true;
        }
        for y in 0..perm.len() {
            if used[y] || sig1[x] != sig2[y] {
                continue;
            }
            perm[x] = y;
            used[y] = true;
            if consistent(r1, r2, perm, x) && search(x + 1, r1, r2, sig1, sig2, perm, used) {
                return true;
            }
            perm[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    if search(0, r1, r2, &sig1, &sig2, &mut perm, &mut used) {
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let mapped: Expansion = {
                    let mut e: Expansion = r1.product(i, j).iter().map(|(k, c)| (perm[*k], c.clone())).collect();
                    e.sort_by_key(|(k, _)| *k);
                    e
                };
                &mapped == r2.product(perm[i], perm[j])
            })
        });
        debug_assert!(ok);
        ok.then_some(perm)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perron::PerronOptions;
    use crate::ring::fixtures::*;
    use crate::ring::{fpdim_category, validate_ring};

    #[test]
    fn deligne_of_group_rings_is_group_ring() {
        let p = deligne_product(&vec_z(2), &vec_z(2));
        assert!(validate_ring(&p).is_valid());
        assert_eq!(p.rank(), 4);
        // Z/2 x Z/2: every element squares to the unit.
        for i in 0..4 {
            assert_eq!(p.product(i, i), &vec![(0, BigUint::from(1u32))]);
        }
        assert!(find_isomorphism(&p, &vec_z(4)).is_none());
    }

    #[test]
    fn trivial_ring_is_neutral() {
        let s3 = rep_s3();
        let p = deligne_product(&trivial(), &s3);
        assert_eq!(p, s3);
        let q = deligne_product(&s3, &trivial());
        assert_eq!(q, s3);
    }

    #[test]
    fn deligne_dimension_multiplies() {
        let opts = PerronOptions::default();
        let p = deligne_product(&fib(), &rep_s3());
        let d = fpdim_category(&p, &opts).unwrap().interval();
        let f = fpdim_category(&fib(), &opts).unwrap().interval();
        assert!(d.intersects(&f.scale(&crate::interval::rat(6, 1))));
    }

    #[test]
    fn opposite_is_involution() {
        let s3 = rep_s3();
        assert_eq!(opposite_ring(&s3), s3);
        assert_eq!(opposite_ring(&vec_z(3)), vec_z(3));
        let p = deligne_product(&fib(), &vec_z(2));
        assert_eq!(opposite_ring(&opposite_ring(&p)), p);
    }

    #[test]
    fn subrings_of_rep_s3() {
        let subs = based_subrings(&rep_s3());
        let expected: Vec<BTreeSet<usize>> = vec![[0].into(), [0, 1].into(), [0, 1, 2].into()];
        assert_eq!(subs, expected);
        let (sub, embed) = restrict_to_subring(&rep_s3(), &[0, 1].into()).unwrap();
        assert_eq!(embed, vec![0, 1]);
        assert!(find_isomorphism(&sub, &vec_z(2)).is_some());
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let s3 = rep_s3();
        // Swap sign and standard labels: 0 -> 0, 1 -> 2, 2 -> 1.
        let p = [0usize, 2, 1];
        let relabeled = FusionRing::from_fn(3, Unit::Simple(0), vec![0, 1, 2], |i, j, k| {
            let inv = |x: usize| p.iter().position(|&y| y == x).unwrap();
            u64::try_from(s3.n(inv(i), inv(j), inv(k))).unwrap()
        })
        .unwrap();
        let found = find_isomorphism(&s3, &relabeled).unwrap();
        assert_eq!(found, vec![0, 2, 1]);
    }
}
