//! Inflation and restriction between `Rep(G/K)`, `Rep(G)` and `Rep(H)`,
//! computed with characters at one shared prime.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;

use super::characters::{rep_g_fusion_at, CharacterFusion};
use super::{admissible_primes, GroupTable};
use crate::error::{Error, Result};
use crate::module::{BasedModule, IntMatrix};
use crate::sequence::SequenceData;

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// `R[j][i] = <χ_i|_H, ψ_j>` with `embed[h]` the image of `h ∈ H` in `G`.
/// Both character tables must use the same prime.
pub fn restriction_matrix_at(g: &CharacterFusion, h: &CharacterFusion, embed: &[usize]) -> Result<IntMatrix> {
    if g.prime != h.prime {
        return Err(Error::Precondition("character tables use different primes".into()));
    }
    let p = g.prime;
    let inv_h = inv_mod(embed.len() as u64, p);
    let mut out = vec![vec![BigUint::default(); g.num_irreps()]; h.num_irreps()];
    for (j, row) in out.iter_mut().enumerate() {
        for (i, cell) in row.iter_mut().enumerate() {
            let mut sum = 0u128;
            for (x, &gx) in embed.iter().enumerate() {
                let c = h.classes.class_of[x];
                let psi_inv = h.chars[j][h.classes.inverse_class[c]];
                sum = (sum + g.value(i, gx) as u128 * psi_inv as u128) % p as u128;
            }
            let v = (sum * inv_h as u128 % p as u128) as u64;
            if v > g.dims[i] {
                return Err(Error::CharacterTable { attempts: 1 });
            }
            *cell = BigUint::from(v);
        }
    }
    Ok(out)
}

/// `ι[b][a] = 1` when `χ_b` is the inflation of the quotient character
/// `χ_a` along `coset`.
pub fn inflation_matrix(g: &CharacterFusion, q: &CharacterFusion, coset: &[usize]) -> Result<IntMatrix> {
    let mut out = vec![vec![BigUint::default(); q.num_irreps()]; g.num_irreps()];
    for a in 0..q.num_irreps() {
        let inflated: Vec<u64> = g.classes.classes.iter().map(|c| q.value(a, coset[c[0]])).collect();
        let b = g
            .chars
            .iter()
            .position(|chi| *chi == inflated)
            .ok_or(Error::CharacterTable { attempts: 1 })?;
        out[b][a] = BigUint::from(1u32);
    }
    Ok(out)
}

/// Restriction to the subgroup on `embed` (indices into `g`).
pub fn restriction_matrix(g: &GroupTable, embed: &[usize]) -> Result<IntMatrix> {
    let set: BTreeSet<usize> = embed.iter().copied().collect();
    if set.len() != embed.len() || !g.is_subgroup(&set) {
        return Err(Error::NotSubgroup(format!("{embed:?}")));
    }
    let pos = |x: usize| embed.iter().position(|&e| e == x).expect("closed");
    let h = GroupTable::from_fn(embed.len(), |a, b| pos(g.mul(embed[a], embed[b])))?;
    let mut last = Error::CharacterTable { attempts: 0 };
    for p in admissible_primes(g).take(5) {
        match (rep_g_fusion_at(g, p), rep_g_fusion_at(&h, p)) {
            (Ok(cg), Ok(ch)) => return restriction_matrix_at(&cg, &ch, embed),
            (Err(e), _) | (_, Err(e)) => last = e,
        }
    }
    Err(last)
}

/// `Rep(G/K) → Rep(G) → Rep(H)` with `K` the normal closure of `H`, `M`
/// the fiber functor of `Rep(G/K)` and `F` restriction. `K = H` exactly
/// when `H` is normal, and then this is the extension sequence.
pub fn restriction_sequence(g: &GroupTable, h: &BTreeSet<usize>) -> Result<SequenceData> {
    let (ht, embed) = g.subgroup_table(h)?;
    let k = g.normal_closure(h);
    let (qt, coset) = g.quotient(&k)?;
    let mut last = Error::CharacterTable { attempts: 0 };
    for p in admissible_primes(g).take(5) {
        let tables = rep_g_fusion_at(g, p).and_then(|cg| {
            let cq = rep_g_fusion_at(&qt, p)?;
            let ch = rep_g_fusion_at(&ht, p)?;
            Ok((cg, cq, ch))
        });
        let (cg, cq, ch) = match tables {
            Ok(t) => t,
            Err(e) => {
                last = e;
                continue;
            }
        };
        let iota = inflation_matrix(&cg, &cq, &coset)?;
        let f = restriction_matrix_at(&cg, &ch, &embed)?;
        let a = Arc::new(cq.ring);
        let dims: Vec<BigUint> = cq.dims.iter().map(|&d| BigUint::from(d)).collect();
        let module = BasedModule::rank_one(a.clone(), &dims)?;
        return Ok(SequenceData {
            a,
            b: Arc::new(cg.ring),
            c: Arc::new(ch.ring),
            module,
            iota,
            f,
        });
    }
    Err(last)
}

/// `Rep(G/N) → Rep(G) → Rep(N)` with respect to `Vec`.
pub fn extension_sequence(g: &GroupTable, normal: &BTreeSet<usize>) -> Result<SequenceData> {
    if !g.is_subgroup(normal) {
        return Err(Error::NotSubgroup(format!("{normal:?}")));
    }
    if !g.is_normal(normal) {
        return Err(Error::NotNormal);
    }
    restriction_sequence(g, normal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, quaternion, rep_g_fusion};
    use crate::sequence::validate_sequence;

    fn u(v: &[u32]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn restriction_of_s3_to_a3() {
        let r = restriction_matrix(&dihedral(3), &[0, 2, 4]).unwrap();
        // rows: Z3 characters (trivial first); columns: trivial, sign, standard
        assert_eq!(r[0], u(&[1, 1, 0]));
        assert_eq!(r[1], u(&[0, 0, 1]));
        assert_eq!(r[2], u(&[0, 0, 1]));
    }

    #[test]
    fn trivial_and_full_restrictions() {
        let g = quaternion(2);
        let cf = rep_g_fusion(&g).unwrap();
        let r = restriction_matrix(&g, &[g.identity()]).unwrap();
        assert_eq!(r, vec![cf.dims.iter().map(|&d| BigUint::from(d)).collect::<Vec<_>>()]);
        let all: Vec<usize> = (0..8).collect();
        let r = restriction_matrix(&g, &all).unwrap();
        for (j, row) in r.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                assert_eq!(*c, BigUint::from((i == j) as u32));
            }
        }
        assert!(restriction_matrix(&dihedral(3), &[0, 2]).is_err());
    }

    #[test]
    fn extension_sequences() {
        let s = extension_sequence(&dihedral(3), &[0, 2, 4].into()).unwrap();
        assert!(validate_sequence(&s).is_valid());
        assert_eq!((s.a.rank(), s.b.rank(), s.c.rank()), (2, 3, 3));
        let z4 = cyclic(4);
        let s = extension_sequence(&z4, &[0, 2].into()).unwrap();
        assert!(validate_sequence(&s).is_valid());
        let s = extension_sequence(&z4, &(0..4).collect()).unwrap();
        assert_eq!(s.a.rank(), 1);
        assert!(matches!(
            extension_sequence(&dihedral(3), &[0, 1].into()),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn non_normal_restriction_is_valid() {
        let s = restriction_sequence(&dihedral(3), &[0, 1].into()).unwrap();
        assert!(validate_sequence(&s).is_valid());
        // normal closure of a reflection is all of S3
        assert_eq!(s.a.rank(), 1);
    }
}
