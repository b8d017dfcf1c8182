//! Single-point perturbations of a sequence, used as negative cases.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use super::SequenceData;
use crate::module::is_indecomposable;
use crate::ring::{based_subrings, restrict_to_subring};

/// Replaces `A` by each proper based subring (the simples outside it are
/// dropped from the image of `ι`), keeping only restrictions of `M` that
/// stay indecomposable. Returns the retained simples with each sequence.
pub fn shrink_a(s: &SequenceData) -> Vec<(Vec<usize>, SequenceData)> {
    let mut out = Vec::new();
    for sub in based_subrings(&s.a) {
        if sub.len() == s.a.rank() {
            continue;
        }
        let Ok((ring, embed)) = restrict_to_subring(&s.a, &sub) else {
            continue;
        };
        let ring = Arc::new(ring);
        let Ok(module) = s.module.pull_back(ring.clone(), &embed) else {
            continue;
        };
        if !is_indecomposable(&module) {
            continue;
        }
        let iota = s.iota.iter().map(|row| embed.iter().map(|&a| row[a].clone()).collect()).collect();
        out.push((
            embed,
            SequenceData {
                a: ring,
                module,
                iota,
                ..s.clone()
            },
        ));
    }
    out
}

/// Moves one unit of multiplicity of `F(X_column)` from target simple
/// `from` to `to`; `None` when there is nothing to move.
pub fn reroute_f(s: &SequenceData, column: usize, from: usize, to: usize) -> Option<SequenceData> {
    if from == to || s.f.get(from)?.get(column)?.is_zero() || to >= s.f.len() {
        return None;
    }
    let mut out = s.clone();
    out.f[from][column] -= BigUint::from(1u32);
    out.f[to][column] += BigUint::from(1u32);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perron::PerronOptions;
    use crate::sequence::fixtures::*;
    use crate::sequence::{check_exact, validate_sequence, NotExactReason, Verdict};

    #[test]
    fn shrinking_a_breaks_exactness() {
        let s = s3_sequence();
        let shrunk = shrink_a(&s);
        assert_eq!(shrunk.len(), 1);
        let (kept, t) = &shrunk[0];
        assert_eq!(kept, &vec![0]);
        assert!(validate_sequence(t).is_valid());
        let r = check_exact(t, &PerronOptions::default()).unwrap();
        match r.verdict {
            Verdict::NotExact { reasons } => assert!(reasons.contains(&NotExactReason::KernelMismatch)),
            v => panic!("{v:?}"),
        }
        assert_eq!(r.cross_check, Some(true));
    }

    #[test]
    fn rerouting_invalidates() {
        let s = s3_sequence();
        let t = reroute_f(&s, 2, 1, 0).unwrap();
        assert!(!validate_sequence(&t).is_valid());
        assert!(reroute_f(&s, 0, 1, 0).is_none());
    }
}
