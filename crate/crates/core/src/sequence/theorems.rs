//! Dimension identities that hold along a sequence: the image of the
//! regular object, internal Hom dimensions, the induced module and the
//! dual triple.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::{compute_alpha, is_surjective_gr, SequenceData};
use crate::error::{Error, Result};
use crate::interval::{rat, rat_from_uint, Interval};
use crate::module::{module_fpdims, BasedModule};
use crate::perron::PerronOptions;
use crate::ring::{fpdim_category, regular_object, FusionRing};

fn require_surjective(s: &SequenceData) -> Result<()> {
    if is_surjective_gr(s) {
        Ok(())
    } else {
        Err(Error::Precondition("F is not surjective".into()))
    }
}

/// Tolerance used for the ingredients, so that sums of a few dozen
/// products stay within `tol`.
fn inner(opts: &PerronOptions) -> PerronOptions {
    PerronOptions {
        tol: &opts.tol / rat(1 << 16, 1),
        ..opts.clone()
    }
}

fn weighted_row(row: &[BigUint], weights: &[Interval]) -> Interval {
    row.iter()
        .zip(weights)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, w)| w.scale(&rat_from_uint(c)))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularImageCheck {
    pub holds: bool,
    /// `F(R_B)` per target simple.
    pub lhs: Vec<Interval>,
    /// `α R_C ⊠ R_M ⊠ R_M∨` per target simple.
    pub rhs: Vec<Interval>,
}

/// `F(R_B) = α · R_C ⊠ R_M ⊠ R_{M^∨}`: the coefficient of `Y_t ⊠ E_kj` on
/// the right is `α d_t m_k m_j`. Needs only surjectivity.
pub fn regular_image_check(s: &SequenceData, opts: &PerronOptions) -> Result<RegularImageCheck> {
    require_surjective(s)?;
    let fine = inner(opts);
    let rb = regular_object(&s.b, &fine)?;
    let rc = regular_object(&s.c, &fine)?;
    let md = module_fpdims(&s.module, &fine)?.dims;
    let alpha = compute_alpha(s, &fine)?;
    let alpha = match &alpha.exact {
        Some(x) => Interval::point(x.clone()),
        None => alpha.interval,
    };
    let m = s.mrank();
    let lhs: Vec<Interval> = s.f.iter().map(|row| weighted_row(row, &rb)).collect();
    let rhs: Vec<Interval> = (0..s.target_rank())
        .map(|row| {
            let (t, k, j) = (row / (m * m), row / m % m, row % m);
            &(&(&alpha * &rc[t]) * &md[k]) * &md[j]
        })
        .collect();
    let holds = lhs.iter().zip(&rhs).all(|(l, r)| l.agrees_within(r, &opts.tol));
    Ok(RegularImageCheck { holds, lhs, rhs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InternalHomCheck {
    pub holds: bool,
    /// `Σ_i d_i [F(X_i) : 1 ⊠ E_kj]`.
    pub fpdim: Interval,
    /// `α m_j m_k`.
    pub expected: Interval,
}

/// `FPdim Hom_B(1 ⊠ M_j, 1 ⊠ M_k) = α FPdim(M_j) FPdim(M_k)`, with the
/// left side read off the `1_C ⊠ E_kj` row of `F`.
pub fn internal_hom_fpdim_check(s: &SequenceData, j: usize, k: usize, opts: &PerronOptions) -> Result<InternalHomCheck> {
    let m = s.mrank();
    for x in [j, k] {
        if x >= m {
            return Err(Error::IndexOutOfRange { index: x, size: m });
        }
    }
    require_surjective(s)?;
    let fine = inner(opts);
    let rb = regular_object(&s.b, &fine)?;
    let md = module_fpdims(&s.module, &fine)?.dims;
    let alpha = compute_alpha(s, &fine)?;
    let alpha = alpha.exact.map_or(alpha.interval, Interval::point);
    let fpdim = weighted_row(&s.f[s.target_index(s.unit_c(), k, j)], &rb);
    let expected = &(&alpha * &md[j]) * &md[k];
    Ok(InternalHomCheck {
        holds: fpdim.agrees_within(&expected, &opts.tol),
        fpdim,
        expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedDims {
    pub holds: bool,
    /// Dimensions of `C ⊠ M` as a `B`-module, basis `(t, l)` at `t m + l`.
    pub dims: Vec<Interval>,
    /// `sqrt(α) d_t m_l`.
    pub expected: Vec<Interval>,
}

/// The `B`-module `C ⊠ M` where `X_i` acts through `F`:
/// `[X_i ⊗ (Y_t ⊠ M_l) : Y_u ⊠ M_k] = Σ_s [F(X_i) : Y_s ⊠ E_kl] N_st^u`.
pub fn induced_module(s: &SequenceData) -> Result<BasedModule> {
    let (rc, m) = (s.c.rank(), s.mrank());
    let n = rc * m;
    let mut a = vec![vec![vec![BigUint::zero(); n]; n]; s.b.rank()];
    for (i, slice) in a.iter_mut().enumerate() {
        for (row, coeff) in s.f_column(i) {
            let (sc, k, l) = (row / (m * m), row / m % m, row % m);
            for t in 0..rc {
                for (u, nc) in s.c.product(sc, t) {
                    slice[t * m + l][u * m + k] += &coeff * nc;
                }
            }
        }
    }
    BasedModule::new(s.b.clone(), a)
}

/// Normalizing the induced module to `FPdim(B)` gives `sqrt(α) d_t m_l`,
/// since the regular object of `C ⊠ M` is `α R_C ⊠ R_M`.
pub fn induced_module_dims(s: &SequenceData, opts: &PerronOptions) -> Result<InducedDims> {
    require_surjective(s)?;
    let fine = inner(opts);
    let induced = induced_module(s)?;
    let dims = module_fpdims(&induced, &fine)?.dims;
    let dc = regular_object(&s.c, &fine)?;
    let md = module_fpdims(&s.module, &fine)?.dims;
    let alpha = compute_alpha(s, &fine)?;
    let alpha = alpha.exact.map_or(alpha.interval, Interval::point);
    let root = alpha.sqrt(&fine.tol);
    let m = s.mrank();
    let expected: Vec<Interval> = (0..dims.len()).map(|x| &(&root * &dc[x / m]) * &md[x % m]).collect();
    let holds = dims.iter().zip(&expected).all(|(a, b)| a.agrees_within(b, &opts.tol));
    Ok(InducedDims { holds, dims, expected })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualDimsReport {
    pub a_matches: bool,
    pub b_matches: bool,
    pub c_matches: bool,
    /// `FPdim(B*) = FPdim(A*) FPdim(C*)`.
    pub multiplicative: bool,
    pub dims: [Interval; 3],
    pub dual_dims: [Interval; 3],
}

impl DualDimsReport {
    pub fn holds(&self) -> bool {
        self.a_matches && self.b_matches && self.c_matches && self.multiplicative
    }
}

/// Compares claimed dual categories with the sequence by `FPdim` alone.
pub fn dual_dims_check(
    s: &SequenceData,
    dual_a: &FusionRing,
    dual_b: &FusionRing,
    dual_c: &FusionRing,
    opts: &PerronOptions,
) -> Result<DualDimsReport> {
    let fine = inner(opts);
    let dim = |r: &FusionRing| -> Result<Interval> {
        let res = fpdim_category(r, &fine)?;
        Ok(res.exact_rational().map_or_else(|| res.interval(), Interval::point))
    };
    let dims = [dim(&s.a)?, dim(&s.b)?, dim(&s.c)?];
    let dual_dims = [dim(dual_a)?, dim(dual_b)?, dim(dual_c)?];
    let close = |x: &Interval, y: &Interval| x.agrees_within(y, &opts.tol);
    let product = &dual_dims[0] * &dual_dims[2];
    Ok(DualDimsReport {
        a_matches: close(&dims[0], &dual_dims[0]),
        b_matches: close(&dims[1], &dual_dims[1]),
        c_matches: close(&dims[2], &dual_dims[2]),
        multiplicative: close(&dual_dims[1], &product),
        dims,
        dual_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, vec_g_ring};
    use crate::ring::fixtures::*;
    use crate::sequence::fixtures::*;

    fn opts() -> PerronOptions {
        PerronOptions::with_tol(rat(1, 10_000_000_000))
    }

    #[test]
    fn regular_image() {
        for s in [s3_sequence(), fib_deligne(), s3_too_small()] {
            let r = regular_image_check(&s, &opts()).unwrap();
            assert!(r.holds, "{r:?}");
        }
        let r = regular_image_check(&s3_too_small(), &opts()).unwrap();
        assert_eq!(r.lhs, vec![Interval::from_int(2); 3]);
    }

    #[test]
    fn internal_hom() {
        let s = s3_sequence();
        let r = internal_hom_fpdim_check(&s, 0, 0, &opts()).unwrap();
        assert!(r.holds);
        assert_eq!(r.fpdim, Interval::from_int(2));
        let d = fib_deligne();
        for j in 0..2 {
            for k in 0..2 {
                assert!(internal_hom_fpdim_check(&d, j, k, &opts()).unwrap().holds);
            }
        }
        let r = internal_hom_fpdim_check(&d, 0, 0, &opts()).unwrap();
        assert_eq!(r.fpdim, Interval::one());
        assert!(internal_hom_fpdim_check(&d, 2, 0, &opts()).is_err());
    }

    #[test]
    fn induced_dims() {
        for s in [s3_sequence(), fib_deligne()] {
            let r = induced_module_dims(&s, &opts()).unwrap();
            assert!(r.holds, "{r:?}");
        }
        let r = induced_module_dims(&s3_sequence(), &opts()).unwrap();
        // sqrt(6/3) for each of the three simples of Rep(Z/3) ⊠ Vec.
        for d in &r.dims {
            assert!(d.lo() * d.lo() <= rat(2, 1) && d.hi() * d.hi() >= rat(2, 1));
        }
    }

    #[test]
    fn dual_triple() {
        let s = s3_sequence();
        let good = dual_dims_check(
            &s,
            &vec_z(2),
            &vec_g_ring(&crate::group::dihedral(3)),
            &vec_g_ring(&cyclic(3)),
            &opts(),
        )
        .unwrap();
        assert!(good.holds());
        assert_eq!(good.dual_dims, [Interval::from_int(2), Interval::from_int(6), Interval::from_int(3)]);
        let bad = dual_dims_check(&s, &vec_z(2), &vec_g_ring(&crate::group::dihedral(3)), &vec_z(4), &opts()).unwrap();
        assert!(!bad.holds());
        assert!(!bad.multiplicative);
    }
}
