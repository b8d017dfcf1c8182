//! Certified Perron eigenvalues of nonnegative rational matrices.
//!
//! The eigenvalue is never taken from floating point. For a positive vector
//! `v` the Collatz-Wielandt quotients give
//!
//! ```text
//! min_k (Mv)_k / v_k  <=  lambda(M)  <=  max_k (Mv)_k / v_k
//! ```
//!
//! and both sides are evaluated exactly. The vector is improved by shifted
//! inverse iteration `v <- (hi*I - M)^{-1} v`, which stays positive for an
//! irreducible block because `hi > lambda`. Once the bracket is narrower than
//! one half, the unique integer candidate `n` is tested by computing the
//! kernel of `M - n*I` exactly; a positive kernel vector proves `lambda = n`.
//!
//! Reducible inputs are split into the strongly connected components of the
//! support digraph; the spectral radius is the largest radius over the
//! irreducible diagonal blocks.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::{approx_log2, format_rational, rat, Interval, Rational};
use crate::matrix::{bareiss_solve, QMatrix};

/// Tolerance and iteration budget for eigenvalue certification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerronOptions {
    pub tol: Rational,
    pub max_iter: u64,
}

impl Default for PerronOptions {
    fn default() -> Self {
        PerronOptions {
            tol: Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 12)),
            max_iter: 1_000_000,
        }
    }
}

impl PerronOptions {
    pub fn with_tol(tol: Rational) -> Self {
        PerronOptions {
            tol,
            ..Default::default()
        }
    }
}

/// Certified bracket for a Perron eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerronResult {
    pub lo: Rational,
    pub hi: Rational,
    /// Approximate Perron vector with first nonzero coordinate 1. Strictly
    /// positive for irreducible input; exact when `exact_integer` is set.
    pub eigvec: Vec<Rational>,
    pub exact_integer: Option<BigInt>,
}

impl PerronResult {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn exact_rational(&self) -> Option<Rational> {
        self.exact_integer.clone().map(Rational::from_integer)
    }

    fn exact(n: BigInt, eigvec: Vec<Rational>) -> Self {
        let q = Rational::from_integer(n.clone());
        PerronResult {
            lo: q.clone(),
            hi: q,
            eigvec,
            exact_integer: Some(n),
        }
    }
}

impl Serialize for PerronResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PerronResult", 3)?;
        st.serialize_field("lo", &format_rational(&self.lo))?;
        st.serialize_field("hi", &format_rational(&self.hi))?;
        st.serialize_field("exact_integer", &self.exact_integer.as_ref().map(|n| n.to_string()))?;
        st.end()
    }
}

/// Exact Collatz-Wielandt bracket `(min, max)` of `(Mv)_k / v_k`.
pub fn collatz_wielandt(m: &QMatrix, v: &[Rational]) -> (Rational, Rational) {
    assert!(v.iter().all(Signed::is_positive), "Collatz-Wielandt needs a positive vector");
    let mv = m.mul_vec(v);
    let mut ratios = mv.iter().zip(v).map(|(a, b)| a / b);
    let first = ratios.next().expect("empty matrix");
    ratios.fold((first.clone(), first), |(lo, hi), r| {
        let lo = if r < lo { r.clone() } else { lo };
        let hi = if r > hi { r } else { hi };
        (lo, hi)
    })
}

pub fn perron_eigen(m: &QMatrix, opts: &PerronOptions) -> Result<PerronResult> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    m.check_nonnegative()?;
    let n = m.rows();
    if n == 0 {
        return Err(Error::Precondition("empty matrix".into()));
    }
    if m.is_zero() {
        return Ok(PerronResult::exact(BigInt::zero(), vec![Rational::one(); n]));
    }

    let comps = m.support_components();
    if comps.len() == 1 {
        return certify_block(m, opts);
    }

    let mut blocks = Vec::with_capacity(comps.len());
    for comp in &comps {
        let sub = m.submatrix(comp);
        let res = if comp.len() == 1 {
            let x = sub[(0, 0)].clone();
            let exact = x.is_integer().then(|| x.to_integer());
            PerronResult {
                lo: x.clone(),
                hi: x,
                eigvec: vec![Rational::one()],
                exact_integer: exact,
            }
        } else {
            certify_block(&sub, opts)?
        };
        blocks.push(res);
    }

    let lo = blocks.iter().map(|b| &b.lo).max().unwrap().clone();
    let hi = blocks.iter().map(|b| &b.hi).max().unwrap().clone();
    let dominant = (0..blocks.len())
        .max_by(|&a, &b| {
            blocks[a]
                .hi
                .cmp(&blocks[b].hi)
                .then_with(|| blocks[a].exact_integer.is_some().cmp(&blocks[b].exact_integer.is_some()))
                .then_with(|| b.cmp(&a))
        })
        .unwrap();
    let mut eigvec = vec![Rational::zero(); n];
    for (k, &idx) in comps[dominant].iter().enumerate() {
        eigvec[idx] = blocks[dominant].eigvec[k].clone();
    }
    normalize_first_nonzero(&mut eigvec);
    let exact_integer = (lo == hi && lo.is_integer()).then(|| lo.to_integer());
    Ok(PerronResult {
        lo,
        hi,
        eigvec,
        exact_integer,
    })
}

fn normalize_first_nonzero(v: &mut [Rational]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x /= &first;
        }
    }
}

/// A positive kernel vector of `m - n*I`, normalized to first coordinate 1.
pub(crate) fn positive_kernel_vector(m: &QMatrix, n: &BigInt) -> Option<Vec<Rational>> {
    let shifted = m.shifted_negation(&Rational::from_integer(n.clone()));
    let ns = shifted.nullspace();
    if ns.len() != 1 {
        return None;
    }
    let mut v = ns.into_iter().next().unwrap();
    if v.iter().all(Signed::is_negative) {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
    if !v.iter().all(Signed::is_positive) {
        return None;
    }
    normalize_first_nonzero(&mut v);
    Some(v)
}

/// Exact Collatz-Wielandt bracket of the integer matrix `lm / l` at the
/// positive integer vector `u`, comparing ratios by cross-multiplication.
fn integer_cw(lm: &[Vec<BigInt>], l: &BigInt, u: &[BigInt]) -> (Rational, Rational) {
    let mut lo: Option<(BigInt, BigInt)> = None;
    let mut hi: Option<(BigInt, BigInt)> = None;
    for (row, uk) in lm.iter().zip(u) {
        let num: BigInt = row.iter().zip(u).filter(|(a, _)| !a.is_zero()).map(|(a, x)| a * x).sum();
        let den = l * uk;
        if lo.as_ref().map_or(true, |(n, d)| &num * d < n * &den) {
            lo = Some((num.clone(), den.clone()));
        }
        if hi.as_ref().map_or(true, |(n, d)| &num * d > n * &den) {
            hi = Some((num, den));
        }
    }
    let (lo, hi) = (lo.expect("nonempty"), hi.expect("nonempty"));
    (Rational::new(lo.0, lo.1), Rational::new(hi.0, hi.1))
}

/// Certification for an irreducible block (support digraph strongly
/// connected, size >= 2 or a positive 1x1 entry).
///
/// Shifted inverse iteration `u <- (hi*I - M)^{-1} u` runs on integer
/// vectors rounded to `bits` bits; only the Collatz-Wielandt bracket of
/// each iterate is certified, so the rounding never affects soundness.
fn certify_block(m: &QMatrix, opts: &PerronOptions) -> Result<PerronResult> {
    let n = m.rows();
    let (lm, l) = m.to_integer_scaled();
    let mut u = vec![BigInt::one(); n];
    let (mut lo, mut hi) = integer_cw(&lm, &l, &u);
    let mut bits = (approx_log2(&hi) - approx_log2(&opts.tol)).max(0) as u64 + 48;
    let mut tried: Option<BigInt> = None;
    let half = rat(1, 2);
    let mut iter = 0u64;
    let eigvec = |u: &[BigInt]| -> Vec<Rational> { u.iter().map(|x| Rational::new(x.clone(), u[0].clone())).collect() };

    loop {
        if lo == hi {
            let exact_integer = lo.is_integer().then(|| lo.to_integer());
            return Ok(PerronResult {
                lo,
                hi,
                eigvec: eigvec(&u),
                exact_integer,
            });
        }
        if &hi - &lo < half {
            let cand = lo.ceil().to_integer();
            if Rational::from_integer(cand.clone()) <= hi && tried.as_ref() != Some(&cand) {
                if let Some(w) = positive_kernel_vector(m, &cand) {
                    return Ok(PerronResult::exact(cand, w));
                }
                tried = Some(cand);
            }
        }
        if &hi - &lo <= opts.tol {
            return Ok(PerronResult {
                lo,
                hi,
                eigvec: eigvec(&u),
                exact_integer: None,
            });
        }
        if iter >= opts.max_iter {
            return Err(Error::NoConvergence {
                iterations: iter as usize,
            });
        }
        iter += 1;

        // (p/q) I - lm/l, scaled by q l.
        let (p, q) = (hi.numer(), hi.denom());
        let shifted: Vec<Vec<BigInt>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let diag = if r == c { p * &l } else { BigInt::zero() };
                        diag - q * &lm[r][c]
                    })
                    .collect()
            })
            .collect();
        let (mut y, d) = bareiss_solve(shifted, u.clone()).expect("hi*I - M is nonsingular above the spectral radius");
        if d.is_negative() {
            y.iter_mut().for_each(|x| *x = -x.clone());
        }
        let top = y.iter().max().expect("nonempty").clone();
        let next: Vec<BigInt> = y
            .iter()
            .map(|x| {
                let r: BigInt = (x << bits) / &top;
                if r.is_positive() {
                    r
                } else {
                    BigInt::one()
                }
            })
            .collect();
        let (lo2, hi2) = integer_cw(&lm, &l, &next);
        let improved = &hi2 - &lo2 < &hi - &lo;
        if lo2 == hi2 {
            lo = lo2;
            hi = hi2;
            u = next;
            continue;
        }
        if !improved {
            bits *= 2;
        }
        if lo2 > lo {
            lo = lo2;
        }
        if hi2 < hi {
            hi = hi2;
        }
        u = next;
    }
}

/// Outcome of comparing the Perron roots of `B <= A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PerronOrdering {
    /// Certified `lambda(B) < lambda(A)`.
    StrictlyLess,
    Equal,
    /// Brackets still overlap after the refinement cap.
    Unresolved,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonVerdict {
    pub lambda_a: PerronResult,
    pub lambda_b: PerronResult,
    pub ordering: PerronOrdering,
    pub refinements: usize,
}

const COMPARE_REFINEMENTS: usize = 16;

/// Compares `lambda(B)` against `lambda(A)` for a positive `A` and
/// `0 <= B <= A` entrywise, tightening the tolerance until the brackets
/// separate.
pub fn perron_compare(a: &QMatrix, b: &QMatrix, opts: &PerronOptions) -> Result<ComparisonVerdict> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if !a[(r, c)].is_positive() {
                return Err(Error::Precondition(format!("a[{r}][{c}] is not positive")));
            }
            if b[(r, c)].is_negative() || b[(r, c)] > a[(r, c)] {
                return Err(Error::Precondition(format!("b[{r}][{c}] outside [0, a[{r}][{c}]]")));
            }
        }
    }
    if a == b {
        let la = perron_eigen(a, opts)?;
        return Ok(ComparisonVerdict {
            lambda_b: la.clone(),
            lambda_a: la,
            ordering: PerronOrdering::Equal,
            refinements: 0,
        });
    }

    let mut local = opts.clone();
    let mut refinements = 0;
    loop {
        let la = perron_eigen(a, &local)?;
        let lb = perron_eigen(b, &local)?;
        if lb.hi < la.lo {
            return Ok(ComparisonVerdict {
                lambda_a: la,
                lambda_b: lb,
                ordering: PerronOrdering::StrictlyLess,
                refinements,
            });
        }
        if refinements == COMPARE_REFINEMENTS {
            return Ok(ComparisonVerdict {
                lambda_a: la,
                lambda_b: lb,
                ordering: PerronOrdering::Unresolved,
                refinements,
            });
        }
        local.tol = &local.tol / rat(1 << 16, 1);
        refinements += 1;
    }
}

/// Perron eigenvalue together with a certified enclosure of the Perron
/// vector normalized to first coordinate 1. Requires an irreducible matrix.
///
/// With `u_0 = 1` the remaining coordinates solve
/// `(lambda*I - S') u' = b`, where `S'` drops row and column 0 and `b` is
/// column 0 below the diagonal. For `x > rho(S')` the map
/// `x -> (x*I - S')^{-1} b` is entrywise nonincreasing, so
/// `u'(hi) <= u' <= u'(lo)`.
pub fn perron_vector_enclosure(m: &QMatrix, opts: &PerronOptions) -> Result<(PerronResult, Vec<Interval>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.support_components().len() != 1 {
        return Err(Error::Precondition("eigenvector enclosure needs an irreducible matrix".into()));
    }
    let n = m.rows();
    let mut local = opts.clone();
    for _ in 0..8 {
        let res = perron_eigen(m, &local)?;
        if res.lo == res.hi {
            let enc = res.eigvec.iter().cloned().map(Interval::point).collect();
            return Ok((res, enc));
        }
        if n == 1 {
            return Ok((res, vec![Interval::one()]));
        }
        let rest: Vec<usize> = (1..n).collect();
        let sub = m.submatrix(&rest);
        let col: Vec<Rational> = rest.iter().map(|&r| m[(r, 0)].clone()).collect();
        let z = &res.eigvec[1..];
        let sz = sub.mul_vec(z);
        let below = sz.iter().zip(z).all(|(s, zk)| *s < &res.lo * zk);
        if below {
            let v_lo = sub.shifted_negation(&res.lo).solve(&col);
            let v_hi = sub.shifted_negation(&res.hi).solve(&col);
            if let (Some(v_lo), Some(v_hi)) = (v_lo, v_hi) {
                let mut enc = vec![Interval::one()];
                for (a, b) in v_hi.into_iter().zip(v_lo) {
                    debug_assert!(a <= b);
                    enc.push(Interval::new(a, b));
                }
                return Ok((res, enc));
            }
        }
        local.tol = &local.tol / rat(1 << 20, 1);
    }
    Err(Error::NoConvergence { iterations: 8 })
}

/// Orders two certified values when their brackets separate.
pub fn certified_cmp(a: &Interval, b: &Interval) -> Option<Ordering> {
    if a.hi() < b.lo() {
        Some(Ordering::Less)
    } else if b.hi() < a.lo() {
        Some(Ordering::Greater)
    } else if a.is_point() && b.is_point() {
        Some(Ordering::Equal)
    } else {
        None
    }
}
