use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{basis_left_mult, FusionRing};
use crate::error::{Error, Result};
use crate::interval::{rat, rat_from_uint, Interval, Rational};
use crate::matrix::QMatrix;
use crate::perron::{perron_eigen, positive_kernel_vector, PerronOptions, PerronResult};

/// `FPdim(X_i)`: the Perron root of left multiplication by `X_i`.
pub fn fpdim_object(ring: &FusionRing, i: usize, opts: &PerronOptions) -> Result<PerronResult> {
    if i >= ring.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            size: ring.rank(),
        });
    }
    perron_eigen(&basis_left_mult(ring, i), opts)
}

/// All object dimensions.
///
/// Tries a shared certificate first: a floating-point estimate of the
/// Perron vector of `sum_i L_i` is rounded to integers `w`, and if
/// `L_i w = mu_i w` holds exactly for every `i` then each `mu_i` is the
/// Perron root of `L_i` (a positive eigenvector of a nonnegative matrix
/// belongs to its spectral radius). Otherwise every object is certified
/// separately.
pub fn fpdims(ring: &FusionRing, opts: &PerronOptions) -> Result<Vec<PerronResult>> {
    if let Some(out) = shared_integer_dims(ring) {
        return Ok(out);
    }
    let r = ring.rank();
    (0..r).map(|i| perron_eigen(&basis_left_mult(ring, i), opts)).collect()
}

fn float_perron_vector(ring: &FusionRing) -> Option<Vec<f64>> {
    let r = ring.rank();
    let mut sum = vec![vec![0f64; r]; r];
    for i in 0..r {
        for j in 0..r {
            for (k, c) in ring.product(i, j) {
                sum[*k][j] += c.to_f64()?;
            }
        }
    }
    let mut v = vec![1f64; r];
    for _ in 0..500 {
        let mut w: Vec<f64> = sum.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        let norm = w.iter().cloned().fold(0f64, f64::max);
        if !(norm.is_finite() && norm > 0.0) {
            return None;
        }
        w.iter_mut().for_each(|x| *x /= norm);
        let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0f64, f64::max);
        v = w;
        if delta < 1e-14 {
            break;
        }
    }
    Some(v)
}

fn shared_integer_dims(ring: &FusionRing) -> Option<Vec<PerronResult>> {
    let v = float_perron_vector(ring)?;
    let smallest = v.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smallest > 0.0) {
        return None;
    }
    let scaled: Vec<f64> = v.iter().map(|x| x / smallest).collect();
    if scaled.iter().any(|x| (x - x.round()).abs() > 1e-6 || x.round() > 1e12) {
        return None;
    }
    let w: Vec<BigInt> = scaled.iter().map(|x| BigInt::from(x.round() as u64)).collect();
    let r = ring.rank();
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let mut lw = vec![BigInt::zero(); r];
        for (j, wj) in w.iter().enumerate() {
            for (k, c) in ring.product(i, j) {
                lw[*k] += wj * BigInt::from(c.clone());
            }
        }
        // mu_i = (L_i w)_0 / w_0 must be an integer multiple of w throughout.
        let mu = Rational::new(lw[0].clone(), w[0].clone());
        if !mu.is_integer() || lw.iter().zip(&w).any(|(a, b)| Rational::from_integer(a.clone()) != &mu * b) {
            return None;
        }
        let eigvec = w.iter().map(|x| Rational::new(x.clone(), w[0].clone())).collect();
        out.push(PerronResult {
            lo: mu.clone(),
            hi: mu.clone(),
            eigvec,
            exact_integer: Some(mu.to_integer()),
        });
    }
    Some(out)
}

fn category_interval(ring: &FusionRing, dims: &[PerronResult]) -> Interval {
    let d: Vec<Interval> = dims.iter().map(PerronResult::interval).collect();
    match ring.cartan() {
        None => d.iter().map(|x| x * x).sum(),
        Some(c) => {
            let mut total = Interval::zero();
            for (i, row) in c.iter().enumerate() {
                for (j, cij) in row.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    total = &total + &(&d[i] * &d[j]).scale(&rat_from_uint(cij));
                }
            }
            total
        }
    }
}

/// With `T_i` the transpose of `L_i`, the dimension vector satisfies
/// `T_i d = d_i d` (this is `d_i d_j = sum_k N_ij^k d_k`), so the integer
/// matrix `G = sum_{i,j} C_ij T_i T_j` has the positive eigenvector `d`
/// with eigenvalue `d^T C d = FPdim(A)`, which is therefore its Perron
/// root. Integer detection on `G` certifies `FPdim(A)` even when the
/// object dimensions are irrational. Needs a simple unit.
fn integer_gram_dimension(ring: &FusionRing, estimate: &Interval, approx: &[Rational]) -> Option<BigInt> {
    let candidate = estimate.midpoint().round().to_integer();
    if ring.is_multifusion() || !estimate.contains(&Rational::from_integer(candidate.clone())) {
        return None;
    }
    let r = ring.rank();
    let t: Vec<QMatrix> = (0..r).map(|i| basis_left_mult(ring, i).transpose()).collect();
    let gram = (0..r)
        .map(|i| {
            let weighted = match ring.cartan() {
                None => t[i].clone(),
                Some(c) => (0..r)
                    .filter(|&j| !c[i][j].is_zero())
                    .map(|j| t[j].scale(&rat_from_uint(&c[i][j])))
                    .reduce(|a, b| a.add(&b))
                    .unwrap_or_else(|| QMatrix::zeros(r, r)),
            };
            t[i].mul(&weighted)
        })
        .reduce(|a, b| a.add(&b));
    let gram = gram?;
    if positive_kernel_vector(&gram, &candidate).is_some() {
        return Some(candidate);
    }
    // Degenerate eigenspace: the kernel vector that agrees with the
    // approximate `d` on the free coordinates is close to `d`, hence
    // positive once `d` is known well enough.
    let basis = gram.shifted_negation(&Rational::from_integer(candidate.clone())).nullspace();
    let mut v = vec![Rational::zero(); r];
    for (n, b) in basis.iter().enumerate() {
        let free = (0..r).find(|&f| b[f] == rat(1, 1) && basis.iter().enumerate().all(|(m, o)| m == n || o[f].is_zero()))?;
        for (x, y) in v.iter_mut().zip(b) {
            *x += &approx[free] * y;
        }
    }
    (!basis.is_empty() && v.iter().all(Signed::is_positive)).then_some(candidate)
}

/// `FPdim(A) = d^T C d` with `C` the Cartan matrix (identity when absent).
///
/// The returned `eigvec` is the object-dimension vector. Object dimensions
/// are re-certified at a finer tolerance until the category bracket is no
/// wider than `opts.tol`.
pub fn fpdim_category(ring: &FusionRing, opts: &PerronOptions) -> Result<PerronResult> {
    let mut local = opts.clone();
    let mut gram = None;
    for round in 0..8 {
        let dims = fpdims(ring, &local)?;
        let total = category_interval(ring, &dims);
        if round == 0 && !total.is_point() {
            let approx: Vec<Rational> = dims.iter().map(|d| d.lo.clone()).collect();
            gram = integer_gram_dimension(ring, &total, &approx);
        }
        if let Some(n) = gram.as_ref().filter(|n| total.contains(&Rational::from_integer((*n).clone()))) {
            let q = Rational::from_integer(n.clone());
            return Ok(PerronResult {
                lo: q.clone(),
                hi: q,
                eigvec: dims.iter().map(|d| d.lo.clone()).collect(),
                exact_integer: Some(n.clone()),
            });
        }
        if total.width() <= opts.tol {
            let eigvec = dims.iter().map(|d| d.lo.clone()).collect();
            let exact_integer = match total.exact() {
                Some(x) if x.is_integer() => Some(x.to_integer()),
                _ => None,
            };
            return Ok(PerronResult {
                lo: total.lo().clone(),
                hi: total.hi().clone(),
                eigvec,
                exact_integer,
            });
        }
        let shrink = (total.width() / &opts.tol).ceil() * rat(4, 1);
        local.tol = &local.tol / shrink;
    }
    Err(Error::NoConvergence { iterations: 8 })
}

/// Coefficients of `R_A = sum_i FPdim(X_i) P_i` in the simple basis:
/// `sum_i d_i C[i][j]`.
pub fn regular_object(ring: &FusionRing, opts: &PerronOptions) -> Result<Vec<Interval>> {
    let dims = fpdims(ring, opts)?;
    let d: Vec<Interval> = dims.iter().map(PerronResult::interval).collect();
    Ok(match ring.cartan() {
        None => d,
        Some(c) => (0..ring.rank())
            .map(|j| {
                (0..ring.rank())
                    .filter(|&i| !c[i][j].is_zero())
                    .map(|i| d[i].scale(&rat_from_uint(&c[i][j])))
                    .sum()
            })
            .collect(),
    })
}
