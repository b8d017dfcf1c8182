//! Dense matrices over the rationals and the exact linear algebra the
//! eigenvalue certification needs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::interval::{format_rational, rat_int, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(QMatrix { rows: r, cols: c, data })
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| rat_int(x)).collect())
            .collect();
        QMatrix::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self[(r, c)].is_negative() {
                    return Err(Error::NegativeEntry { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(Signed::is_positive)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        QMatrix::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(Rational::zero(), |acc, k| {
                let a = &self[(r, k)];
                if a.is_zero() {
                    acc
                } else {
                    acc + a * &other[(k, c)]
                }
            })
        })
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn submatrix(&self, idx: &[usize]) -> QMatrix {
        QMatrix::from_fn(idx.len(), idx.len(), |r, c| self[(idx[r], idx[c])].clone())
    }

    /// `shift * I - self`.
    pub fn shifted_negation(&self, shift: &Rational) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |r, c| {
            let d = if r == c { shift.clone() } else { Rational::zero() };
            d - &self[(r, c)]
        })
    }

    /// Strongly connected components of the support digraph (edge `c -> r`
    /// whenever entry `(r, c)` is nonzero), in reverse topological order.
    pub fn support_components(&self) -> Vec<Vec<usize>> {
        let n = self.rows;
        let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
        let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for r in 0..n {
            for c in 0..n {
                if !self[(r, c)].is_zero() {
                    g.add_edge(nodes[c], nodes[r], ());
                }
            }
        }
        tarjan_scc(&g)
            .into_iter()
            .map(|comp| {
                let mut v: Vec<usize> = comp.into_iter().map(|x| x.index()).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Solves `self * x = b` exactly; `None` when singular.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut rows = Vec::with_capacity(n);
        let mut rhs = Vec::with_capacity(n);
        for r in 0..n {
            // Clearing denominators equation by equation keeps the solution.
            let row = self.row(r).iter().chain(std::iter::once(&b[r]));
            let l = row.clone().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let mut ints: Vec<BigInt> = row.map(|x| x.numer() * (&l / x.denom())).collect();
            rhs.push(ints.pop().unwrap());
            rows.push(ints);
        }
        let (y, d) = bareiss_solve(rows, rhs)?;
        Some(y.into_iter().map(|yi| Rational::new(yi, d.clone())).collect())
    }

    /// `(L * self, L)` with `L` the least common denominator of the entries.
    pub(crate) fn to_integer_scaled(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let l = self.data.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.numer() * (&l / x.denom())).collect())
            .collect();
        (rows, l)
    }

    /// A basis of the right kernel, computed by exact row reduction.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].recip();
            for v in a[row][col..].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = a[row].clone();
            for (r, other) in a.iter_mut().enumerate() {
                if r == row || other[col].is_zero() {
                    continue;
                }
                let f = other[col].clone();
                for (x, p) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); n];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[r][f].clone();
                }
                v
            })
            .collect()
    }
}

/// Integer solution `a x = b` as `x = y / d`, by fraction-free (Bareiss)
/// elimination: entry sizes stay linear in `n` and no gcds are taken.
/// `d` is the determinant up to sign; `None` when singular.
pub(crate) fn bareiss_solve(mut a: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> Option<(Vec<BigInt>, BigInt)> {
    let n = a.len();
    for (row, x) in a.iter_mut().zip(b) {
        row.push(x);
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, pivot);
        let (top, rest) = a.split_at_mut(k + 1);
        let pk = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..=n {
                row[j] = (&row[j] * &pk[k] - &row[k] * &pk[j]) / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    // y_i = d x_i are Cramer numerators, so every division is exact.
    let d = prev;
    let mut y = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &d * &a[i][n];
        for j in i + 1..n {
            if !a[i][j].is_zero() {
                acc -= &a[i][j] * &y[j];
            }
        }
        y[i] = acc / &a[i][i];
    }
    Some((y, d))
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn solve_with_fractions_and_pivoting() {
        let a = QMatrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 2), rat(2, 3)],
            vec![rat(3, 4), rat(0, 1), rat(-1, 5)],
            vec![rat(1, 7), rat(5, 3), rat(1, 1)],
        ])
        .unwrap();
        let b = [rat(1, 1), rat(-2, 3), rat(4, 9)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b.to_vec());
    }

    #[test]
    fn solve_small_system() {
        let a = QMatrix::from_ints(&[[2, 1], [1, 3]]);
        let x = a.solve(&[rat(3, 1), rat(5, 1)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert!(QMatrix::from_ints(&[[1, 2], [2, 4]]).solve(&[rat(1, 1), rat(1, 1)]).is_none());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = QMatrix::from_ints(&[[1, 2, 3], [2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn components_of_block_triangular() {
        let a = QMatrix::from_ints(&[[1, 1, 0], [0, 1, 0], [0, 0, 0]]);
        let mut comps = a.support_components();
        comps.sort();
        assert_eq!(comps, vec![vec![0], vec![1], vec![2]]);
        let b = QMatrix::from_ints(&[[0, 1], [1, 0]]);
        assert_eq!(b.support_components(), vec![vec![0, 1]]);
    }
}
