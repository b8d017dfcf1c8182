//! Reference computations that share no code with the library: explicit
//! matrix representations over the Gaussian integers, brute-force tensor
//! decompositions, and closed-form eigenvalue checks.
#![allow(dead_code)]

use std::collections::HashSet;

pub type Gauss = (i64, i64);
pub type Mat = Vec<Vec<Gauss>>;

fn gmul(a: Gauss, b: Gauss) -> Gauss {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn gadd(a: Gauss, b: Gauss) -> Gauss {
    (a.0 + b.0, a.1 + b.1)
}

pub fn real(rows: &[&[i64]]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| (x, 0)).collect()).collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| ((i == j) as i64, 0)).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold((0, 0), |acc, t| gadd(acc, gmul(a[i][t], b[t][j]))))
                .collect()
        })
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (p, q) = (a.len(), b.len());
    (0..p * q)
        .map(|r| (0..p * q).map(|c| gmul(a[r / q][c / q], b[r % q][c % q])).collect())
        .collect()
}

pub fn trace(a: &Mat) -> Gauss {
    (0..a.len()).fold((0, 0), |acc, i| gadd(acc, a[i][i]))
}

/// An irreducible representation given by the images of the generators.
pub struct Irrep {
    pub dim: usize,
    pub gens: Vec<Mat>,
}

/// Images of every group element under every irrep, with elements numbered
/// as in `table`: `images[r][g]`.
pub struct Represented {
    pub images: Vec<Vec<Mat>>,
}

/// Searches for generators in the multiplication table on which the
/// prescribed matrices extend to homomorphisms, jointly faithful.
pub fn represent(table: &[Vec<usize>], irreps: &[Irrep]) -> Option<Represented> {
    let n = table.len();
    let e = (0..n).find(|&x| (0..n).all(|y| table[x][y] == y))?;
    let k = irreps[0].gens.len();
    let mut choice = vec![0usize; k];
    loop {
        if let Some(r) = try_generators(table, e, irreps, &choice) {
            return Some(r);
        }
        let mut t = 0;
        loop {
            if t == k {
                return None;
            }
            choice[t] += 1;
            if choice[t] < n {
                break;
            }
            choice[t] = 0;
            t += 1;
        }
    }
}

fn try_generators(table: &[Vec<usize>], e: usize, irreps: &[Irrep], gens: &[usize]) -> Option<Represented> {
    let n = table.len();
    let mut images: Vec<Option<Vec<Mat>>> = vec![None; n];
    images[e] = Some(irreps.iter().map(|r| identity(r.dim)).collect());
    let mut queue = vec![e];
    while let Some(x) = queue.pop() {
        for (t, &a) in gens.iter().enumerate() {
            let y = table[x][a];
            let img: Vec<Mat> = irreps
                .iter()
                .zip(images[x].as_ref().unwrap())
                .map(|(r, m)| mat_mul(m, &r.gens[t]))
                .collect();
            match &images[y] {
                Some(old) if *old != img => return None,
                Some(_) => {}
                None => {
                    images[y] = Some(img);
                    queue.push(y);
                }
            }
        }
    }
    let images: Vec<Vec<Mat>> = images.into_iter().collect::<Option<_>>()?;
    let distinct: HashSet<&Vec<Mat>> = images.iter().collect();
    if distinct.len() != n {
        return None;
    }
    for x in 0..n {
        for y in 0..n {
            for r in 0..irreps.len() {
                if mat_mul(&images[x][r], &images[y][r]) != images[table[x][y]][r] {
                    return None;
                }
            }
        }
    }
    let per_irrep = (0..irreps.len()).map(|r| images.iter().map(|im| im[r].clone()).collect()).collect();
    Some(Represented { images: per_irrep })
}

impl Represented {
    pub fn order(&self) -> usize {
        self.images[0].len()
    }

    pub fn character(&self, r: usize) -> Vec<Gauss> {
        self.images[r].iter().map(trace).collect()
    }

    /// `<chi, chi>`: equals 1 exactly for irreducible representations.
    pub fn norm(&self, r: usize) -> (i64, i64) {
        let chi = self.character(r);
        let s: i64 = chi.iter().map(|c| c.0 * c.0 + c.1 * c.1).sum();
        (s, self.order() as i64)
    }

    /// `N[i][j][k] = dim Hom(rho_k, rho_i ⊗ rho_j)`, from the traces of the
    /// explicit Kronecker products.
    pub fn tensor_multiplicities(&self) -> Vec<Vec<Vec<i64>>> {
        let m = self.images.len();
        let g = self.order() as i64;
        let chars: Vec<Vec<Gauss>> = (0..m).map(|r| self.character(r)).collect();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let prod: Vec<Gauss> = (0..self.order())
                            .map(|x| trace(&kron(&self.images[i][x], &self.images[j][x])))
                            .collect();
                        (0..m)
                            .map(|k| {
                                let s = (0..self.order()).fold((0, 0), |acc, x| {
                                    let c = chars[k][x];
                                    gadd(acc, gmul((c.0, -c.1), prod[x]))
                                });
                                assert_eq!(s.1, 0, "imaginary multiplicity");
                                assert_eq!(s.0 % g, 0, "fractional multiplicity");
                                s.0 / g
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

/// `1`, sign and the two-dimensional representation of `S3`, on a
/// 3-cycle and a transposition.
pub fn s3_irreps() -> Vec<Irrep> {
    vec![
        Irrep { dim: 1, gens: vec![real(&[&[1]]), real(&[&[1]])] },
        Irrep { dim: 1, gens: vec![real(&[&[1]]), real(&[&[-1]])] },
        Irrep {
            dim: 2,
            gens: vec![real(&[&[0, -1], &[1, -1]]), real(&[&[0, 1], &[1, 0]])],
        },
    ]
}

/// The four characters of `Q8 / {±1}` and the two-dimensional
/// representation `i -> diag(i, -i)`, `j -> [[0, 1], [-1, 0]]`.
pub fn q8_irreps() -> Vec<Irrep> {
    let mut out: Vec<Irrep> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .iter()
        .map(|&(a, b)| Irrep { dim: 1, gens: vec![real(&[&[a]]), real(&[&[b]])] })
        .collect();
    out.push(Irrep {
        dim: 2,
        gens: vec![
            vec![vec![(0, 1), (0, 0)], vec![(0, 0), (0, -1)]],
            real(&[&[0, 1], &[-1, 0]]),
        ],
    });
    out
}

/// Perron root of a nonnegative 2x2 matrix is the larger root of
/// `x^2 - t x + d`; returns whether `[lo, hi]` encloses it, by exact sign
/// evaluation.
pub fn brackets_2x2_root(m: [[i64; 2]; 2], lo: &num_rational::BigRational, hi: &num_rational::BigRational) -> bool {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let t = q(m[0][0] + m[1][1]);
    let d = q(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    let p = |x: &BigRational| x * x - &t * x + &d;
    let half = &t / q(2);
    // Above the vertex the polynomial is increasing, so the larger root
    // lies in [lo, hi] iff p(hi) >= 0 and (lo <= t/2 or p(lo) <= 0).
    let hi_ok = *hi >= half && p(hi) >= q(0);
    let lo_ok = *lo <= half || p(lo) <= q(0);
    hi_ok && lo_ok
}
