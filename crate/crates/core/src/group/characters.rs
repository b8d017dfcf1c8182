//! Irreducible characters modulo a prime, via simultaneous eigenvectors of
//! the class matrices, and the fusion rules of `Rep(G)` derived from them.
//!
//! With `p ≡ 1 (mod exp G)` the field `F_p` contains every character value
//! and with `p > |G|^3` every integer we lift (dimensions, multiplicities)
//! is smaller than `p`, so it is determined by its residue.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{conjugacy_classes, ClassData, GroupTable};
use crate::error::{Error, Result};
use crate::ring::{FusionRing, Unit};

/// Characters and fusion rules of `Rep(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterFusion {
    pub prime: u64,
    pub classes: ClassData,
    pub dims: Vec<u64>,
    /// `chars[i][c]`: value of the `i`-th irreducible character on class
    /// `c`, reduced mod `prime`. Irreducible 0 is the trivial character.
    pub chars: Vec<Vec<u64>>,
    pub ring: FusionRing,
}

impl CharacterFusion {
    pub fn num_irreps(&self) -> usize {
        self.dims.len()
    }

    /// Value of `chi_i` at element `g`.
    pub fn value(&self, i: usize, g: usize) -> u64 {
        self.chars[i][self.classes.class_of[g]]
    }
}

/// Primes `p ≡ 1 (mod exp G)` with `p > |G|^3`, in increasing order.
pub fn admissible_primes(g: &GroupTable) -> impl Iterator<Item = u64> {
    let e = g.exponent() as u64;
    let n = g.order() as u64;
    let start = n.pow(3) / e + 1;
    (start..).map(move |m| m * e + 1).filter(|&p| is_prime(p))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

const MAX_PRIMES: usize = 5;
const COMBINATIONS_PER_PRIME: usize = 8;

/// Characters and fusion rules at the first admissible prime that splits
/// the class-matrix spectrum.
pub fn rep_g_fusion(g: &GroupTable) -> Result<CharacterFusion> {
    for p in admissible_primes(g).take(MAX_PRIMES) {
        match rep_g_fusion_at(g, p) {
            Err(Error::SpectrumSplit { .. }) => continue,
            other => return other,
        }
    }
    Err(Error::CharacterTable { attempts: MAX_PRIMES })
}

/// Same computation at a caller-chosen prime, which must be admissible
/// for `g` (`p ≡ 1 mod exp G`, `p > |G|^3`).
pub fn rep_g_fusion_at(g: &GroupTable, p: u64) -> Result<CharacterFusion> {
    let n = g.order() as u64;
    let e = g.exponent() as u64;
    if p % e != 1 % e || p <= n.pow(3) || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an admissible prime for this group")));
    }
    let f = Fp(p);
    let classes = conjugacy_classes(g);
    let k = classes.len();
    let cm = class_matrices(g, &classes);
    let id_class = classes.identity_class(g);

    let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x5eed);
    let mut omegas = None;
    for _ in 0..COMBINATIONS_PER_PRIME {
        let coeffs: Vec<u64> = (0..k).map(|_| rng.random_range(0..p)).collect();
        let mut a = vec![vec![0u64; k]; k];
        for (r, &c) in coeffs.iter().enumerate() {
            for s in 0..k {
                for t in 0..k {
                    a[s][t] = f.add(a[s][t], f.mul(c, cm[r][s][t]));
                }
            }
        }
        if let Some(vs) = split_spectrum(&f, &a, id_class, &mut rng) {
            omegas = Some(vs);
            break;
        }
    }
    let omegas = omegas.ok_or(Error::SpectrumSplit { prime: p })?;

    // omega_t = |C_t| chi(g_t) / chi(1); check it is a common eigenvector.
    for w in &omegas {
        for (r, m) in cm.iter().enumerate() {
            for s in 0..k {
                let lhs = (0..k).fold(0, |acc, t| f.add(acc, f.mul(m[s][t], w[t])));
                if lhs != f.mul(w[r], w[s]) {
                    return Err(Error::SpectrumSplit { prime: p });
                }
            }
        }
    }

    let sizes: Vec<u64> = (0..k).map(|c| classes.size(c) as u64).collect();
    let mut table: Vec<(u64, Vec<u64>)> = Vec::with_capacity(k);
    for w in &omegas {
        let s = (0..k).fold(0, |acc, t| {
            f.add(acc, f.mul(f.mul(w[t], w[classes.inverse_class[t]]), f.inv(sizes[t])))
        });
        let d2 = f.mul(n % p, f.inv(s));
        let d = (1..=n).take_while(|d| d * d <= n).find(|d| d * d % p == d2).ok_or(Error::CharacterTable { attempts: 1 })?;
        let chi = (0..k).map(|t| f.mul(f.mul(w[t], d), f.inv(sizes[t]))).collect();
        table.push((d, chi));
    }
    if table.iter().map(|(d, _)| d * d).sum::<u64>() != n {
        return Err(Error::CharacterTable { attempts: 1 });
    }
    // Trivial character first, then by dimension and residues.
    table.sort_by(|(da, ca), (db, cb)| {
        let ta = ca.iter().all(|&x| x == 1);
        let tb = cb.iter().all(|&x| x == 1);
        tb.cmp(&ta).then(da.cmp(db)).then_with(|| ca.cmp(cb))
    });
    let (dims, chars): (Vec<u64>, Vec<Vec<u64>>) = table.into_iter().unzip();

    let m = dims.len();
    let dual: Vec<usize> = (0..m)
        .map(|i| {
            let conj: Vec<u64> = (0..k).map(|t| chars[i][classes.inverse_class[t]]).collect();
            chars.iter().position(|c| *c == conj).ok_or(Error::CharacterTable { attempts: 1 })
        })
        .collect::<Result<_>>()?;
    let inv_n = f.inv(n % p);
    let mut products = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut e = Vec::new();
            for (l, &dl) in dims.iter().enumerate() {
                let sum = (0..k).fold(0, |acc, t| {
                    let v = f.mul(f.mul(chars[i][t], chars[j][t]), chars[l][classes.inverse_class[t]]);
                    f.add(acc, f.mul(sizes[t], v))
                });
                let c = f.mul(sum, inv_n);
                if c > dims[i] * dims[j] / dl {
                    return Err(Error::CharacterTable { attempts: 1 });
                }
                if c != 0 {
                    e.push((l, BigUint::from(c)));
                }
            }
            products.push(e);
        }
    }
    let labels = (0..m)
        .map(|i| if i == 0 { "1".to_string() } else { format!("χ{i}") })
        .collect();
    let ring = FusionRing::from_products(Unit::Simple(0), dual, products)?.with_labels(labels)?;
    Ok(CharacterFusion {
        prime: p,
        classes,
        dims,
        chars,
        ring,
    })
}

/// `cm[r][s][t]`: number of `x` in class `r` with `x^{-1} g_t` in class
/// `s`, i.e. the coefficient of `C_t` in `C_r C_s`.
fn class_matrices(g: &GroupTable, classes: &ClassData) -> Vec<Vec<Vec<u64>>> {
    let k = classes.len();
    let mut cm = vec![vec![vec![0u64; k]; k]; k];
    for (r, cls) in classes.classes.iter().enumerate() {
        for t in 0..k {
            let gt = classes.classes[t][0];
            for &x in cls {
                let s = classes.class_of[g.mul(g.inv(x), gt)];
                cm[r][s][t] += 1;
            }
        }
    }
    cm
}

/// Eigenvectors of `a`, normalized at coordinate `pin`, when `a` has `k`
/// distinct eigenvalues in `F_p`.
fn split_spectrum(f: &Fp, a: &[Vec<u64>], pin: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<u64>>> {
    let k = a.len();
    let poly = char_poly(f, a);
    let roots = f.roots(&poly, rng)?;
    if roots.len() != k {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    for lam in roots {
        let shifted: Vec<Vec<u64>> = (0..k)
            .map(|s| (0..k).map(|t| if s == t { f.sub(a[s][t], lam) } else { a[s][t] }).collect())
            .collect();
        let ns = f.nullspace(&shifted);
        if ns.len() != 1 || ns[0][pin] == 0 {
            return None;
        }
        let scale = f.inv(ns[0][pin]);
        out.push(ns[0].iter().map(|&x| f.mul(x, scale)).collect());
    }
    Some(out)
}

/// `det(xI - A)` by evaluation at `0..=k` and Lagrange interpolation.
fn char_poly(f: &Fp, a: &[Vec<u64>]) -> Vec<u64> {
    let k = a.len();
    let xs: Vec<u64> = (0..=k as u64).collect();
    let ys: Vec<u64> = xs
        .iter()
        .map(|&x| {
            let m: Vec<Vec<u64>> = (0..k)
                .map(|s| (0..k).map(|t| f.sub(if s == t { x } else { 0 }, a[s][t])).collect())
                .collect();
            f.det(m)
        })
        .collect();
    let mut poly = vec![0u64; k + 1];
    for (i, (&xi, &yi)) in xs.iter().zip(&ys).enumerate() {
        let mut basis = vec![1u64];
        let mut denom = 1u64;
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                basis = f.poly_mul(&basis, &[f.neg(xj), 1]);
                denom = f.mul(denom, f.sub(xi, xj));
            }
        }
        let c = f.mul(yi, f.inv(denom));
        for (pc, bc) in poly.iter_mut().zip(&basis) {
            *pc = f.add(*pc, f.mul(c, *bc));
        }
    }
    poly
}

/// Arithmetic in `F_p` and `F_p[x]` (coefficients low degree first).
#[derive(Clone, Copy)]
struct Fp(u64);

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b % self.0) % self.0
    }

    fn neg(self, a: u64) -> u64 {
        self.sub(0, a)
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.0;
        a %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        assert!(a % self.0 != 0, "inverse of zero");
        self.pow(a, self.0 - 2)
    }

    fn det(self, mut m: Vec<Vec<u64>>) -> u64 {
        let k = m.len();
        let mut det = 1;
        for c in 0..k {
            let Some(piv) = (c..k).find(|&r| m[r][c] != 0) else {
                return 0;
            };
            if piv != c {
                m.swap(piv, c);
                det = self.neg(det);
            }
            det = self.mul(det, m[c][c]);
            let inv = self.inv(m[c][c]);
            for r in c + 1..k {
                if m[r][c] != 0 {
                    let factor = self.mul(m[r][c], inv);
                    for cc in c..k {
                        let v = self.mul(factor, m[c][cc]);
                        m[r][cc] = self.sub(m[r][cc], v);
                    }
                }
            }
        }
        det
    }

    fn nullspace(self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut m = a.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(piv, r);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let factor = m[i][c];
                    for cc in 0..cols {
                        let v = self.mul(factor, m[r][cc]);
                        m[i][cc] = self.sub(m[i][cc], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0; cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(m[i][free]);
                }
                v
            })
            .collect()
    }

    fn trim(mut p: Vec<u64>) -> Vec<u64> {
        while p.len() > 1 && *p.last().expect("nonempty") == 0 {
            p.pop();
        }
        p
    }

    fn degree(p: &[u64]) -> usize {
        Self::trim(p.to_vec()).len() - 1
    }

    fn is_zero_poly(p: &[u64]) -> bool {
        p.iter().all(|&c| c == 0)
    }

    fn poly_mul(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Self::trim(out)
    }

    fn poly_rem(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let b = Self::trim(b.to_vec());
        let db = b.len() - 1;
        if db == 0 {
            return vec![0];
        }
        let lead_inv = self.inv(b[db]);
        let mut r = Self::trim(a.to_vec());
        while r.len() > db && !Self::is_zero_poly(&r) {
            let shift = r.len() - 1 - db;
            let c = self.mul(r[r.len() - 1], lead_inv);
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, bc));
            }
            r.pop();
            if r.is_empty() {
                r.push(0);
            }
            r = Self::trim(r);
        }
        r
    }

    fn poly_div(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let b = Self::trim(b.to_vec());
        let db = b.len() - 1;
        let lead_inv = self.inv(b[db]);
        let mut r = Self::trim(a.to_vec());
        if r.len() <= db {
            return vec![0];
        }
        let mut q = vec![0; r.len() - db];
        for shift in (0..q.len()).rev() {
            let c = self.mul(r[shift + db], lead_inv);
            q[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, bc));
            }
        }
        Self::trim(q)
    }

    fn monic(self, p: Vec<u64>) -> Vec<u64> {
        let p = Self::trim(p);
        let inv = self.inv(*p.last().expect("nonzero"));
        p.into_iter().map(|c| self.mul(c, inv)).collect()
    }

    fn gcd(self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (Self::trim(a.to_vec()), Self::trim(b.to_vec()));
        while !Self::is_zero_poly(&b) {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(a)
    }

    fn pow_mod(self, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
        let mut r = vec![1];
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.poly_rem(&self.poly_mul(&r, &b), m);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), m);
            e >>= 1;
        }
        r
    }

    /// Distinct roots in `F_p` by Cantor-Zassenhaus; `None` if the
    /// polynomial has a repeated root or an irreducible factor of degree > 1.
    fn roots(self, poly: &[u64], rng: &mut ChaCha8Rng) -> Option<Vec<u64>> {
        let f = self.monic(poly.to_vec());
        let deg = Self::degree(&f);
        let xp = self.pow_mod(&[0, 1], self.0, &f);
        let mut xp_minus_x = xp;
        xp_minus_x.resize(xp_minus_x.len().max(2), 0);
        xp_minus_x[1] = self.sub(xp_minus_x[1], 1);
        let linear = self.gcd(&f, &xp_minus_x);
        if Self::degree(&linear) != deg {
            return None;
        }
        let mut roots = Vec::with_capacity(deg);
        let mut stack = vec![linear];
        while let Some(g) = stack.pop() {
            match Self::degree(&g) {
                0 => {}
                1 => roots.push(self.neg(g[0])),
                _ => loop {
                    let a = rng.random_range(0..self.0);
                    let mut h = self.pow_mod(&[a, 1], (self.0 - 1) / 2, &g);
                    h[0] = self.sub(h[0], 1);
                    if Self::is_zero_poly(&h) {
                        continue;
                    }
                    let d = self.gcd(&g, &h);
                    let dd = Self::degree(&d);
                    if dd > 0 && dd < Self::degree(&g) {
                        let rest = self.poly_div(&g, &d);
                        stack.push(d);
                        stack.push(rest);
                        break;
                    }
                },
            }
        }
        roots.sort_unstable();
        Some(roots)
    }
}
