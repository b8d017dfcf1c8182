//! Bundled groups: every group of order at most 16 up to isomorphism, plus
//! `S4`.

use super::{alternating, cyclic, dihedral, quaternion, semidirect_cyclic, symmetric, GroupTable};

pub struct CatalogEntry {
    pub name: &'static str,
    pub build: fn() -> GroupTable,
}

fn z2() -> GroupTable {
    cyclic(2)
}

fn product(factors: &[usize]) -> GroupTable {
    factors.iter().skip(1).fold(cyclic(factors[0]), |g, &n| g.direct_product(&cyclic(n)))
}

/// `(Z4 × Z2) ⋊ Z2` with `c a c = a b`, `c b c = b`. Element `a^i b^j c^k`
/// has index `4 i + 2 j + k`.
fn g16_3() -> GroupTable {
    GroupTable::from_fn(16, |x, y| {
        let (i, j, k) = (x / 4, x / 2 % 2, x % 2);
        let (i2, j2, k2) = (y / 4, y / 2 % 2, y % 2);
        // c^k (a^i2 b^j2) c^-k = a^i2 b^(j2 + k i2)
        let j2 = (j2 + k * i2) % 2;
        ((i + i2) % 4) * 4 + ((j + j2) % 2) * 2 + (k + k2) % 2
    })
    .expect("group of order 16")
}

/// The Pauli group generated by `X`, `Y`, `Z` over the Gaussian integers.
fn pauli() -> GroupTable {
    type M = [[(i8, i8); 2]; 2];
    let mul = |a: &M, b: &M| -> M {
        let mut out = [[(0i8, 0i8); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                let (mut re, mut im) = (0, 0);
                for k in 0..2 {
                    let (x, y) = a[r][k];
                    let (u, v) = b[k][c];
                    re += x * u - y * v;
                    im += x * v + y * u;
                }
                out[r][c] = (re, im);
            }
        }
        out
    };
    let x: M = [[(0, 0), (1, 0)], [(1, 0), (0, 0)]];
    let y: M = [[(0, 0), (0, -1)], [(0, 1), (0, 0)]];
    let z: M = [[(1, 0), (0, 0)], [(0, 0), (-1, 0)]];
    let id: M = [[(1, 0), (0, 0)], [(0, 0), (1, 0)]];
    GroupTable::generate(&[x, y, z], id, mul)
}

macro_rules! entry {
    ($name:literal, $body:expr) => {
        CatalogEntry {
            name: $name,
            build: || $body,
        }
    };
}

/// All bundled groups, smallest order first.
pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        entry!("z1", cyclic(1)),
        entry!("z2", cyclic(2)),
        entry!("z3", cyclic(3)),
        entry!("z4", cyclic(4)),
        entry!("z2xz2", product(&[2, 2])),
        entry!("z5", cyclic(5)),
        entry!("z6", cyclic(6)),
        entry!("s3", dihedral(3)),
        entry!("z7", cyclic(7)),
        entry!("z8", cyclic(8)),
        entry!("z4xz2", product(&[4, 2])),
        entry!("z2xz2xz2", product(&[2, 2, 2])),
        entry!("d4", dihedral(4)),
        entry!("q8", quaternion(2)),
        entry!("z9", cyclic(9)),
        entry!("z3xz3", product(&[3, 3])),
        entry!("z10", cyclic(10)),
        entry!("d5", dihedral(5)),
        entry!("z11", cyclic(11)),
        entry!("z12", cyclic(12)),
        entry!("z6xz2", product(&[6, 2])),
        entry!("d6", dihedral(6)),
        entry!("a4", alternating(4)),
        entry!("dic3", quaternion(3)),
        entry!("z13", cyclic(13)),
        entry!("z14", cyclic(14)),
        entry!("d7", dihedral(7)),
        entry!("z15", cyclic(15)),
        entry!("z16", cyclic(16)),
        entry!("z4xz4", product(&[4, 4])),
        entry!("g16_3", g16_3()),
        entry!("z4sdz4", semidirect_cyclic(4, 4, 3).expect("3^4 = 1 mod 4")),
        entry!("z8xz2", product(&[8, 2])),
        entry!("m16", semidirect_cyclic(8, 2, 5).expect("5^2 = 1 mod 8")),
        entry!("d8", dihedral(8)),
        entry!("sd16", semidirect_cyclic(8, 2, 3).expect("3^2 = 1 mod 8")),
        entry!("q16", quaternion(4)),
        entry!("z4xz2xz2", product(&[4, 2, 2])),
        entry!("d4xz2", dihedral(4).direct_product(&z2())),
        entry!("q8xz2", quaternion(2).direct_product(&z2())),
        entry!("pauli", pauli()),
        entry!("z2xz2xz2xz2", product(&[2, 2, 2, 2])),
        entry!("s4", symmetric(4)),
    ]
}

pub fn catalog_group(name: &str) -> Option<GroupTable> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| (e.build)().with_name(e.name))
}
