//! Fixtures shared by the benchmarks in `benches/`.

use fusionseq::QMatrix;

/// A dense nonnegative `n x n` integer matrix with irrational Perron root
/// for most `n`; entries cycle through `1..=5`.
pub fn patterned_matrix(n: usize) -> QMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 3 + i * j) % 5 + 1) as i64).collect())
        .collect();
    QMatrix::from_ints(&rows)
}

/// `patterned_matrix(n)` with one entry lowered, so its Perron root is
/// strictly smaller.
pub fn lowered(n: usize) -> QMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = ((i * 7 + j * 3 + i * j) % 5 + 1) as i64;
                    if x > 1 && i == n / 2 && j == n / 2 {
                        x - 1
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    QMatrix::from_ints(&rows)
}
