use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fusionseq::library::bundled_ring;
use fusionseq::ring::fpdim_category;
use fusionseq::{perron_compare, perron_eigen, PerronOptions};
use fusionseq_bench::{lowered, patterned_matrix};

fn eigen(c: &mut Criterion) {
    let opts = PerronOptions::default();
    let mut g = c.benchmark_group("perron_eigen");
    for n in [2, 8, 16, 32] {
        let m = patterned_matrix(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| perron_eigen(m, &opts).unwrap())
        });
    }
    g.finish();
}

fn compare(c: &mut Criterion) {
    let opts = PerronOptions::default();
    let mut g = c.benchmark_group("perron_compare");
    for n in [4, 16] {
        let (a, b) = (patterned_matrix(n), lowered(n));
        g.bench_function(BenchmarkId::from_parameter(n), |bch| {
            bch.iter(|| perron_compare(&a, &b, &opts).unwrap())
        });
    }
    g.finish();
}

fn category(c: &mut Criterion) {
    let opts = PerronOptions::default();
    let mut g = c.benchmark_group("fpdim_category");
    for name in ["vecs3", "repq8", "fib", "ising"] {
        let r = bundled_ring(name).unwrap();
        g.bench_function(name, |b| b.iter(|| fpdim_category(&r, &opts).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, eigen, compare, category);
criterion_main!(benches);
