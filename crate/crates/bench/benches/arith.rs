use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use wdparam::Poly;
use wdparam_bench::{ctx, dense};

fn field_ops(c: &mut Criterion) {
    let mut g = c.benchmark_group("field");
    for m in [1u64, 5, 12] {
        let k = ctx(m, 3);
        let a = dense(&k, 1);
        let b = dense(&k, 2);
        g.bench_with_input(BenchmarkId::new("mul", m), &m, |bench, _| bench.iter(|| black_box(&a * &b)));
        g.bench_with_input(BenchmarkId::new("inv", m), &m, |bench, _| bench.iter(|| black_box(a.inv().unwrap())));
    }
    g.finish();
}

fn poly_gcd(c: &mut Criterion) {
    let k = ctx(5, 2);
    let roots: Vec<_> = (0..6).map(|i| dense(&k, i)).collect();
    let prod = |rs: &[wdparam::FieldElem]| {
        rs.iter()
            .fold(Poly::one(&k), |acc, r| acc.mul(&Poly::one_minus(r, 1)))
    };
    let a = prod(&roots[..4]);
    let b = prod(&roots[2..]);
    c.bench_function("poly_gcd_deg4", |bench| bench.iter(|| black_box(a.gcd(&b))));
}

criterion_group!(benches, field_ops, poly_gcd);
criterion_main!(benches);
