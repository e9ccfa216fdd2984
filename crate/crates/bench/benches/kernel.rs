use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use wkernel_bench::{hat_pair, reversed_word, sl2_context, weyl};

fn normal_order(c: &mut Criterion) {
    let w3 = weyl(3);
    let word = reversed_word(&w3, 3);
    c.bench_function("normal_order W3 reversed word", |b| b.iter(|| w3.normal_order(black_box(&word)).unwrap()));
}

fn consistency(c: &mut Criterion) {
    let w2 = weyl(2);
    c.bench_function("check_consistency W2 degree 4", |b| b.iter(|| w2.check_consistency(black_box(4)).unwrap()));
}

fn hat_product(c: &mut Criterion) {
    let ctx = sl2_context();
    let (x, y) = hat_pair(&ctx, 1);
    c.bench_function("hat product U(sl2)", |b| b.iter(|| ctx.multiply(black_box(&x), black_box(&y)).unwrap()));
}

fn whittaker(c: &mut Criterion) {
    let mut g = c.benchmark_group("whittaker");
    g.sample_size(10);
    g.bench_function("derive sl3", |b| b.iter(|| wkernel::whittaker::derive_walgebra(black_box("sl3"), 4).unwrap()));
    g.finish();
}

criterion_group!(benches, normal_order, consistency, hat_product, whittaker);
criterion_main!(benches);
