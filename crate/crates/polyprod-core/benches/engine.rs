use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyprod_core::engine;
use polyprod_core::exactlinalg::CoefficientRing;
use polyprod_core::kalgebra::ProductFlavor;
use polyprod_core::koszul_oracle::koszul_ring;
use polyprod_core::pairs::disk_sphere;
use polyprod_core::par::Parallelism;
use polyprod_core::simplicial::{rp2, SimplicialComplex};

fn modes() -> [(&'static str, Parallelism); 2] {
    [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)]
}

fn ring_benchmark(c: &mut Criterion) {
    let d2 = [disk_sphere(2).unwrap()];
    let mut group = c.benchmark_group("ring");
    group.sample_size(20);
    for (name, k) in [("hexagon", SimplicialComplex::polygon(6)), ("octagon", SimplicialComplex::polygon(8)), ("rp2", rp2())] {
        for (mode, par) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, name), &k, |b, k| {
                b.iter(|| engine::ring(k, &d2, Some(ProductFlavor::Universal), CoefficientRing::Integers, par).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle_benchmark(c: &mut Criterion) {
    let mut group = c.benchmark_group("koszul_ring");
    group.sample_size(20);
    let k = SimplicialComplex::polygon(7);
    for (mode, par) in modes() {
        group.bench_function(BenchmarkId::new(mode, "heptagon"), |b| {
            b.iter(|| koszul_ring(&k, CoefficientRing::Integers, par).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, ring_benchmark, oracle_benchmark);
criterion_main!(benches);
