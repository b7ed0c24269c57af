use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use primegraph::theorems::{count_bound_pipeline, Caps};
use primegraph::{gk, spectrum_bruteforce, GroupDescriptor};
use primegraph_bench::ENUMERATION_CASES;

const CAP: usize = 1_000_000;

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for &d in ENUMERATION_CASES {
        let descriptor: GroupDescriptor = d.parse().unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(d),
            &descriptor,
            |b, descriptor| b.iter(|| descriptor.build(CAP).unwrap().order()),
        );
    }
    group.finish();
}

fn prime_graph(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum+gk");
    for &d in ENUMERATION_CASES {
        let g = d.parse::<GroupDescriptor>().unwrap().build(CAP).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(d), &g, |b, g| {
            b.iter(|| gk(&spectrum_bruteforce(g)).unwrap())
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    c.bench_function("count_bound 2,3,5,7", |b| {
        b.iter(|| {
            count_bound_pipeline(&[2, 3, 5, 7], Caps::default())
                .unwrap()
                .total_count
        })
    });
}

criterion_group!(benches, enumerate, prime_graph, census);
criterion_main!(benches);
