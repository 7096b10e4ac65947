use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion, Throughput};
use mqms_core::{gen_input, sort, Algorithm, Counter, Distribution, InputSpec, Mode};

fn sorting(c: &mut Criterion) {
    let n = 1 << 16;
    for dist in [Distribution::RandomPerm, Distribution::Mo3Killer, Distribution::FewDistinct(16)] {
        let input = gen_input(&InputSpec::new(dist, n, 1));
        let mut group = c.benchmark_group(format!("sort/{dist}"));
        group.throughput(Throughput::Elements(n as u64));
        for algo in Algorithm::all_guaranteed() {
            group.bench_with_input(BenchmarkId::from_parameter(algo), &input, |b, input| {
                b.iter_batched_ref(
                    || input.clone(),
                    |v| {
                        let mut ctx = Counter::with_mode(|a: &u32, b: &u32| a < b, Mode::Time);
                        sort(v, algo, &mut ctx);
                    },
                    BatchSize::LargeInput,
                )
            });
        }
        group.bench_with_input(BenchmarkId::from_parameter("std-unstable"), &input, |b, input| {
            b.iter_batched_ref(|| input.clone(), |v| v.sort_unstable(), BatchSize::LargeInput)
        });
        group.finish();
    }
}

criterion_group!(benches, sorting);
criterion_main!(benches);
