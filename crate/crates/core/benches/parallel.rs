use std::path::Path;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use koszul_core::analysis::IdealAnalysis;
use koszul_core::corpus::IdealFile;
use koszul_core::groebner::Ideal;
use koszul_core::verify::{self, Params};
use koszul_core::{oracle, par, random};

fn full_check(name: &str, ideal: &Ideal) -> koszul_core::Result<usize> {
    let a = IdealAnalysis::new(name, ideal)?;
    Ok(verify::run_all(&a, Params::default())?.len())
}

fn batch(c: &mut Criterion) {
    let ideals = random::random_ideals(random::DEFAULT_SEED, 32, random::Shape::default()).unwrap();
    let mut g = c.benchmark_group("random_batch");
    g.sample_size(10).measurement_time(Duration::from_secs(5));
    g.bench_function("sequential", |b| {
        b.iter(|| par::map_seq(&ideals, |(n, i)| full_check(n, i)).unwrap())
    });
    g.bench_function("parallel", |b| {
        b.iter(|| par::map(&ideals, |(n, i)| full_check(n, i)).unwrap())
    });
    g.finish();
}

fn oracle_slices(c: &mut Criterion) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/hb1.kz");
    let ideal = IdealFile::load(&path).unwrap().ideal().unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut g = c.benchmark_group("oracle_table");
    g.sample_size(10).measurement_time(Duration::from_secs(5));
    for max_deg in [6, 8] {
        g.bench_with_input(BenchmarkId::new("one_thread", max_deg), &max_deg, |b, &d| {
            b.iter(|| single.install(|| oracle::homology_hf_table(ideal.ring(), ideal.gens(), d).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new("pool", max_deg), &max_deg, |b, &d| {
            b.iter(|| oracle::homology_hf_table(ideal.ring(), ideal.gens(), d).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, batch, oracle_slices);
criterion_main!(benches);
