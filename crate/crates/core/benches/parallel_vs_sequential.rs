//! Same workloads on rayon's global pool and on a one-thread pool.
//!
//! Built without the `parallel` feature both arms run the plain iterator
//! path, which gives the sequential baseline directly.

use criterion::{criterion_group, criterion_main, Criterion};
use rayon::ThreadPoolBuilder;

use tycat::abgroup::FinAbGroup;
use tycat::lattice::{count_roots, EvenLattice};
use tycat::moddata::{mp_md, verlinde_fusion};
use tycat::quadform::{bichar_from_qform, QuadForm};

fn workloads(c: &mut Criterion) {
    let q = QuadForm::diagonal(FinAbGroup::cyclic(15), &[1]).unwrap();
    let md = mp_md(&bichar_from_qform(&q).unwrap(), 1).unwrap();
    let e8 = EvenLattice::named("E8").unwrap();
    let single = ThreadPoolBuilder::new().num_threads(1).build().unwrap();

    let mut g = c.benchmark_group("mp_z15_verify");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| md.verify().unwrap()));
    g.bench_function("sequential", |b| b.iter(|| single.install(|| md.verify().unwrap())));
    g.finish();

    let mut g = c.benchmark_group("mp_z15_verlinde");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| verlinde_fusion(&md).unwrap()));
    g.bench_function("sequential", |b| b.iter(|| single.install(|| verlinde_fusion(&md).unwrap())));
    g.finish();

    let mut g = c.benchmark_group("e8_roots");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| count_roots(&e8).unwrap()));
    g.bench_function("sequential", |b| b.iter(|| single.install(|| count_roots(&e8).unwrap())));
    g.finish();
}

criterion_group!(benches, workloads);
criterion_main!(benches);
