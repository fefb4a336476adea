use criterion::{criterion_group, criterion_main, Criterion};

use regulus::cofinality::{is_sifted, CofinalityLevel};
use regulus::completion::closure_search;
use regulus::corpus::{coequalizer_workspace, corpus_workspace};
use regulus::fincat::{diamond_lattice, parallel_pair};
use regulus::homotopy::{homology, nerve};
use regulus::presheaf::terminal_presheaf;
use regulus::Bounds;

fn bench_closure_search(c: &mut Criterion) {
    let ws = coequalizer_workspace();
    let cat = ws.category("C").unwrap().clone();
    let class = ws.class("F").unwrap().class.clone();
    let target = terminal_presheaf(&cat);
    c.bench_function("closure_search coequalizer", |b| {
        b.iter(|| closure_search(&cat, &class, &target, Bounds::default()))
    });
}

fn bench_nerve_homology(c: &mut Criterion) {
    let ws = corpus_workspace();
    let square = ws.category("Square").unwrap().clone();
    c.bench_function("nerve homology square d=4", |b| {
        b.iter(|| homology(&nerve(&square, 4), true))
    });
    let pp = parallel_pair();
    c.bench_function("nerve homology parallel pair d=4", |b| {
        b.iter(|| homology(&nerve(&pp, 4), false))
    });
}

fn bench_siftedness(c: &mut Criterion) {
    let l = diamond_lattice();
    c.bench_function("is_sifted diamond connected", |b| {
        b.iter(|| is_sifted(&l, CofinalityLevel::Connected))
    });
}

criterion_group!(benches, bench_closure_search, bench_nerve_homology, bench_siftedness);
criterion_main!(benches);
