//! Compares the rayon fan-out against the sequential path on the synthetic
//! corpus, across corpus sizes.

use barscan_core::config::RunConfig;
use barscan_core::fixtures::synthetic_corpus;
use barscan_core::market::Series;
use barscan_core::pipeline::{analyze_all, analyze_all_sequential};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn corpus_of(securities: usize) -> Vec<Series> {
    let mut out = Vec::new();
    let mut seed = 42;
    while out.len() < securities {
        for s in synthetic_corpus(seed) {
            if out.len() == securities {
                break;
            }
            let mut s = s;
            s.security_id = format!("{}_{}", s.security_id, seed);
            out.push(s);
        }
        seed += 1;
    }
    out
}

fn bench_pipeline(c: &mut Criterion) {
    let cfg = RunConfig::default();
    let mut group = c.benchmark_group("scan_backtest");
    for securities in [2usize, 8, 16] {
        let corpus = corpus_of(securities);
        group.bench_with_input(
            BenchmarkId::new("parallel", securities),
            &corpus,
            |b, corpus| {
                b.iter(|| black_box(analyze_all(corpus.clone(), &cfg).unwrap()));
            },
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", securities),
            &corpus,
            |b, corpus| {
                b.iter(|| black_box(analyze_all_sequential(corpus.clone(), &cfg).unwrap()));
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_pipeline);
criterion_main!(benches);
