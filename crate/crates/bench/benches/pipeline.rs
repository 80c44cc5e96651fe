use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dvrtrace::poly::factor;
use dvrtrace::scalars::{parse_residue, FiniteField};
use dvrtrace::{
    analyze, generate_corpus, run_suite, smith_over_dvr, AlgebraDocument, CorpusSpec, DvrDescriptor, Mix, PolyRing,
    ResidueField,
};

fn corpus(backend: &str, degree: usize, count: usize) -> Vec<AlgebraDocument> {
    let spec = CorpusSpec {
        seed: 7,
        backends: vec![backend.parse::<DvrDescriptor>().unwrap()],
        degree_range: (degree, degree),
        valuation_range: (0, 2),
        mix: Mix { monogenic: count, product: 0, table: 0 },
    };
    generate_corpus(&spec).unwrap()
}

fn factorization(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor");
    let cases = [
        ("F_4", ResidueField::finite(FiniteField::with_order(4).unwrap()), &["1", "w", "0", "1+w", "1", "0", "w", "1", "1"][..]),
        ("F_5", ResidueField::finite(FiniteField::prime(5).unwrap()), &["2", "0", "3", "1", "4", "0", "1", "2", "1"][..]),
        ("F_2(u)", ResidueField::function_field(2).unwrap(), &["u", "1", "0", "u+1", "1", "1"][..]),
    ];
    for (name, k, coeffs) in cases {
        let ring = PolyRing::new(k.clone(), "x");
        let f = ring.from_coeffs(coeffs.iter().map(|s| parse_residue(&k, s).unwrap()).collect());
        group.bench_function(name, |b| b.iter(|| factor(&ring, black_box(&f)).unwrap()));
    }
    group.finish();
}

fn smith(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_gram");
    for backend in ["zp:3", "kt:4", "kut:2"] {
        let grams: Vec<_> = corpus(backend, 4, 8)
            .iter()
            .map(|d| {
                let a = d.build().unwrap();
                (a.dvr().clone(), a.trace_gram())
            })
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(backend), &grams, |b, grams| {
            b.iter(|| {
                for (dvr, g) in grams {
                    black_box(smith_over_dvr(dvr, g));
                }
            })
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    for backend in ["zp:2", "kt:4", "kut:3"] {
        let docs = corpus(backend, 3, 8);
        group.bench_with_input(BenchmarkId::from_parameter(backend), &docs, |b, docs| {
            b.iter(|| {
                for d in docs {
                    black_box(analyze(d).unwrap());
                }
            })
        });
    }
    group.finish();

    let docs = generate_corpus(&CorpusSpec::standard(42)).unwrap();
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    group.bench_function("standard_200", |b| b.iter(|| run_suite(black_box(&docs))));
    group.finish();
}

criterion_group!(benches, factorization, smith, pipeline);
criterion_main!(benches);
