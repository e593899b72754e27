use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hypertoric::families::{bh_walks, cumulant_hypergraph, cumulant_split_certificate};
use hypertoric::splitting::{find_degree_certificate, find_splitting_sets};
use hypertoric::{CertificateCaps, SplitCaps};
use hypertoric_bench::{group_based, k33_hexagon};

fn splitting_sets(c: &mut Criterion) {
    let (h, w) = group_based();
    c.bench_function("find_splitting_sets/group_based", |b| {
        b.iter(|| find_splitting_sets(&h, black_box(&w), SplitCaps::default_for(&w)).unwrap())
    });
    let (h, w) = k33_hexagon();
    c.bench_function("find_splitting_sets/k33_hexagon", |b| {
        b.iter(|| find_splitting_sets(&h, black_box(&w), SplitCaps::exhaustive()).unwrap())
    });
}

fn certificates(c: &mut Criterion) {
    let (h, w) = k33_hexagon();
    let sequences = CertificateCaps {
        condition_i: false,
        ..CertificateCaps::default()
    };
    c.bench_function("find_degree_certificate/k33_split", |b| {
        b.iter(|| {
            find_degree_certificate(&h, black_box(&w), 2, CertificateCaps::default()).unwrap()
        })
    });
    c.bench_function("find_degree_certificate/k33_sequence", |b| {
        b.iter(|| find_degree_certificate(&h, black_box(&w), 2, sequences).unwrap())
    });

    let h = cumulant_hypergraph(6, false).unwrap();
    let walks = bh_walks(&h, 5, Some(200)).unwrap();
    c.bench_function("cumulant_split_certificate/200_degree5", |b| {
        b.iter(|| {
            for w in &walks {
                black_box(cumulant_split_certificate(&h, w).unwrap());
            }
        })
    });
}

criterion_group!(benches, splitting_sets, certificates);
criterion_main!(benches);
