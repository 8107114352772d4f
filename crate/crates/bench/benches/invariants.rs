use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hbk_bench::{alternating_closure, catalog_diagram, family, group, scrambled};
use hbk_core::bounds::{cutting_lower_bound, tunnel_lower_bound};
use hbk_core::coloring::{coloring_count, invariant_multiset, Method, DEFAULT_BUDGET};
use hbk_core::flows::enumerate_flows;

fn flows(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_flows/s3");
    let s3 = group("s3");
    for n in [2, 4, 6] {
        let d = alternating_closure(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| enumerate_flows(black_box(d), &s3, DEFAULT_BUDGET).unwrap())
        });
    }
    g.finish();
}

fn colorings(c: &mut Criterion) {
    let z2 = group("z2");
    let fam = family("dihedral(5)");
    let d = alternating_closure(6);
    let flow = enumerate_flows(&d, &z2, DEFAULT_BUDGET).unwrap().pop().unwrap();
    let mut g = c.benchmark_group("coloring_count");
    for (name, method) in [("brute", Method::Brute), ("linear", Method::Linear)] {
        g.bench_function(name, |b| b.iter(|| coloring_count(black_box(&d), &flow, &fam, method, DEFAULT_BUDGET).unwrap()));
    }
    g.finish();

    let s3 = group("s3");
    let std = family("s3(gf(5),std)");
    let theta = scrambled("theta-trefoil", 30);
    c.bench_function("invariant_multiset/theta-trefoil/s3-std", |b| {
        b.iter(|| invariant_multiset(black_box(&theta), &s3, &std, Method::Auto, DEFAULT_BUDGET).unwrap())
    });
}

fn bounds(c: &mut Criterion) {
    let z2 = group("z2");
    let r3 = family("dihedral(3)");
    let d = catalog_diagram("theta-8_18");
    c.bench_function("tunnel_lower_bound/theta-8_18", |b| {
        b.iter(|| tunnel_lower_bound(black_box(&d), 2, r3.as_alexander().unwrap(), DEFAULT_BUDGET).unwrap())
    });
    let fams = [r3.clone(), family("dihedral(5)")];
    c.bench_function("cutting_lower_bound/theta-8_18", |b| {
        b.iter(|| cutting_lower_bound(black_box(&d), 2, &z2, &fams, DEFAULT_BUDGET).unwrap())
    });
}

criterion_group!(benches, flows, colorings, bounds);
criterion_main!(benches);
