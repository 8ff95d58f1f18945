use bq_core::boundary::Character;
use bq_core::ideals::ConstructibleIdeal;
use bq_core::monoid::Monoid;
use bq_core::regularity::{self, Instance, RegularityKind};
use bq_core::{catalog, mean, search, Config, GroupoidElement, Hull, Word};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn ideal(s: &str) -> ConstructibleIdeal {
    ConstructibleIdeal::parse(s).unwrap()
}

fn normal_form(c: &mut Criterion) {
    let r = catalog::monoid_r();
    let p = r.presentation();
    let mut group = c.benchmark_group("normal_form");
    for k in [4usize, 16, 64] {
        let w = Word::parse(&format!("{}b x_0 d f", "a c ".repeat(k))).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(w.len()), &w, |b, w| b.iter(|| p.normal_form(black_box(w))));
    }
    group.finish();
}

fn ideals(c: &mut Criterion) {
    let r = catalog::monoid_r();
    let pairs: Vec<_> = [("a R", "b R"), ("b x_2 X", "c b Z"), ("b Y", "a b y_3 R")]
        .iter()
        .map(|(x, y)| (ideal(x), ideal(y)))
        .collect();
    c.bench_function("intersect", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(r.intersect(x, y));
            }
        })
    });
    let x = Word::parse("a c").unwrap();
    let target = ideal("b y_2 R");
    c.bench_function("pullback", |b| b.iter(|| r.pullback(black_box(&x), black_box(&target))));
}

fn foundations(c: &mut Criterion) {
    let r = catalog::monoid_r();
    let cfg = Config::default();
    let target = ideal("b Z");
    let covering = [ideal("b X"), ideal("b Y")];
    let failing = [ideal("b x_0 R")];
    c.bench_function("is_foundation/holds", |b| b.iter(|| search::is_foundation(&r, &target, &covering, &cfg).unwrap()));
    c.bench_function("is_foundation/fails", |b| b.iter(|| search::is_foundation(&r, &target, &failing, &cfg).unwrap()));
}

fn regularity_check(c: &mut Criterion) {
    let r = catalog::monoid_r();
    let cfg = Config::default();
    let inst = Instance {
        target: ideal("b Z"),
        known: Vec::new(),
        hs: vec![Hull::parse("a").unwrap(), Hull::parse("c").unwrap()],
    };
    let mut group = c.benchmark_group("regularity");
    group.sample_size(10);
    for kind in [RegularityKind::StrongBoundary, RegularityKind::Plain] {
        group.bench_function(kind.to_string(), |b| b.iter(|| regularity::check(&r, kind, &inst, cfg.prefix_bound, &cfg).unwrap()));
    }
    group.finish();
}

fn mean_deviation(c: &mut Criterion) {
    let r = catalog::monoid_r();
    let g = GroupoidElement::new(&r, Hull::parse("b^-1 c b").unwrap(), Character::parse("ideal X").unwrap()).unwrap();
    let mut group = c.benchmark_group("mean_deviation");
    group.sample_size(10);
    for n in [4usize, 8, 16] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| mean::mean_deviation(&r, &g, n).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, normal_form, ideals, foundations, regularity_check, mean_deviation);
criterion_main!(benches);
