use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use nfdi_forge_bench::{core_schema, role_patterns};
use nfdi_forge_core::query::{evaluate, parse_query, Entailment};
use nfdi_forge_core::rdf::PrefixMap;
use nfdi_forge_core::rules::{inferred_graph, materialize, materialize_naive, parse_rules, BUNDLED_RULES};
use nfdi_forge_core::turtle::{parse, serialize, Dialect};
use nfdi_forge_core::validate::validate;
use nfdi_forge_core::Iri;

const SIZES: [usize; 3] = [10, 100, 1000];

fn turtle(c: &mut Criterion) {
    let mut group = c.benchmark_group("turtle");
    let base = Iri::new("https://example.org/bench/").unwrap();
    for n in SIZES {
        let g = role_patterns(n);
        let text = serialize(&g, &PrefixMap::standard(), Dialect::Turtle);
        group.throughput(Throughput::Elements(g.len() as u64));
        group.bench_with_input(BenchmarkId::new("parse", n), &text, |b, text| {
            b.iter(|| parse(text, &base, Dialect::Turtle).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("serialize", n), &g, |b, g| {
            b.iter(|| serialize(g, &PrefixMap::standard(), Dialect::Turtle))
        });
    }
    group.finish();
}

fn rules(c: &mut Criterion) {
    let schema = core_schema();
    let rules = parse_rules(BUNDLED_RULES, &PrefixMap::standard()).unwrap();
    let mut group = c.benchmark_group("materialize");
    for n in SIZES {
        let g = role_patterns(n);
        group.throughput(Throughput::Elements(g.len() as u64));
        group.bench_with_input(BenchmarkId::new("semi-naive", n), &g, |b, g| b.iter(|| materialize(g, &schema, &rules)));
        if n <= 100 {
            group.bench_with_input(BenchmarkId::new("naive", n), &g, |b, g| {
                b.iter(|| materialize_naive(g, &schema, &rules))
            });
        }
    }
    group.finish();
}

fn queries(c: &mut Criterion) {
    let schema = core_schema();
    let rules = parse_rules(BUNDLED_RULES, &PrefixMap::standard()).unwrap();
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../queries");
    let complex = parse_query(&std::fs::read_to_string(root.join("contact-points-complex.rq")).unwrap()).unwrap();
    let shortcut = parse_query(&std::fs::read_to_string(root.join("contact-points-shortcut.rq")).unwrap()).unwrap();
    let mut group = c.benchmark_group("contact-point query");
    for n in SIZES {
        let asserted = role_patterns(n);
        let mut merged = asserted.clone();
        merged.extend(inferred_graph(&materialize(&asserted, &schema, &rules)).iter());
        group.bench_with_input(BenchmarkId::new("complex", n), &asserted, |b, g| {
            b.iter(|| evaluate(&complex, g, &schema, Entailment::None))
        });
        group.bench_with_input(BenchmarkId::new("shortcut", n), &merged, |b, g| {
            b.iter(|| evaluate(&shortcut, g, &schema, Entailment::None))
        });
        group.bench_with_input(BenchmarkId::new("complex-rdfs", n), &asserted, |b, g| {
            b.iter(|| evaluate(&complex, g, &schema, Entailment::Rdfs))
        });
    }
    group.finish();
}

fn validation(c: &mut Criterion) {
    let schema = core_schema();
    let mut group = c.benchmark_group("validate");
    for n in SIZES {
        let g = role_patterns(n);
        group.throughput(Throughput::Elements(g.len() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| validate(g, &schema)));
    }
    group.finish();
}

criterion_group!(benches, turtle, rules, queries, validation);
criterion_main!(benches);
