use criterion::{black_box, criterion_group, criterion_main, Criterion};
use multicat_core::cartesian::{check_cartesian, from_rig};
use multicat_core::corpus;
use multicat_core::multicat::builtin::terminal;
use multicat_core::multicat::{validate, Rig};
use multicat_core::products::equivalence_report;
use multicat_core::spans::{compose_spans, spans_between};

fn laws(c: &mut Criterion) {
    let mut g = c.benchmark_group("laws");
    g.sample_size(10);
    g.bench_function("validate terminal k=3", |b| b.iter(|| validate(black_box(&terminal(3))).unwrap()));
    let z2 = from_rig(&Rig::zmod(2), 2).unwrap();
    g.bench_function("check_cartesian Z/2 k=2", |b| b.iter(|| check_cartesian(black_box(&z2)).unwrap()));
    let prod = corpus::cart("prodcat2", 2).unwrap();
    g.bench_function("equivalence prodcat2 k=2", |b| b.iter(|| equivalence_report(black_box(&prod), 8).unwrap()));
    g.finish();
}

fn spans(c: &mut Criterion) {
    let m = from_rig(&Rig::zmod(2), 3).unwrap().host().clone();
    let two = vec!["*".to_string(); 2];
    let ss = spans_between(&m, &two, &two, 1, 64).unwrap();
    c.bench_function("compose spans 2→2→2", |b| {
        b.iter(|| {
            for s in &ss {
                for t in &ss {
                    let _ = compose_spans(&m, black_box(t), black_box(s));
                }
            }
        })
    });
}

criterion_group!(benches, laws, spans);
criterion_main!(benches);
