//! Engine vs oracle timings on representative inputs, plus the raw
//! construction cost.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use dickson_core::dickson::{dickson_first, DicksonKind};
use dickson_core::engine::factor_dickson;
use dickson_core::field::FieldCtx;
use dickson_core::oracle;

fn bench_construction(c: &mut Criterion) {
    let f7 = FieldCtx::new(7, 1, None).unwrap();
    let a = f7.element(3);
    c.bench_function("construct D_192 over F_7", |bench| {
        bench.iter(|| dickson_first(black_box(192), &a).unwrap())
    });
}

fn bench_engine_vs_oracle(c: &mut Criterion) {
    let cases = [
        ("F_7 n=96", FieldCtx::new(7, 1, None).unwrap(), 96u64, 1u64),
        ("F_49 n=48", FieldCtx::new(7, 2, None).unwrap(), 48, 5),
        ("F_4 n=96", FieldCtx::new(2, 2, None).unwrap(), 96, 2),
    ];
    for (label, ctx, n, a_code) in &cases {
        let a = ctx.element(*a_code);
        c.bench_function(&format!("engine first kind {label}"), |bench| {
            bench.iter(|| factor_dickson(DicksonKind::First, black_box(*n), &a, false).unwrap())
        });
        let poly = dickson_first(*n, &a).unwrap();
        c.bench_function(&format!("oracle first kind {label}"), |bench| {
            bench.iter(|| oracle::factor(black_box(&poly), 1))
        });
    }
}

criterion_group!(benches, bench_construction, bench_engine_vs_oracle);
criterion_main!(benches);
