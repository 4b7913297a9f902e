use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use h1forge::cohomology::{h1_full_table, h1_presentation, h1_with_reductions};
use h1forge::corpus::{entries, jordan_spec, SpecFile};
use h1forge::group::DEFAULT_CAP;
use h1forge::{FieldCtx, FieldSpec, GModule, GroupSpec, MatrixFq, MatrixGroup};

fn sl2(p: u64, m: u32) -> SpecFile {
    SpecFile::from_recipe(FieldSpec { p, m }, 2, GroupSpec::Sl { n: 2, subfield_degree: None })
}

fn module(spec: &SpecFile) -> GModule {
    GModule::natural(Arc::new(spec.elaborate(DEFAULT_CAP).expect("elaborates")))
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for (p, m) in [(7u64, 1u32), (3, 2), (13, 1), (29, 1)] {
        let q = p.pow(m);
        let spec = sl2(p, m);
        let ctx = FieldCtx::new(p, m).unwrap();
        let (dim, gens) = spec.recipe.clone().unwrap().generators(&ctx).unwrap();
        group.bench_with_input(BenchmarkId::new("SL2", q), &gens, |b, gens| {
            b.iter(|| MatrixGroup::generate(&ctx, dim, black_box(gens.clone()), DEFAULT_CAP).unwrap())
        });
    }
    group.finish();
}

fn solvers(c: &mut Criterion) {
    let cases = [
        ("jordan-7", module(&jordan_spec(7))),
        ("SL2(7)", module(&sl2(7, 1))),
        ("SL2(9)", module(&sl2(3, 2))),
        ("sl3(a)-7", module(&entries(3, FieldSpec { p: 7, m: 1 }).into_iter().find(|s| s.label() == "sl3 (a)").unwrap())),
    ];
    let mut group = c.benchmark_group("h1");
    group.sample_size(20);
    for (name, m) in &cases {
        group.bench_with_input(BenchmarkId::new("presentation", name), m, |b, m| b.iter(|| h1_presentation(m)));
        group.bench_with_input(BenchmarkId::new("table", name), m, |b, m| b.iter(|| h1_full_table(m).unwrap()));
        group.bench_with_input(BenchmarkId::new("reductions", name), m, |b, m| {
            b.iter(|| h1_with_reductions(m, &[]).unwrap())
        });
    }
    group.finish();
}

fn rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for (p, m, n) in [(101, 1, 64), (2, 4, 64), (7, 2, 128)] {
        let ctx = FieldCtx::new(p, m).unwrap();
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let a = MatrixFq::from_fn(&ctx, n, n + 1, |_, _| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ctx.from_raw((state % ctx.q() as u64) as u32).unwrap()
        });
        group.bench_with_input(BenchmarkId::new(format!("F_{}", ctx.q()), n), &a, |b, a| b.iter(|| a.rref()));
    }
    group.finish();
}

criterion_group!(benches, enumeration, solvers, rref);
criterion_main!(benches);
