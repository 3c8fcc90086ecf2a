use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use shl_core::exactmath::{pfaffian, SkewMatrix};
use shl_core::identities::{littlewood_rhs, TermEvaluator};
use shl_core::shl::{f_symmetrization, f_symmetrization_reduced};
use shl_core::vertexmodel::lattice_f;
use shl_core::{q, EvalRequest, InhomogeneitySequence, ParamSet, Rational, Signature};

fn params(n: usize) -> ParamSet {
    let u = (0..n).map(|i| q(i as i64 + 1, 2 * n as i64 + 3)).collect();
    let s = InhomogeneitySequence::new(vec![q(1, 5), q(-1, 7), q(2, 9)], q(1, 4));
    ParamSet::new(q(1, 3), q(2, 1), s, u).unwrap()
}

fn evaluators(c: &mut Criterion) {
    let p = params(4);
    let lambda = Signature::new(vec![3, 2, 2, 0]).unwrap();
    let req = EvalRequest::new(lambda.clone(), p.clone()).unwrap();
    c.bench_function("f_symmetrization n=4", |b| b.iter(|| f_symmetrization(black_box(&req)).unwrap()));
    c.bench_function("f_symmetrization_reduced n=4", |b| {
        b.iter(|| f_symmetrization_reduced(black_box(&req)).unwrap())
    });
    c.bench_function("lattice_f n=4", |b| b.iter(|| lattice_f(black_box(&lambda), &p).unwrap()));

    let terms = TermEvaluator::new(&p, 3).unwrap().with_refined(3).unwrap();
    let even = Signature::new(vec![3, 3, 1, 1]).unwrap();
    c.bench_function("littlewood_term [3,3,1,1]", |b| b.iter(|| terms.littlewood_term(black_box(&even)).unwrap()));
    c.bench_function("littlewood_rhs n=2", |b| b.iter(|| littlewood_rhs(black_box(&p)).unwrap()));

    let a = SkewMatrix::from_upper(8, |i, j| Ok(Rational::new((i * 7 + j * 3) as i64 % 11 - 5, (i + j) as i64 + 1)))
        .unwrap();
    c.bench_function("pfaffian 8x8", |b| b.iter(|| pfaffian(black_box(&a))));
}

criterion_group!(benches, evaluators);
criterion_main!(benches);
