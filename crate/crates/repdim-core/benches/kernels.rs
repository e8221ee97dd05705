//! Benchmarks of the computational kernels that `par_map` fans out over
//! worker threads: exact row reduction, hom-space computation, radical and
//! socle towers, and endomorphism global dimension.
//!
//! Run with the default features for the rayon-parallel kernels and with
//! `--no-default-features` for the sequential fallback; comparing the two
//! reports measures the parallel speedup:
//!
//! ```text
//! cargo bench -p repdim-core
//! cargo bench -p repdim-core --no-default-features
//! ```

use criterion::{criterion_group, criterion_main, Criterion};
use repdim_core::algebra::Algebra;
use repdim_core::endo::{global_dimension, EndoAlgebra};
use repdim_core::quiver::{Arrow, Monomial, Quiver, Relation};
use repdim_core::rep::{
    hom_basis, module_radical, module_socle, projective, regular_module, simple, Rep,
};
use repdim_core::{FieldSpec, Matrix};
use std::hint::black_box;
use std::sync::Arc;

/// Local algebra K<x,y>/(x^2, y^2, xy - 2yx) over GF(5): one vertex, two
/// loops, dimension 4. Small enough to keep every bench under a second,
/// large enough that hom spaces and radical towers do real work.
fn local_algebra() -> Arc<Algebra> {
    let f = FieldSpec::prime(5).unwrap();
    let q = Quiver::new(
        vec!["v".into()],
        vec![
            Arrow { name: "x".into(), source: 0, target: 0 },
            Arrow { name: "y".into(), source: 0, target: 0 },
        ],
    )
    .unwrap();
    let mono = |arrows: &[usize]| Monomial::from_arrows(&q, arrows.to_vec()).unwrap();
    let one = f.one();
    let rels = vec![
        Relation::new(&q, vec![(one.clone(), mono(&[0, 0]))]).unwrap(),
        Relation::new(&q, vec![(one.clone(), mono(&[1, 1]))]).unwrap(),
        Relation::new(
            &q,
            vec![(one.clone(), mono(&[0, 1])), (f.from_int(-2), mono(&[1, 0]))],
        )
        .unwrap(),
    ];
    Arc::new(Algebra::build(q, f, rels, None).unwrap())
}

fn seeded_matrix(f: FieldSpec, n: usize) -> Matrix {
    Matrix::from_fn(f, n, n, |i, j| f.from_int(((i * 7 + j * 13 + i * j) % 5) as i64))
}

fn bench_rref(c: &mut Criterion) {
    let f = FieldSpec::prime(5).unwrap();
    let m = seeded_matrix(f, 60);
    c.bench_function("rref_60x60_gf5", |b| b.iter(|| black_box(&m).rref()));
}

fn bench_mul(c: &mut Criterion) {
    let f = FieldSpec::prime(5).unwrap();
    let m = seeded_matrix(f, 60);
    c.bench_function("mul_60x60_gf5", |b| b.iter(|| black_box(&m).mul(black_box(&m))));
}

fn bench_hom_basis(c: &mut Criterion) {
    let a = local_algebra();
    let r = regular_module(a.clone());
    let stack: Vec<Rep> = vec![r.clone(); 3];
    let (big, _, _) = repdim_core::rep::direct_sum(a, &stack);
    c.bench_function("hom_basis_regular3_regular3", |b| {
        b.iter(|| hom_basis(black_box(&big), black_box(&big)))
    });
}

fn bench_radical_socle(c: &mut Criterion) {
    let a = local_algebra();
    let stack: Vec<Rep> = vec![regular_module(a.clone()); 4];
    let (big, _, _) = repdim_core::rep::direct_sum(a, &stack);
    c.bench_function("radical_and_socle_regular4", |b| {
        b.iter(|| {
            let (rad, _) = module_radical(black_box(&big));
            let (soc, _) = module_socle(black_box(&big));
            (rad.total_dim(), soc.total_dim())
        })
    });
}

fn bench_endo_gldim(c: &mut Criterion) {
    let a = local_algebra();
    let p = projective(a.clone(), 0);
    let (radp, _) = module_radical(&p);
    let summands = vec![simple(a.clone(), 0), radp, p];
    c.bench_function("endo_global_dimension_cap8", |b| {
        b.iter(|| {
            let e = EndoAlgebra::new(black_box(&summands)).unwrap();
            global_dimension(&e, 8).unwrap().value
        })
    });
}

criterion_group!(
    benches,
    bench_rref,
    bench_mul,
    bench_hom_basis,
    bench_radical_socle,
    bench_endo_gldim
);
criterion_main!(benches);
