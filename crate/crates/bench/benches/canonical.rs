use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use canon_core::canonical::jordan_form;
use canon_core::matrices::characteristic_matrix;
use canon_core::numeric::{int, isolate_real_roots, FactorConfig, Polynomial};
use canon_core::smith::smith_normal_form;
use canon_core::{Matrix, Rational};

fn test_matrix() -> Matrix<Rational> {
    let rows: Vec<Vec<i64>> = vec![
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![0, 0, 1, 1, 0, 0],
        vec![0, 0, 0, 2, 1, 0],
        vec![1, -1, 1, -1, 3, 0],
        vec![-1, 1, -1, 1, -1, 3],
    ];
    Matrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(int).collect())
            .collect(),
    )
}

/// (s-1)(s-2)...(s-6), expanded.
fn six_roots() -> Polynomial {
    (1..=6).fold(Polynomial::one(), |acc, r| {
        &acc * &Polynomial::new(vec![int(-r), int(1)])
    })
}

fn benches(c: &mut Criterion) {
    let a = test_matrix();
    let config = FactorConfig::default();
    let p = six_roots();

    c.bench_function("smith_normal_form_6x6_poly", |b| {
        b.iter(|| {
            let cm = characteristic_matrix(black_box(&a)).unwrap();
            black_box(smith_normal_form(&cm))
        })
    });
    c.bench_function("jordan_form_6x6", |b| {
        b.iter(|| black_box(jordan_form(black_box(&a), &config).unwrap()))
    });
    c.bench_function("isolate_real_roots_deg6", |b| {
        b.iter(|| black_box(isolate_real_roots(black_box(&p)).unwrap()))
    });
}

criterion_group!(canonical, benches);
criterion_main!(canonical);
