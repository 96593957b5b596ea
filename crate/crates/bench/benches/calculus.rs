use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ddcalc_core::{
    antiderivative, derivative, integrate, parse_expr, quadrature, slope_by_double_root,
    tangent_descartes, Curve, Polynomial, QuadratureConfig, Rational,
};

fn parse_and_print(c: &mut Criterion) {
    c.bench_function("parse_print_roundtrip", |b| {
        b.iter(|| {
            let parsed = parse_expr(black_box("12 x^2 + 3/2 x^(1/2) - sin(x) + 4")).unwrap();
            black_box(parsed.expr.canonical_string("x"))
        })
    });
}

fn double_root_slope(c: &mut Criterion) {
    let p = Polynomial::from_expr(
        &parse_expr("x^8 - 3x^7 + x^5 - 2x^4 + 9x^2 - x + 1").unwrap().expr,
    )
    .unwrap();
    let x0 = Rational::new(7, 3);
    c.bench_function("slope_by_double_root_deg8", |b| {
        b.iter(|| black_box(slope_by_double_root(black_box(&p), black_box(&x0))))
    });
}

fn table_lookups(c: &mut Criterion) {
    let e = parse_expr("x^(3/2) + 4x^3 - sin(x) + 2exp(x)").unwrap().expr;
    c.bench_function("derivative_mixed_terms", |b| {
        b.iter(|| black_box(derivative(black_box(&e)).unwrap()))
    });
    c.bench_function("antiderivative_mixed_terms", |b| {
        b.iter(|| black_box(antiderivative(black_box(&e)).unwrap()))
    });
}

fn definite_integrals(c: &mut Criterion) {
    let poly = parse_expr("x^4 + 2x").unwrap().expr;
    let a = Rational::new(0, 1);
    let b_bound = Rational::new(1, 1);
    c.bench_function("integrate_symbolic_quartic", |bch| {
        bch.iter(|| black_box(integrate(black_box(&poly), &a, &b_bound).unwrap()))
    });
    let circle = parse_expr("sqrt(1 - x^2)").unwrap().expr;
    let cfg = QuadratureConfig::default();
    c.bench_function("quadrature_quarter_disc", |bch| {
        bch.iter(|| black_box(quadrature(black_box(&circle), 0.0, 1.0, &cfg).unwrap()))
    });
}

fn descartes_circle(c: &mut Criterion) {
    let curve = Curve::from_expr(&parse_expr("x^3 - 2x + 5").unwrap().expr).unwrap();
    let x0 = Rational::new(5, 3);
    c.bench_function("tangent_descartes_cubic", |b| {
        b.iter(|| black_box(tangent_descartes(black_box(&curve), black_box(&x0)).unwrap()))
    });
}

criterion_group!(
    benches,
    parse_and_print,
    double_root_slope,
    table_lookups,
    definite_integrals,
    descartes_circle
);
criterion_main!(benches);
