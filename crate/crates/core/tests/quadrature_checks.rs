mod common;

use bmfactor::dunkl::dunkl_apply;
use bmfactor::orthopoly::orthogonal_poly;
use bmfactor::special::{gegenbauer_moment, hermite_moment};
use bmfactor::{factor, Family, OperatorKind, OperatorSpec, Polynomial, WeightSpec};
use common::quadrature::weighted;

const WEIGHTS: [(Family, f64, f64); 6] = [
    (Family::Hermite, 0.0, 0.0),
    (Family::Hermite, 0.7, 0.0),
    (Family::Hermite, 2.5, 0.0),
    (Family::Gegenbauer, 0.0, -0.3),
    (Family::Gegenbauer, 0.5, 0.5),
    (Family::Gegenbauer, 1.75, 2.0),
];

/// Relative accuracy about 1e-11, measured against `∫|f| W`.
fn quad(f: impl Fn(f64) -> f64, w: &WeightSpec) -> f64 {
    let size = weighted(&|x| f(x).abs(), w.family, w.lambda, w.mu, 1e-6);
    weighted(&f, w.family, w.lambda, w.mu, 1e-11 * size.max(1e-300))
}

#[test]
fn moments_match_quadrature() {
    for (family, lambda, mu) in WEIGHTS {
        let w = WeightSpec::new(family, lambda, mu).unwrap();
        for s in 0..8 {
            let exact = match family {
                Family::Hermite => hermite_moment(s, lambda),
                Family::Gegenbauer => gegenbauer_moment(s, lambda, mu),
            };
            let numeric = quad(|x| x.powi(2 * s as i32), &w);
            assert!((exact - numeric).abs() <= 1e-8 * exact, "{family} l={lambda} m={mu} s={s}: {exact} vs {numeric}");
        }
    }
}

#[test]
fn orthogonal_polynomials_are_orthogonal() {
    for (family, lambda, mu) in WEIGHTS {
        let w = WeightSpec::new(family, lambda, mu).unwrap();
        let polys: Vec<Polynomial> = (0..7).map(|n| orthogonal_poly(&w, n)).collect();
        for i in 0..polys.len() {
            let nii = quad(|x| polys[i].eval(x).powi(2), &w);
            for j in 0..i {
                let njj = quad(|x| polys[j].eval(x).powi(2), &w);
                let nij = quad(|x| polys[i].eval(x) * polys[j].eval(x), &w);
                assert!(nij.abs() <= 1e-8 * (nii * njj).sqrt(), "{family} l={lambda} m={mu} <{i},{j}> = {nij}");
            }
        }
    }
}

/// `‖√A T p‖² / ‖p‖²` by adaptive quadrature, with `A = 1 - x²` on the interval.
fn quotient(p: &Polynomial, w: &WeightSpec, op: &OperatorSpec) -> f64 {
    let tp = match op.kind {
        OperatorKind::Classical => p.derivative(),
        OperatorKind::Dunkl => dunkl_apply(p, w.lambda),
    };
    let damp = |x: f64| if w.family == Family::Gegenbauer { 1.0 - x * x } else { 1.0 };
    quad(|x| damp(x) * tp.eval(x).powi(2), w) / quad(|x| p.eval(x).powi(2), w)
}

#[test]
fn extremal_polynomials_attain_the_factor() {
    let cases = [
        (WeightSpec::hermite(0.4).unwrap(), 2usize),
        (WeightSpec::hermite(0.4).unwrap(), 5),
        (WeightSpec::hermite(1.5).unwrap(), 6),
        (WeightSpec::gegenbauer(1.0, 0.5).unwrap(), 3),
        (WeightSpec::gegenbauer(2.0, -0.25).unwrap(), 6),
        (WeightSpec::gegenbauer(0.5, 1.5).unwrap(), 7),
    ];
    for (w, n) in cases {
        let damped = w.family == Family::Gegenbauer;
        for op in [OperatorSpec::classical(damped), OperatorSpec::dunkl(damped)] {
            let r = factor(n, &w, &op).unwrap();
            let q = quotient(&r.extremal, &w, &op);
            assert!((q - r.factor_sq).abs() <= 1e-8 * r.factor_sq, "{w:?} n={n} {op:?}: {q} vs {}", r.factor_sq);
        }
    }
}

#[test]
fn reference_values_by_quadrature() {
    // classical Hermite: ‖p'‖ ≤ √(2n) ‖p‖ at λ = 0
    let r = factor(4, &WeightSpec::hermite(0.0).unwrap(), &OperatorSpec::dunkl(false)).unwrap();
    assert!((r.factor - 8f64.sqrt()).abs() < 1e-12);
    let w = WeightSpec::hermite(1.0).unwrap();
    let r = factor(3, &w, &OperatorSpec::classical(false)).unwrap();
    let q = quotient(&r.extremal, &w, &OperatorSpec::classical(false));
    assert!((q - r.factor_sq).abs() <= 1e-8 * q);
    assert!((r.factor - 4.8371760794799f64.sqrt()).abs() < 1e-9);
}
