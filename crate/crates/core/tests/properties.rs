mod common;

use bmfactor::inequality::inequality;
use bmfactor::orthopoly::eigenvalue_sq;
use bmfactor::{factor, Family, OperatorSpec, WeightSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn weight_strategy() -> impl Strategy<Value = WeightSpec> {
    prop_oneof![
        (0.05f64..3.0).prop_map(|l| WeightSpec::hermite(l).unwrap()),
        (0.05f64..3.0, -0.45f64..2.5).prop_map(|(l, m)| WeightSpec::gegenbauer(l, m).unwrap()),
    ]
}

fn ops(w: &WeightSpec) -> [OperatorSpec; 2] {
    let damped = w.family == Family::Gegenbauer;
    [OperatorSpec::classical(damped), OperatorSpec::dunkl(damped)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factors_grow_with_degree(w in weight_strategy(), n in 1usize..11) {
        for op in ops(&w) {
            let a = factor(n, &w, &op).unwrap().factor;
            let b = factor(n + 1, &w, &op).unwrap().factor;
            prop_assert!(b >= a * (1.0 - 1e-12), "{:?} {:?} n={}: {} > {}", w, op, n, a, b);
        }
    }

    #[test]
    fn dunkl_factor_dominates_the_eigenvalues(w in weight_strategy(), n in 1usize..13) {
        let r = factor(n, &w, &ops(&w)[1]).unwrap();
        let top = (1..=n).map(|k| eigenvalue_sq(w.family, k, w.lambda, w.mu)).fold(0.0, f64::max);
        prop_assert!(r.factor_sq >= top * (1.0 - 1e-12));
        if w.family == Family::Hermite {
            prop_assert!((r.factor_sq - top).abs() <= 1e-12 * top);
        }
    }

    #[test]
    fn dunkl_reduces_to_classical_at_lambda_zero(n in 1usize..13, mu in -0.45f64..2.5) {
        let h = factor(n, &WeightSpec::hermite(0.0).unwrap(), &OperatorSpec::dunkl(false)).unwrap();
        prop_assert!((h.factor_sq - 2.0 * n as f64).abs() <= 1e-12 * n as f64);
        let g = factor(n, &WeightSpec::gegenbauer(0.0, mu).unwrap(), &OperatorSpec::dunkl(true)).unwrap();
        let expect = n as f64 * (n as f64 + 2.0 * mu);
        prop_assert!((g.factor_sq - expect).abs() <= 1e-10 * expect);
    }

    #[test]
    fn random_polynomials_respect_the_inequality(w in weight_strategy(), n in 1usize..9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_poly(&mut rng, n);
        let r = inequality(&p, n, &w).unwrap();
        let scale = r.lhs.abs().max(r.rhs.abs());
        prop_assert!(r.gap >= -1e-9 * scale, "gap {} scale {}", r.gap, scale);
    }
}
