use gaussjacobi::gegenbauer::normalize_symmetric;
use gaussjacobi::scaled::Scaled;
use gaussjacobi::special::{log_moment0, moment};
use gaussjacobi::{
    compare_rules, gegenbauer_rule, golub_welsch, jacobi_rule, make_params, JacobiOptions,
    PrecisionConfig,
};
use proptest::prelude::*;

const EPS: f64 = f64::EPSILON;

fn exponent() -> impl Strategy<Value = f64> {
    -0.99f64..8.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nodes_sorted_inside_and_weights_positive(n in 1usize..120, a in exponent(), b in exponent()) {
        let r = jacobi_rule(n, a, b, &JacobiOptions::default()).unwrap();
        let x = &r.rule.nodes;
        prop_assert_eq!(x.len(), n);
        prop_assert!(x.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(x[0] > -1.0 && x[n - 1] < 1.0);
        prop_assert!(r.rule.weights.iter().all(|&w| w > 0.0));
        for ((&xi, &c), &d) in x.iter().zip(&r.one_minus_x).zip(&r.one_plus_x) {
            // the differences themselves round at magnitude up to 2
            prop_assert!((1.0 - xi - c).abs() <= 2.0 * EPS && (1.0 + xi - d).abs() <= 2.0 * EPS);
        }
    }

    #[test]
    fn total_mass(n in 1usize..200, a in exponent(), b in exponent()) {
        let r = jacobi_rule(n, a, b, &JacobiOptions::default()).unwrap();
        let mu0 = moment(a, b, 0).unwrap();
        let s: f64 = r.rule.weights.iter().sum();
        prop_assert!(((s - mu0) / mu0).abs() <= 1e2 * n as f64 * EPS);
    }

    #[test]
    fn reflection(n in 1usize..80, a in exponent(), b in exponent()) {
        let opts = JacobiOptions::default();
        let r = jacobi_rule(n, a, b, &opts).unwrap();
        let s = jacobi_rule(n, b, a, &opts).unwrap();
        for i in 0..n {
            let j = n - 1 - i;
            prop_assert!((r.rule.nodes[i] + s.rule.nodes[j]).abs() <= 4.0 * EPS);
            let (w, v) = (r.rule.weights[i], s.rule.weights[j]);
            prop_assert!(((w - v) / w).abs() <= 1e2 * EPS, "node {}: {} eps", i, ((w - v) / w).abs() / EPS);
        }
    }

    #[test]
    fn agrees_with_golub_welsch(n in 2usize..60, a in exponent(), b in exponent()) {
        let r = jacobi_rule(n, a, b, &JacobiOptions::default()).unwrap();
        let g = golub_welsch(&make_params(n, a, b).unwrap()).unwrap();
        // the eigenvector weights are accurate relative to the largest weight only
        let e = compare_rules(&r.rule, &g).unwrap();
        prop_assert!(e.nodes_mr <= 1e-13 && e.weights_rm <= 1e-12, "{:?}", e);
    }

    #[test]
    fn gegenbauer_matches_general(n in 1usize..80, l in -0.99f64..6.0) {
        let g = gegenbauer_rule(n, l, &PrecisionConfig::default(), false).unwrap();
        let r = jacobi_rule(n, l, l, &JacobiOptions::default()).unwrap();
        for i in 0..n {
            prop_assert!((g.rule.nodes[i] - r.rule.nodes[i]).abs() <= 4.0 * EPS);
            let (w, v) = (g.rule.weights[i], r.rule.weights[i]);
            prop_assert!(((w - v) / v).abs() <= 1e2 * EPS);
        }
    }

    #[test]
    fn symmetric_normalization_scale_invariant(l in -0.9f64..5.0, c in 1e-3f64..1e3) {
        let g = gegenbauer_rule(9, l, &PrecisionConfig::default(), false).unwrap();
        let scaled = g.rule.scaled_weights.unwrap();
        let (zero, positive) = (scaled[4], &scaled[5..]);
        let nodes = &g.rule.nodes[5..];
        let omx: Vec<f64> = nodes.iter().map(|x| 1.0 - x).collect();
        let times = |k: f64| -> Vec<f64> { positive.iter().map(|w| w * k).collect() };
        let one = normalize_symmetric(nodes, &omx, &times(1.0), l, Some(zero), false).unwrap();
        let other = normalize_symmetric(nodes, &omx, &times(c), l, Some(zero * c), false).unwrap();
        for (p, q) in one.positive.iter().zip(&other.positive) {
            prop_assert!(((p - q) / p).abs() <= 4.0 * EPS);
        }
    }

    #[test]
    fn mass_symmetric_in_exponents(a in -0.99f64..400.0, b in -0.99f64..400.0) {
        prop_assert_eq!(log_moment0(a, b), log_moment0(b, a));
    }

    #[test]
    fn scaled_power_matches_powf(c in 1e-3f64..2.0, a in -0.99f64..100.0) {
        let want = c.powf(a);
        prop_assume!(want.is_normal());
        prop_assert!(((Scaled::pow(c, a).to_f64() - want) / want).abs() <= 4.0 * EPS);
    }

    #[test]
    fn scaled_product_extends_range(c in 1e-3f64..0.5, a in 100.0f64..2000.0) {
        let s = Scaled::pow(c, a) * Scaled::pow(1.0 / c, a);
        // 1/c is rounded, which costs up to a/2 ulps
        prop_assert!((s.to_f64() - 1.0).abs() <= (a + 8.0) * EPS);
    }
}
