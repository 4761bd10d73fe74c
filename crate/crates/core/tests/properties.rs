//! Invariants checked over random polynomials.

mod common;

use common::c;
use lemnikit::level::{LevelTracer, TraceParams};
use lemnikit::topology::{self, TopologyParams};
use lemnikit::{poly, Complex64, Polynomial};
use proptest::prelude::*;

fn zeros(max_degree: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 1..=max_degree)
        .prop_map(|v| v.into_iter().map(|(re, im)| c(re, im)).collect())
}

fn point() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| c(re, im))
}

fn scale() -> impl Strategy<Value = Complex64> {
    (0.1..10.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Zeros pairwise at least `gap` apart, so root finding is well conditioned.
fn separated(z: &[Complex64], gap: f64) -> bool {
    z.iter()
        .enumerate()
        .all(|(i, a)| z[i + 1..].iter().all(|b| (a - b).norm() >= gap))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bound_is_invariant_under_scaling(z in zeros(7), lead in scale(), s in scale(), at in point()) {
        let p = Polynomial::from_roots(lead, &z).unwrap();
        let q = p.scaled(s).unwrap();
        let a = z[0];
        if let (Ok(x), Ok(y)) = (poly::bound_value(&p, a, at), poly::bound_value(&q, a, at)) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x));
        }
    }

    #[test]
    fn polar_identity(z in zeros(7), a in point(), at in point()) {
        let p = Polynomial::from_roots(c(1.0, 0.0), &z).unwrap();
        let (v, dv) = p.eval_with_derivative(at);
        prop_assume!(v.norm() > 1e-6);
        let n = p.degree() as f64;
        let lhs = poly::polar_derivative(&p, a, at) / v;
        let rhs = c(n, 0.0) - (at - a) * dv / v;
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn roots_round_trip(z in zeros(8), lead in scale()) {
        prop_assume!(separated(&z, 1e-2));
        let p = Polynomial::from_roots(lead, &z).unwrap();
        let found = poly::find_roots(&p).unwrap();
        prop_assert_eq!(found.total_multiplicity(), z.len());
        for w in &z {
            prop_assert!(found.nearest(*w).1 < 1e-7);
        }
    }

    #[test]
    fn critical_points_count_degree_minus_one(z in zeros(8)) {
        prop_assume!(z.len() >= 2);
        let p = Polynomial::from_roots(c(1.0, 0.0), &z).unwrap();
        let crit = poly::critical_points(&p).unwrap();
        prop_assert_eq!(crit.iter().map(|k| k.multiplicity).sum::<usize>(), z.len() - 1);
    }

    #[test]
    fn components_nest_and_count(z in zeros(6), u in 0.0..1.0f64, v in 0.0..1.0f64) {
        prop_assume!(separated(&z, 1e-2));
        let p = Polynomial::from_roots(c(1.0, 0.0), &z).unwrap();
        let tree = topology::build_merge_tree(&p).unwrap();
        let params = TopologyParams::default();
        let (lo, hi) = (1e-3 * 1e5f64.powf(u.min(v)), 1e-3 * 1e5f64.powf(u.max(v)));
        prop_assume!(tree.near_critical(lo, 1e-3).is_none() && tree.near_critical(hi, 1e-3).is_none());
        let small = tree.components_at_level(lo, &params).unwrap();
        let large = tree.components_at_level(hi, &params).unwrap();
        for s in &small {
            let hosts = large.iter().filter(|l| s.zero_ids.iter().all(|id| l.zero_ids.contains(id))).count();
            prop_assert_eq!(hosts, 1);
        }
        for t in [lo, hi] {
            let merges: usize = tree
                .merge_events
                .iter()
                .filter(|e| e.level < t)
                .map(|e| e.groups.len() - 1)
                .sum();
            prop_assert_eq!(tree.component_count(t), tree.zeros.len() - merges);
        }
        prop_assert_eq!(small.len(), tree.component_count(lo));
        prop_assert_eq!(large.len(), tree.component_count(hi));
        let total: usize = small.iter().map(|s| s.multiplicity()).sum();
        prop_assert_eq!(total, z.len());
    }

    #[test]
    fn argument_increment_counts_enclosed_zeros(z in zeros(5), u in 0.0..1.0f64) {
        prop_assume!(separated(&z, 5e-2));
        let p = Polynomial::from_roots(c(1.0, 0.0), &z).unwrap();
        let tree = topology::build_merge_tree(&p).unwrap();
        let t = 1e-2 * 1e3f64.powf(u);
        prop_assume!(tree.near_critical(t, 1e-2).is_none());
        let tracer = LevelTracer::new(&p, TraceParams::default()).unwrap();
        for comp in tree.components_at_level(t, &TopologyParams::default()).unwrap() {
            let curve = tracer.trace_around(comp.anchor_zero, t).unwrap();
            let turns = curve.argument_increment / std::f64::consts::TAU;
            prop_assert!((turns - comp.multiplicity() as f64).abs() < 1e-6);
        }
    }
}
