//! Library results against independent computations.

mod common;

use common::{c, contour_zero_count, flood_fill_partition, levels_avoiding, random_poly, rng};
use lemnikit::capacity::{self, CondenserSpec, SolverParams};
use lemnikit::level::{LevelTracer, TraceParams};
use lemnikit::topology::{self, TopologyParams};
use lemnikit::{poly, Complex64, Polynomial};
use rand::Rng;

#[test]
fn roots_reproduce_coefficients() {
    let mut r = rng(11);
    for degree in 1..=10 {
        let (p, truth) = random_poly(&mut r, degree);
        let roots = poly::find_roots(&p).unwrap();
        assert_eq!(roots.total_multiplicity(), degree);
        for z in &truth {
            let (_, d) = roots.nearest(*z);
            assert!(d < 1e-9, "degree {degree}: zero {z} missed by {d:e}");
        }
        let back = roots.reconstruct(p.leading()).unwrap();
        for (x, y) in back.coeffs().iter().zip(p.coeffs()) {
            assert!((x - y).norm() < 1e-9 * p.max_coeff_abs());
        }
    }
}

#[test]
fn critical_points_have_the_centroid_of_the_zeros() {
    let mut r = rng(12);
    for degree in 2..=9 {
        let (p, truth) = random_poly(&mut r, degree);
        let crit = poly::critical_points(&p).unwrap();
        let count: usize = crit.iter().map(|k| k.multiplicity).sum();
        assert_eq!(count, degree - 1);
        let sum: Complex64 = crit.iter().map(|k| k.location * k.multiplicity as f64).sum();
        let zeros: Complex64 = truth.iter().sum();
        let centroid = zeros / degree as f64;
        assert!((sum / (degree - 1) as f64 - centroid).norm() < 1e-9);
        for k in &crit {
            assert!((p.eval(k.location).norm() - k.critical_value).abs() < 1e-9 * (1.0 + k.critical_value));
        }
    }
}

#[test]
fn traced_curves_enclose_what_the_contour_integral_counts() {
    let mut r = rng(13);
    for _ in 0..12 {
        let degree = r.gen_range(2..=7);
        let (p, truth) = random_poly(&mut r, degree);
        let tracer = LevelTracer::new(&p, TraceParams::default()).unwrap();
        let tree = topology::build_merge_tree(&p).unwrap();
        let crit: Vec<f64> = tree.critical_levels[1..tree.critical_levels.len() - 1].to_vec();
        for t in levels_avoiding(1e-2, 1e2, 3, &crit, 0.1) {
            for comp in tree.components_at_level(t, &TopologyParams::default()).unwrap() {
                let curve = tracer.trace_around(comp.anchor_zero, t).unwrap();
                let by_integral = contour_zero_count(&p, &curve.points);
                let by_polygon = truth.iter().filter(|z| curve.contains(**z)).count() as i64;
                assert!((by_integral - curve.enclosed_zero_count as f64).abs() < 0.05);
                assert_eq!(by_polygon, curve.enclosed_zero_count);
                assert_eq!(curve.enclosed_zero_count as usize, comp.multiplicity());
                for z in &curve.points {
                    assert!((p.eval(*z).norm() / t - 1.0).abs() < 1e-8);
                }
            }
        }
    }
}

#[test]
fn components_match_a_grid_flood_fill() {
    let mut r = rng(14);
    for _ in 0..8 {
        let degree = r.gen_range(2..=6);
        let (p, truth) = random_poly(&mut r, degree);
        let tree = topology::build_merge_tree(&p).unwrap();
        let crit: Vec<f64> = tree.critical_levels[1..tree.critical_levels.len() - 1].to_vec();
        for t in levels_avoiding(1e-2, 1e2, 4, &crit, 0.2) {
            let comps = tree.components_at_level(t, &TopologyParams::default()).unwrap();
            let mut ours: Vec<Vec<usize>> = comps
                .iter()
                .map(|comp| {
                    let mut ids: Vec<usize> = truth
                        .iter()
                        .enumerate()
                        .filter(|(_, z)| comp.zero_members.iter().any(|m| (m.location - **z).norm() < 1e-6))
                        .map(|(i, _)| i)
                        .collect();
                    ids.sort();
                    ids
                })
                .collect();
            ours.sort();
            let margin = 2f64.max(1.1 * t.powf(1.0 / degree as f64));
            assert_eq!(ours, flood_fill_partition(&p, &truth, t, 384, margin), "level {t}");
        }
    }
}

#[test]
fn lemniscate_of_z_squared_minus_one_splits_at_one() {
    let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
    let tree = topology::build_merge_tree(&p).unwrap();
    assert_eq!(tree.merge_events.len(), 1);
    assert!((tree.merge_events[0].level - 1.0).abs() < 1e-12);
    assert_eq!(tree.component_count(0.99), 2);
    assert_eq!(tree.component_count(1.01), 1);
}

#[test]
fn coarse_annulus_is_within_grid_error_of_the_closed_form() {
    let spec = CondenserSpec::annulus(c(0.0, 0.0), 1.0, 3.0);
    let est = capacity::capacity(&spec, &[64, 128], &SolverParams::default()).unwrap();
    let exact = capacity::annulus_capacity(1.0, 3.0);
    assert!((est.value / exact - 1.0).abs() < 2e-2, "{} vs {exact}", est.value);
}
