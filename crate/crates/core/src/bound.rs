//! Checks of `|(z - a) P'(z) / P(z)| <= n` on lemniscate components, of the
//! polar-derivative corollary, and of the inverse-branch inequality
//! `|w f'(w) / (f(w) - a)| >= 1/n`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::BoundingBox;
use crate::level::{LevelCurve, LevelTracer, TraceParams};
use crate::poly::{self, Polynomial};
use crate::topology::{self, Component};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    /// Relative slack on `n` before a sample counts as a violation.
    pub verify_tol: f64,
    /// `P(z) > 0` means `|Im P| <= positivity_tol |P|` and `Re P > 0`.
    pub positivity_tol: f64,
    /// Required `|P(f(w)) - w| / |w|` along inverse-branch paths.
    pub continuation_tol: f64,
    /// Continuation stops once `|P'(f)|` falls below this (relative to `max|coeff|`).
    pub derivative_floor: f64,
    /// RK4 substeps between consecutive recorded samples.
    pub substeps: usize,
    pub trace: TraceParams,
}

impl Default for BoundParams {
    fn default() -> Self {
        Self {
            verify_tol: 1e-9,
            positivity_tol: 1e-12,
            continuation_tol: 1e-12,
            derivative_floor: 1e-10,
            substeps: 8,
            trace: TraceParams::default(),
        }
    }
}

/// Where the bound is sampled on a component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    /// Boundary curves at `tau * 2^-j` for this many values of `j`.
    pub sublevels: usize,
    pub min_boundary_samples: usize,
    pub interior_samples: usize,
    pub max_interior_attempts: usize,
    pub seed: u64,
    /// Extra points evaluated verbatim (e.g. the point z = 2 of the classic counterexample).
    pub probes: Vec<Complex64>,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        Self {
            sublevels: 5,
            min_boundary_samples: 256,
            interior_samples: 1000,
            max_interior_attempts: 400_000,
            seed: 0x1e3,
            probes: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SampleOrigin {
    Boundary { level: f64 },
    Interior,
    /// A caller-supplied point; only probes inside the component enter the verdict.
    Probe { inside: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSample {
    pub z: Complex64,
    pub value: f64,
    pub origin: SampleOrigin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    Violated,
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub polynomial: Polynomial,
    pub component_id: usize,
    pub level: f64,
    pub n: usize,
    pub anchor: Complex64,
    pub eligible: bool,
    pub boundary_sample_count: usize,
    pub interior_sample_count: usize,
    pub skipped_levels: Vec<f64>,
    pub max_bound: f64,
    pub argmax_z: Complex64,
    pub verdict: Verdict,
    pub slack: f64,
    pub probes: Vec<BoundSample>,
    pub samples: Vec<BoundSample>,
    /// The traced boundary curves the samples came from.
    #[serde(skip)]
    pub curves: Vec<LevelCurve>,
}

/// `BoundReport` without the sample list, for non-verbose output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub component_id: usize,
    pub level: f64,
    pub n: usize,
    pub anchor: Complex64,
    pub eligible: bool,
    pub boundary_sample_count: usize,
    pub interior_sample_count: usize,
    pub skipped_levels: Vec<f64>,
    pub max_bound: f64,
    pub argmax_z: Complex64,
    pub verdict: Verdict,
    pub slack: f64,
    pub probes: Vec<BoundSample>,
}

impl BoundReport {
    pub fn summary(&self) -> BoundSummary {
        BoundSummary {
            component_id: self.component_id,
            level: self.level,
            n: self.n,
            anchor: self.anchor,
            eligible: self.eligible,
            boundary_sample_count: self.boundary_sample_count,
            interior_sample_count: self.interior_sample_count,
            skipped_levels: self.skipped_levels.clone(),
            max_bound: self.max_bound,
            argmax_z: self.argmax_z,
            verdict: self.verdict,
            slack: self.slack,
            probes: self.probes.clone(),
        }
    }
}

/// Inserts corrected midpoints until the curve has at least `min` samples.
fn densify(p: &Polynomial, curve: &mut LevelCurve, min: usize) {
    let t = curve.level;
    while curve.points.len() < min {
        let pts = &curve.points;
        let mut out = Vec::with_capacity(2 * pts.len());
        for k in 0..pts.len() {
            let a = pts[k];
            let b = pts[(k + 1) % pts.len()];
            out.push(a);
            let mut m = (a + b) * 0.5;
            for _ in 0..20 {
                let (v, dv) = p.eval_with_derivative(m);
                let gap = v.norm().ln() - t.ln();
                if gap.abs() < 1e-14 {
                    break;
                }
                m -= gap / (dv / v);
            }
            out.push(m);
        }
        curve.points = out;
    }
}

/// True when `z` lies in the closed sublevel set and descends to a zero of `component`.
fn probe_inside(tracer: &LevelTracer<'_>, component: &Component, z: Complex64, params: &BoundParams) -> bool {
    let p = tracer.poly();
    if p.eval(z).norm() > component.level * (1.0 + params.verify_tol) {
        return false;
    }
    let roots = tracer.roots();
    let Ok(idx) = topology::descent_to_zero(p, roots, z, PROBE_DESCENT_STEPS) else {
        return false;
    };
    let zero = roots.roots[idx].location;
    component
        .zero_members
        .iter()
        .any(|r| (r.location - zero).norm() <= 1e-6 * (1.0 + zero.norm()))
}

const PROBE_DESCENT_STEPS: usize = 20_000;

/// Samples the bound on `component` and decides the verdict.
pub fn verify_theorem(
    p: &Polynomial,
    component: &Component,
    plan: &SamplingPlan,
    params: &BoundParams,
) -> Result<BoundReport> {
    let tracer = LevelTracer::new(p, params.trace.clone())?;
    verify_theorem_with(&tracer, component, plan, params)
}

pub fn verify_theorem_with(
    tracer: &LevelTracer<'_>,
    component: &Component,
    plan: &SamplingPlan,
    params: &BoundParams,
) -> Result<BoundReport> {
    let p = tracer.poly();
    let a = component.anchor_zero;
    let tau = component.level;
    let n = p.degree();

    let mut samples = Vec::new();
    let mut curves = Vec::new();
    let mut skipped_levels = Vec::new();
    let mut j = 0;
    while curves.len() < plan.sublevels && j < 4 * plan.sublevels.max(1) {
        let level = tau * 0.5f64.powi(j as i32);
        j += 1;
        if tracer.near_critical(level).is_some() {
            skipped_levels.push(level);
            continue;
        }
        let mut curve = tracer.trace_around(a, level)?;
        densify(p, &mut curve, plan.min_boundary_samples);
        for &z in &curve.points {
            if let Ok(value) = poly::bound_value(p, a, z) {
                samples.push(BoundSample {
                    z,
                    value,
                    origin: SampleOrigin::Boundary { level },
                });
            }
        }
        curves.push(curve);
    }
    let boundary_sample_count = samples.len();

    let mut interior_sample_count = 0;
    if let Some(outer) = curves.iter().find(|c| c.level == tau) {
        let bb = BoundingBox::of(outer.points.iter().copied()).expect("traced curves are nonempty");
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed.wrapping_add(component.id as u64));
        let mut attempts = 0;
        while interior_sample_count < plan.interior_samples && attempts < plan.max_interior_attempts {
            attempts += 1;
            let z = Complex64::new(
                rng.gen_range(bb.min.re..=bb.max.re),
                rng.gen_range(bb.min.im..=bb.max.im),
            );
            if !outer.contains(z) {
                continue;
            }
            if let Ok(value) = poly::bound_value(p, a, z) {
                samples.push(BoundSample {
                    z,
                    value,
                    origin: SampleOrigin::Interior,
                });
                interior_sample_count += 1;
            }
        }
    }

    let mut probes = Vec::new();
    for &z in &plan.probes {
        if let Ok(value) = poly::bound_value(p, a, z) {
            let inside = probe_inside(tracer, component, z, params);
            let sample = BoundSample {
                z,
                value,
                origin: SampleOrigin::Probe { inside },
            };
            probes.push(sample);
            if inside {
                samples.push(sample);
            }
        }
    }

    let (max_bound, argmax_z) = samples
        .iter()
        .map(|s| (s.value, s.z))
        .max_by(|x, y| x.0.total_cmp(&y.0))
        .unwrap_or((f64::NAN, a));
    let limit = n as f64 * (1.0 + params.verify_tol);
    let verdict = match (component.eligible, samples.is_empty()) {
        (false, _) | (true, true) => Verdict::Inapplicable,
        (true, false) if max_bound <= limit => Verdict::Holds,
        (true, false) => Verdict::Violated,
    };
    Ok(BoundReport {
        polynomial: p.clone(),
        component_id: component.id,
        level: tau,
        n,
        anchor: a,
        eligible: component.eligible,
        boundary_sample_count,
        interior_sample_count,
        skipped_levels,
        max_bound,
        argmax_z,
        verdict,
        slack: n as f64 - max_bound,
        probes,
        samples,
        curves,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryCheck {
    pub z: Complex64,
    pub applicable: bool,
    pub re_polar: f64,
    /// `n P(z) (1 - Re[(z - a) P'(z) / (n P(z))])`, equal to `re_polar` when `P(z) > 0`.
    pub via_bound: f64,
    /// Present only when applicable.
    pub holds: Option<bool>,
}

/// `Re D_a P(z) >= 0` at a point of an eligible component where `P(z) > 0`.
pub fn verify_corollary(
    p: &Polynomial,
    component: &Component,
    z: Complex64,
    params: &BoundParams,
) -> CorollaryCheck {
    let a = component.anchor_zero;
    let (v, dv) = p.eval_with_derivative(z);
    let positive = v.re > 0.0 && v.im.abs() <= params.positivity_tol * v.norm();
    let applicable = component.eligible && positive;
    let re_polar = poly::polar_derivative(p, a, z).re;
    let n = p.degree() as f64;
    let via_bound = if v.norm() > 0.0 {
        n * v.re * (1.0 - ((z - a) * dv / (v * n)).re)
    } else {
        0.0
    };
    let scale = n * v.norm();
    CorollaryCheck {
        z,
        applicable,
        re_polar,
        via_bound,
        holds: applicable.then(|| re_polar >= -params.verify_tol * scale.max(f64::MIN_POSITIVE)),
    }
}

/// Points of a traced curve where `P` is real and positive, i.e. where
/// `arg P` crosses zero, polished by Newton on `P(z) = level`.
pub fn positive_points(p: &Polynomial, curve: &LevelCurve) -> Vec<Complex64> {
    let t = curve.level;
    let pts = &curve.points;
    let mut out = Vec::new();
    for k in 0..pts.len() {
        let a = pts[k];
        let b = pts[(k + 1) % pts.len()];
        let (va, vb) = (p.eval(a).arg(), p.eval(b).arg());
        if va <= 0.0 && vb > 0.0 && vb - va < std::f64::consts::PI {
            let frac = -va / (vb - va);
            let mut z = a + (b - a) * frac;
            for _ in 0..30 {
                let (v, dv) = p.eval_with_derivative(z);
                let gap = v - t;
                if gap.norm() <= 1e-15 * t {
                    break;
                }
                z -= gap / dv;
            }
            out.push(z);
        }
    }
    out
}

/// Samples of a branch `f` of `P^{-1}` with `f(0) = a` along a radius of the unit disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InverseBranchPath {
    pub a: Complex64,
    pub direction: Complex64,
    pub w_samples: Vec<Complex64>,
    pub f_values: Vec<Complex64>,
    pub derivative_values: Vec<Complex64>,
}

/// Continues `f` along `w = s * direction`, `s = k / (radius_steps + 1)`,
/// integrating `f' = 1 / P'(f)` with RK4 and re-projecting onto `P(f) = w`.
pub fn continue_inverse_branch(
    p: &Polynomial,
    a: Complex64,
    direction: Complex64,
    radius_steps: usize,
    params: &BoundParams,
) -> Result<InverseBranchPath> {
    let direction = direction / direction.norm();
    let floor = params.derivative_floor * p.max_coeff_abs();
    let deriv = |f: Complex64, w: Complex64| -> Result<Complex64> {
        let dv = p.eval_with_derivative(f).1;
        if dv.norm() < floor {
            return Err(Error::CriticalPointHit {
                w,
                derivative: dv.norm(),
            });
        }
        Ok(dv)
    };
    deriv(a, Complex64::new(0.0, 0.0))?;

    let mut path = InverseBranchPath {
        a,
        direction,
        w_samples: Vec::with_capacity(radius_steps),
        f_values: Vec::with_capacity(radius_steps),
        derivative_values: Vec::with_capacity(radius_steps),
    };
    let ds = 1.0 / ((radius_steps + 1) * params.substeps.max(1)) as f64;
    let mut f = a;
    let mut s = 0.0;
    for k in 1..=radius_steps {
        for _ in 0..params.substeps.max(1) {
            let w = direction * s;
            let h = direction * ds;
            let k1 = h / deriv(f, w)?;
            let k2 = h / deriv(f + k1 * 0.5, w + h * 0.5)?;
            let k3 = h / deriv(f + k2 * 0.5, w + h * 0.5)?;
            let k4 = h / deriv(f + k3, w + h)?;
            let predicted = f + (k1 + k2 * 2.0 + k3 * 2.0 + k4) / 6.0;
            s += ds;
            let target = direction * s;
            f = project(p, predicted, target, params, (k1).norm())?;
        }
        let w = direction * (k as f64 / (radius_steps + 1) as f64);
        let dv = deriv(f, w)?;
        if let Some(&last) = path.f_values.last() {
            if (f - last).norm() <= params.continuation_tol {
                return Err(Error::ContinuationDiverged { w });
            }
        }
        path.w_samples.push(w);
        path.f_values.push(f);
        path.derivative_values.push(dv.inv());
    }
    Ok(path)
}

fn project(
    p: &Polynomial,
    start: Complex64,
    w: Complex64,
    params: &BoundParams,
    step: f64,
) -> Result<Complex64> {
    let mut f = start;
    for _ in 0..12 {
        let (v, dv) = p.eval_with_derivative(f);
        let gap = v - w;
        let floor = 16.0 * f64::EPSILON * p.abs_scale_at(f);
        if gap.norm() <= (params.continuation_tol * w.norm()).max(floor) {
            if (f - start).norm() > step + 1e-12 {
                break;
            }
            return Ok(f);
        }
        f -= gap / dv;
    }
    Err(Error::ContinuationDiverged { w })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InverseBound {
    pub min_ratio: f64,
    pub holds: bool,
}

/// `min |w f'(w) / (f(w) - a)|` over the path, compared against `1/n`.
pub fn verify_inverse_bound(path: &InverseBranchPath, n: usize, verify_tol: f64) -> InverseBound {
    let min_ratio = inverse_ratios(path).fold(f64::INFINITY, f64::min);
    InverseBound {
        min_ratio,
        holds: min_ratio >= 1.0 / n as f64 - verify_tol,
    }
}

pub fn inverse_ratios(path: &InverseBranchPath) -> impl Iterator<Item = f64> + '_ {
    path.w_samples
        .iter()
        .zip(&path.f_values)
        .zip(&path.derivative_values)
        .map(move |((&w, &f), &df)| (w * df / (f - path.a)).norm())
}

/// Largest `| ratio * bound_value(P, a, f(w)) - 1 |` along the path.
pub fn reciprocal_defect(p: &Polynomial, path: &InverseBranchPath) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (ratio, &f) in inverse_ratios(path).zip(&path.f_values) {
        let b = poly::bound_value(p, path.a, f)?;
        worst = worst.max((ratio * b - 1.0).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{build_merge_tree, TopologyParams};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn counterexample() -> Polynomial {
        Polynomial::from_real(&[0.0, 0.0, -0.75, 0.5]).unwrap()
    }

    fn zsq_minus_one() -> Polynomial {
        Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap()
    }

    fn components(p: &Polynomial, tau: f64) -> Vec<Component> {
        build_merge_tree(p)
            .unwrap()
            .components_at_level(tau, &TopologyParams::default())
            .unwrap()
    }

    #[test]
    fn monomial_attains_equality() {
        let p = Polynomial::monomial(c(2.0, 1.0), 4).unwrap();
        let comp = &components(&p, 1.0)[0];
        let report = verify_theorem(&p, comp, &SamplingPlan::default(), &BoundParams::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!(report.samples.iter().all(|s| (s.value - 4.0).abs() <= 4e-12));
        assert!(report.slack.abs() < 1e-12);
        assert!(report.boundary_sample_count >= 5 * 256);
        assert_eq!(report.interior_sample_count, 1000);
    }

    #[test]
    fn probes_in_another_component_do_not_vote() {
        let p = zsq_minus_one();
        let comps = components(&p, 0.5);
        let right = comps.iter().find(|c| c.anchor_zero.re > 0.0).unwrap();
        let plan = SamplingPlan {
            probes: vec![c(-1.1, 0.0), c(1.1, 0.0)],
            ..SamplingPlan::default()
        };
        let report = verify_theorem(&p, right, &plan, &BoundParams::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert_eq!(report.probes[0].origin, SampleOrigin::Probe { inside: false });
        assert!(report.probes[0].value > 2.0);
        assert_eq!(report.probes[1].origin, SampleOrigin::Probe { inside: true });
    }

    #[test]
    fn counterexample_is_inapplicable_with_six_at_two() {
        let p = counterexample();
        let comp = &components(&p, 1.0)[0];
        let plan = SamplingPlan {
            probes: vec![c(2.0, 0.0)],
            ..SamplingPlan::default()
        };
        let report = verify_theorem(&p, comp, &plan, &BoundParams::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Inapplicable);
        assert_eq!(report.probes.len(), 1);
        assert_eq!(report.probes[0].value, 6.0);
        assert!(report.max_bound > 3.0);
        // tau / 4 = 1/4 is the critical value and is skipped.
        assert_eq!(report.skipped_levels, vec![0.25]);
    }

    #[test]
    fn small_component_of_counterexample_holds() {
        let p = counterexample();
        let comps = components(&p, 0.2);
        let report = verify_theorem(&p, &comps[1], &SamplingPlan::default(), &BoundParams::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
        assert!(report.max_bound <= 3.0);
        assert!(report.slack > 0.0);
    }

    #[test]
    fn corollary_examples() {
        let params = BoundParams::default();
        let p = Polynomial::monomial(c(1.0, 0.0), 3).unwrap();
        let comp = &components(&p, 1.0)[0];
        let z = Complex64::from_polar(0.8, std::f64::consts::TAU / 3.0);
        let check = verify_corollary(&p, comp, z, &params);
        assert!(check.applicable);
        assert!(check.re_polar.abs() < 1e-15);

        let p = zsq_minus_one();
        let comps = components(&p, 0.5);
        let right = comps.iter().find(|c| c.anchor_zero.re > 0.0).unwrap();
        let check = verify_corollary(&p, right, c(1.2, 0.0), &params);
        assert!(check.applicable);
        assert!((check.re_polar - 0.40).abs() < 1e-14);
        assert_eq!(check.holds, Some(true));
        assert!((check.via_bound - check.re_polar).abs() < 1e-14);

        let check = verify_corollary(&p, right, c(1.0, 0.1), &params);
        assert!(!check.applicable);
        assert_eq!(check.holds, None);
    }

    #[test]
    fn positive_points_on_oval() {
        let p = zsq_minus_one();
        let tracer = LevelTracer::new(&p, TraceParams::default()).unwrap();
        let curve = tracer.trace_around(c(1.0, 0.0), 0.5).unwrap();
        let pts = positive_points(&p, &curve);
        assert_eq!(pts.len(), 1);
        assert!((pts[0] - c(1.5f64.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn inverse_branch_examples() {
        let params = BoundParams::default();
        let id = Polynomial::from_real(&[0.0, 1.0]).unwrap();
        let path = continue_inverse_branch(&id, c(0.0, 0.0), c(0.0, 1.0), 16, &params).unwrap();
        for (w, f) in path.w_samples.iter().zip(&path.f_values) {
            assert!((w - f).norm() < 1e-14);
        }
        let b = verify_inverse_bound(&path, 1, params.verify_tol);
        assert!((b.min_ratio - 1.0).abs() < 1e-12 && b.holds);

        let p = zsq_minus_one();
        let path = continue_inverse_branch(&p, c(1.0, 0.0), c(1.0, 0.0), 63, &params).unwrap();
        // s = 32 / 64 = 0.5
        let f = path.f_values[31];
        assert!((path.w_samples[31] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((f - c(1.5f64.sqrt(), 0.0)).norm() < 1e-12);
        let ratio = inverse_ratios(&path).nth(31).unwrap();
        let expected = 0.5 / (2.0 * 1.5f64.sqrt() * (1.5f64.sqrt() - 1.0));
        assert!((ratio - expected).abs() < 1e-12);
        assert!((expected - 0.9082).abs() < 1e-4);
        assert!(verify_inverse_bound(&path, 2, params.verify_tol).holds);
        assert!(reciprocal_defect(&p, &path).unwrap() < 1e-9);

        let path = continue_inverse_branch(&p, c(-1.0, 0.0), c(1.0, 0.0), 63, &params).unwrap();
        assert!((path.f_values[31] + c(1.5f64.sqrt(), 0.0)).norm() < 1e-12);
        // Near w = 0 the ratio tends to one.
        assert!((inverse_ratios(&path).next().unwrap() - 1.0).abs() < 0.01);
    }

    #[test]
    fn inverse_branch_refuses_multiple_zero() {
        let p = Polynomial::monomial(c(1.0, 0.0), 3).unwrap();
        assert!(matches!(
            continue_inverse_branch(&p, c(0.0, 0.0), c(1.0, 0.0), 8, &BoundParams::default()),
            Err(Error::CriticalPointHit { .. })
        ));
        // From +1 toward w = -1 the branch of z^2 - 1 runs into the saddle at 0.
        assert!(continue_inverse_branch(
            &zsq_minus_one(),
            c(1.0, 0.0),
            c(-1.0, 0.0),
            200,
            &BoundParams::default()
        )
        .is_ok_and(|p| p.f_values.last().unwrap().re > 0.0));
    }
}
