//! Merge tree of the sublevel sets `{|P| <= t}`.
//!
//! Components of a lemniscate only change at proper critical values. Each
//! saddle of `|P|` is connected to the zeros below it by steepest-descent
//! paths; a union-find over the zeros, replayed in ascending critical-value
//! order, gives the component partition at any non-critical level.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{self, CriticalPoint, Polynomial, Root, RootParams, RootSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopologyParams {
    /// Offset of descent starts from a saddle, relative to the local root-separation scale.
    pub saddle_offset: f64,
    /// Levels within `critical_gap * t` of a merge level are refused.
    pub critical_gap: f64,
    /// Query points with `|P| <= t (1 + boundary_tol)` count as members.
    pub boundary_tol: f64,
    pub max_descent_steps: usize,
    pub roots: RootParams,
}

impl Default for TopologyParams {
    fn default() -> Self {
        Self {
            saddle_offset: 1e-4,
            critical_gap: 1e-4,
            boundary_tol: 1e-9,
            max_descent_steps: 20_000,
            roots: RootParams::default(),
        }
    }
}

#[derive(Clone, Debug)]
struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != node {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Keeps the smaller index as representative so group ids are stable.
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// A proper critical point and the zeros its descent paths reach.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Saddle {
    pub critical: CriticalPoint,
    /// Indices into `MergeTree::zeros`, sorted and distinct.
    pub reached: Vec<usize>,
    /// Set when every descent landed in one group, so the saddle merged nothing.
    pub ambiguous: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MergeEvent {
    pub level: f64,
    /// Representatives (smallest zero index) of the groups joined here.
    pub groups: Vec<usize>,
    pub saddle: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MergeTree {
    pub zeros: RootSet,
    pub saddles: Vec<Saddle>,
    pub merge_events: Vec<MergeEvent>,
    /// `0`, the distinct proper critical values, then `+inf` (serialized as `null`).
    pub critical_levels: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub id: usize,
    pub level: f64,
    pub zero_ids: Vec<usize>,
    pub zero_members: Vec<Root>,
    pub proper_criticals_inside: Vec<CriticalPoint>,
    pub eligible: bool,
    /// The unique zero when eligible; otherwise the member of highest multiplicity.
    pub anchor_zero: Complex64,
    pub anchor_id: usize,
}

impl Component {
    pub fn multiplicity(&self) -> usize {
        self.zero_members.iter().map(|r| r.multiplicity).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Location {
    Inside(Component),
    Outside,
}

/// Follows the steepest descent of `|P|` from `start` to a zero and returns
/// that zero's index in `roots`.
///
/// The path is the curve on which `arg P` is constant; each step asks for
/// `P(z_next) = P(z) e^{-ds}` with an Euler predictor and Newton corrector.
pub fn descent_to_zero(
    p: &Polynomial,
    roots: &RootSet,
    start: Complex64,
    max_steps: usize,
) -> Result<usize> {
    let n = p.degree() as f64;
    let stalled = || Error::FlowStalled { start };
    let captured = |z: Complex64| -> Option<usize> {
        let (idx, d) = roots.nearest(z);
        let sep = roots.separation(idx);
        (!sep.is_finite() || d <= sep / (2.0 * n)).then_some(idx)
    };

    let w0 = p.eval(start);
    if poly::is_numerical_zero(p, start, w0) {
        return Ok(roots.nearest(start).0);
    }
    let mut z = start;
    // Step length measured in the z-plane; converted to the flow parameter each step.
    let mut h = 0.1 * roots.nearest(start).1;
    for _ in 0..max_steps {
        if let Some(idx) = captured(z) {
            return Ok(idx);
        }
        let (v, dv) = p.eval_with_derivative(z);
        if poly::is_numerical_zero(p, z, v) {
            return Ok(roots.nearest(z).0);
        }
        let newton = v / dv;
        if !newton.re.is_finite() {
            return Err(stalled());
        }
        loop {
            if h < 1e-14 * (1.0 + z.norm()) {
                return Err(stalled());
            }
            let ds = h / newton.norm();
            let predicted = z - newton * ds;
            let target = v * (-ds).exp();
            let tol = (1e-3 * (v - target).norm()).max(16.0 * f64::EPSILON * p.abs_scale_at(z));
            let mut w = predicted;
            let mut ok = false;
            for it in 0..6 {
                let (vw, dvw) = p.eval_with_derivative(w);
                let gap = vw - target;
                if gap.norm() <= tol || poly::is_numerical_zero(p, w, vw) {
                    ok = it <= 3;
                    break;
                }
                if dvw.norm() == 0.0 {
                    break;
                }
                w -= gap / dvw;
            }
            if ok && w.re.is_finite() && (w - predicted).norm() <= 0.25 * h {
                z = w;
                h *= 1.5;
                break;
            }
            h *= 0.5;
        }
    }
    Err(stalled())
}

/// Location of the zero reached by steepest descent from `start`.
pub fn descent_flow(p: &Polynomial, start: Complex64) -> Result<Complex64> {
    let params = TopologyParams::default();
    let roots = poly::find_roots_with(p, &params.roots)?;
    let idx = descent_to_zero(p, &roots, start, params.max_descent_steps)?;
    Ok(roots.roots[idx].location)
}

/// Unit directions of steepest descent of `|P|` at a critical point of
/// multiplicity `m`: solutions of `c d^{m+1} ∝ -P(zeta)` with
/// `c = P^{(m+1)}(zeta) / (m+1)!`.
pub fn descent_directions(p: &Polynomial, critical: &CriticalPoint) -> Vec<Complex64> {
    let m = critical.multiplicity;
    let zeta = critical.location;
    let order = m + 1;
    let factorial: f64 = (1..=order).map(|k| k as f64).product();
    let lead = p.eval_nth_derivative(order, zeta) / factorial;
    let value = p.eval(zeta);
    if lead.norm() == 0.0 || value.norm() == 0.0 {
        return compass_directions(p, zeta, order);
    }
    let base = (-value / lead).powf(1.0 / order as f64);
    let base = base / base.norm();
    (0..order)
        .map(|j| base * Complex64::from_polar(1.0, TAU * j as f64 / order as f64))
        .collect()
}

/// Fallback: the `count` compass directions (out of 8k) where `|P|` drops most.
fn compass_directions(p: &Polynomial, zeta: Complex64, count: usize) -> Vec<Complex64> {
    let probes = 8 * count;
    let r = 1e-3 * (1.0 + zeta.norm());
    let mut dirs: Vec<(f64, Complex64)> = (0..probes)
        .map(|k| {
            let d = Complex64::from_polar(1.0, TAU * k as f64 / probes as f64);
            (p.eval(zeta + d * r).norm(), d)
        })
        .collect();
    dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
    dirs.into_iter().take(count).map(|x| x.1).collect()
}

pub fn build_merge_tree(p: &Polynomial) -> Result<MergeTree> {
    build_merge_tree_with(p, &TopologyParams::default())
}

pub fn build_merge_tree_with(p: &Polynomial, params: &TopologyParams) -> Result<MergeTree> {
    let zeros = poly::find_roots_with(p, &params.roots)?;
    let criticals = poly::critical_points_with(p, &params.roots)?;
    let mut proper: Vec<CriticalPoint> = criticals.iter().copied().filter(|c| c.is_proper()).collect();
    proper.sort_by(|a, b| {
        a.critical_value
            .total_cmp(&b.critical_value)
            .then(a.location.re.total_cmp(&b.location.re))
            .then(a.location.im.total_cmp(&b.location.im))
    });

    let mut saddles = Vec::with_capacity(proper.len());
    for cp in &proper {
        let local = zeros
            .locations()
            .chain(criticals.iter().filter(|o| o.location != cp.location).map(|o| o.location))
            .map(|z| (z - cp.location).norm())
            .fold(f64::INFINITY, f64::min);
        let eps = params.saddle_offset * local;
        let mut reached = Vec::new();
        for d in descent_directions(p, cp) {
            let mut landed = None;
            for nudge in [0.0, 1e-3, -1e-3, 1e-2, -1e-2] {
                let start = cp.location + d * Complex64::from_polar(eps, nudge);
                if let Ok(idx) = descent_to_zero(p, &zeros, start, params.max_descent_steps) {
                    landed = Some(idx);
                    break;
                }
            }
            reached.push(landed.ok_or(Error::FlowStalled { start: cp.location })?);
        }
        reached.sort_unstable();
        reached.dedup();
        saddles.push(Saddle {
            critical: *cp,
            reached,
            ambiguous: false,
        });
    }

    let mut dsu = DisjointSet::new(zeros.len());
    let mut merge_events = Vec::new();
    for (i, saddle) in saddles.iter_mut().enumerate() {
        let mut groups: Vec<usize> = saddle.reached.iter().map(|&z| dsu.find(z)).collect();
        groups.sort_unstable();
        groups.dedup();
        if groups.len() < 2 {
            saddle.ambiguous = true;
            continue;
        }
        for w in groups.windows(2) {
            dsu.union(w[0], w[1]);
        }
        merge_events.push(MergeEvent {
            level: saddle.critical.critical_value,
            groups,
            saddle: i,
        });
    }

    let mut critical_levels = vec![0.0];
    for s in &saddles {
        let v = s.critical.critical_value;
        if critical_levels.last().is_none_or(|&last| last != v) {
            critical_levels.push(v);
        }
    }
    critical_levels.push(f64::INFINITY);

    Ok(MergeTree {
        zeros,
        saddles,
        merge_events,
        critical_levels,
    })
}

impl MergeTree {
    /// Proper critical value within the critical gap of `tau`, if any.
    pub fn near_critical(&self, tau: f64, gap: f64) -> Option<f64> {
        self.saddles
            .iter()
            .map(|s| s.critical.critical_value)
            .find(|v| (v - tau).abs() <= gap * tau)
    }

    pub fn components_at_level(&self, tau: f64, params: &TopologyParams) -> Result<Vec<Component>> {
        if let Some(critical_value) = self.near_critical(tau, params.critical_gap) {
            return Err(Error::LevelAtCriticalValue {
                level: tau,
                critical_value,
            });
        }
        let mut dsu = DisjointSet::new(self.zeros.len());
        for ev in self.merge_events.iter().filter(|e| e.level < tau) {
            for w in ev.groups.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        let mut reps: Vec<usize> = (0..self.zeros.len()).map(|i| dsu.find(i)).collect();
        let group_of = reps.clone();
        reps.sort_unstable();
        reps.dedup();

        Ok(reps
            .iter()
            .enumerate()
            .map(|(id, &rep)| {
                let zero_ids: Vec<usize> = (0..self.zeros.len()).filter(|&i| group_of[i] == rep).collect();
                let zero_members: Vec<Root> = zero_ids.iter().map(|&i| self.zeros.roots[i]).collect();
                let proper_criticals_inside: Vec<CriticalPoint> = self
                    .saddles
                    .iter()
                    .filter(|s| s.critical.critical_value < tau)
                    .filter(|s| s.reached.iter().any(|z| group_of[*z] == rep))
                    .map(|s| s.critical)
                    .collect();
                let eligible = proper_criticals_inside.is_empty();
                if eligible {
                    assert_eq!(zero_ids.len(), 1, "eligible component with several distinct zeros");
                }
                let anchor_id = zero_ids
                    .iter()
                    .copied()
                    .max_by(|&a, &b| {
                        self.zeros.roots[a]
                            .multiplicity
                            .cmp(&self.zeros.roots[b].multiplicity)
                            .then(b.cmp(&a))
                    })
                    .expect("components hold at least one zero");
                Component {
                    id,
                    level: tau,
                    anchor_zero: self.zeros.roots[anchor_id].location,
                    anchor_id,
                    zero_ids,
                    zero_members,
                    proper_criticals_inside,
                    eligible,
                }
            })
            .collect())
    }

    /// The component containing `z` at level `tau`, found by descending to a zero.
    pub fn locate_point(
        &self,
        p: &Polynomial,
        z: Complex64,
        tau: f64,
        params: &TopologyParams,
    ) -> Result<Location> {
        if p.eval(z).norm() > tau * (1.0 + params.boundary_tol) {
            return Ok(Location::Outside);
        }
        let zero = descent_to_zero(p, &self.zeros, z, params.max_descent_steps)?;
        let comps = self.components_at_level(tau, params)?;
        Ok(comps
            .into_iter()
            .find(|c| c.zero_ids.contains(&zero))
            .map(Location::Inside)
            .unwrap_or(Location::Outside))
    }

    /// Smallest merge level involving the zero `id`; infinite if it never merges.
    pub fn first_merge_level(&self, id: usize) -> f64 {
        let mut dsu = DisjointSet::new(self.zeros.len());
        for ev in &self.merge_events {
            let before: Vec<usize> = ev.groups.iter().map(|&g| dsu.find(g)).collect();
            let mine = dsu.find(id);
            if before.contains(&mine) {
                return ev.level;
            }
            for w in ev.groups.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        f64::INFINITY
    }

    /// Number of components at a level, counted from the merge events alone.
    pub fn component_count(&self, tau: f64) -> usize {
        let joined: usize = self
            .merge_events
            .iter()
            .filter(|e| e.level < tau)
            .map(|e| e.groups.len() - 1)
            .sum();
        self.zeros.len() - joined
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn counterexample() -> Polynomial {
        Polynomial::from_real(&[0.0, 0.0, -0.75, 0.5]).unwrap()
    }

    fn zsq_minus_one() -> Polynomial {
        Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn descent_examples() {
        let p = zsq_minus_one();
        assert!((descent_flow(&p, c(0.1, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert!((descent_flow(&p, c(-0.1, 0.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-12);

        let p = counterexample();
        let mut hits: Vec<Complex64> = [c(1.0 - 1e-4, 0.0), c(1.0 + 1e-4, 0.0)]
            .iter()
            .map(|&s| descent_flow(&p, s).unwrap())
            .collect();
        hits.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!(hits[0].norm() < 1e-9);
        assert!((hits[1] - c(1.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn saddle_directions_point_downhill() {
        let p = zsq_minus_one();
        let cp = poly::critical_points(&p).unwrap()[0];
        let dirs = descent_directions(&p, &cp);
        assert_eq!(dirs.len(), 2);
        for d in dirs {
            // Real axis: |z^2 - 1| falls from 1 along +-1.
            assert!(d.im.abs() < 1e-12);
            assert!(p.eval(d * 1e-3).norm() < 1.0);
        }
        // z^3 - 1 has a double critical point at 0 with three descent directions.
        let p = Polynomial::from_real(&[-1.0, 0.0, 0.0, 1.0]).unwrap();
        let cp = poly::critical_points(&p).unwrap()[0];
        assert_eq!(cp.multiplicity, 2);
        let dirs = descent_directions(&p, &cp);
        assert_eq!(dirs.len(), 3);
        for d in dirs {
            assert!((d.powu(3) - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn merge_tree_examples() {
        let tree = build_merge_tree(&zsq_minus_one()).unwrap();
        assert_eq!(tree.merge_events.len(), 1);
        assert!((tree.merge_events[0].level - 1.0).abs() < 1e-14);
        assert_eq!(tree.merge_events[0].groups, vec![0, 1]);
        assert_eq!(tree.critical_levels.len(), 3);

        let tree = build_merge_tree(&counterexample()).unwrap();
        assert_eq!(tree.merge_events.len(), 1);
        assert!((tree.merge_events[0].level - 0.25).abs() < 1e-14);
        assert_eq!(tree.merge_events[0].groups, vec![0, 1]);
        assert_eq!(tree.zeros.roots[0].multiplicity, 2);

        let tree = build_merge_tree(&Polynomial::monomial(c(1.0, 0.0), 5).unwrap()).unwrap();
        assert!(tree.merge_events.is_empty());
        assert_eq!(tree.critical_levels, vec![0.0, f64::INFINITY]);

        let tree = build_merge_tree(&Polynomial::from_real(&[-1.0, 0.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(tree.merge_events.len(), 1);
        assert_eq!(tree.merge_events[0].groups.len(), 3);
    }

    #[test]
    fn components_examples() {
        let params = TopologyParams::default();
        let p = counterexample();
        let tree = build_merge_tree(&p).unwrap();
        let comps = tree.components_at_level(1.0, &params).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(!comps[0].eligible);
        assert_eq!(comps[0].proper_criticals_inside.len(), 1);
        assert!((comps[0].proper_criticals_inside[0].location - c(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(comps[0].anchor_zero, c(0.0, 0.0));

        let comps = tree.components_at_level(0.2, &params).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.eligible));
        assert_eq!(comps[0].anchor_zero, c(0.0, 0.0));
        assert!((comps[1].anchor_zero - c(1.5, 0.0)).norm() < 1e-14);

        let tree = build_merge_tree(&Polynomial::monomial(c(1.0, 0.0), 3).unwrap()).unwrap();
        let comps = tree.components_at_level(1.0, &params).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].eligible);
        assert_eq!(comps[0].anchor_zero, c(0.0, 0.0));

        assert!(matches!(
            build_merge_tree(&zsq_minus_one()).unwrap().components_at_level(1.00001, &params),
            Err(Error::LevelAtCriticalValue { .. })
        ));
    }

    #[test]
    fn locate_examples() {
        let params = TopologyParams::default();
        let p = counterexample();
        let tree = build_merge_tree(&p).unwrap();
        match tree.locate_point(&p, c(2.0, 0.0), 1.0, &params).unwrap() {
            Location::Inside(comp) => assert!(!comp.eligible && comp.zero_ids.len() == 2),
            Location::Outside => panic!("z = 2 lies on the lemniscate"),
        }

        let p = zsq_minus_one();
        let tree = build_merge_tree(&p).unwrap();
        assert_eq!(tree.locate_point(&p, c(5.0, 0.0), 1.0, &params).unwrap(), Location::Outside);
        match tree.locate_point(&p, c(0.9, 0.0), 0.5, &params).unwrap() {
            Location::Inside(comp) => assert!((comp.anchor_zero - c(1.0, 0.0)).norm() < 1e-14),
            Location::Outside => panic!("0.9 is inside"),
        }
    }

    #[test]
    fn first_merge_and_counts() {
        let tree = build_merge_tree(&counterexample()).unwrap();
        assert!((tree.first_merge_level(1) - 0.25).abs() < 1e-14);
        assert_eq!(tree.component_count(0.1), 2);
        assert_eq!(tree.component_count(0.3), 1);
        let lone = build_merge_tree(&Polynomial::monomial(c(1.0, 0.0), 2).unwrap()).unwrap();
        assert_eq!(lone.first_merge_level(0), f64::INFINITY);
    }
}
