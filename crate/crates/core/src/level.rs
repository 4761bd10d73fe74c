//! Level curves `|P(z)| = t`: seeding, predictor–corrector tracing, and the
//! argument increment of `P` along a traced curve.
//!
//! Along a regular level curve of `|P|` the argument of `P` is strictly
//! monotone, so a counterclockwise trace accumulates exactly `2 pi N` where
//! `N` is the number of enclosed zeros counted with multiplicity.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom;
use crate::poly::{self, CriticalPoint, Polynomial, RootParams, RootSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceParams {
    /// Samples satisfy `| |P| - t | <= trace_tol * t`.
    pub trace_tol: f64,
    /// Largest change of `arg P` allowed in one step.
    pub max_arg_step: f64,
    /// `max_step = max_step_fraction * (component diameter estimate)`.
    pub max_step_fraction: f64,
    /// Levels within `critical_gap * t` of a proper critical value are refused.
    pub critical_gap: f64,
    pub max_points: usize,
    pub n_ray_attempts: usize,
    /// Tolerance on `argument_increment / 2 pi` being an integer.
    pub winding_tol: f64,
    pub roots: RootParams,
}

impl Default for TraceParams {
    fn default() -> Self {
        Self {
            trace_tol: 1e-10,
            max_arg_step: TAU / 512.0,
            max_step_fraction: 0.05,
            critical_gap: 1e-4,
            max_points: 400_000,
            n_ray_attempts: 8,
            winding_tol: 1e-6,
            roots: RootParams::default(),
        }
    }
}

/// A traced closed curve on `|P| = level`, oriented counterclockwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelCurve {
    pub level: f64,
    pub closed: bool,
    pub argument_increment: f64,
    pub enclosed_zero_count: i64,
    pub points: Vec<Complex64>,
}

impl LevelCurve {
    /// Strict interior test against the traced polygon.
    pub fn contains(&self, z: Complex64) -> bool {
        geom::point_in_polygon(&self.points, z)
    }

    pub fn winding_defect(&self) -> f64 {
        let turns = self.argument_increment / TAU;
        (turns - turns.round()).abs()
    }
}

/// Traces level curves of one polynomial, caching its zeros and critical points.
#[derive(Clone, Debug)]
pub struct LevelTracer<'a> {
    poly: &'a Polynomial,
    roots: RootSet,
    criticals: Vec<CriticalPoint>,
    params: TraceParams,
}

impl<'a> LevelTracer<'a> {
    pub fn new(poly: &'a Polynomial, params: TraceParams) -> Result<Self> {
        let roots = poly::find_roots_with(poly, &params.roots)?;
        let criticals = poly::critical_points_with(poly, &params.roots)?;
        Ok(Self {
            poly,
            roots,
            criticals,
            params,
        })
    }

    pub fn with_parts(
        poly: &'a Polynomial,
        roots: RootSet,
        criticals: Vec<CriticalPoint>,
        params: TraceParams,
    ) -> Self {
        Self {
            poly,
            roots,
            criticals,
            params,
        }
    }

    pub fn poly(&self) -> &Polynomial {
        self.poly
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn criticals(&self) -> &[CriticalPoint] {
        &self.criticals
    }

    pub fn params(&self) -> &TraceParams {
        &self.params
    }

    /// The proper critical value nearest to `t` if it lies within the critical gap.
    pub fn near_critical(&self, t: f64) -> Option<f64> {
        self.criticals
            .iter()
            .filter(|c| c.is_proper())
            .map(|c| c.critical_value)
            .filter(|v| (v - t).abs() <= self.params.critical_gap * t)
            .min_by(|a, b| (a - t).abs().total_cmp(&(b - t).abs()))
    }

    /// A point with `|P| = t` on the first crossing along a ray from `a`.
    pub fn seed_on_level(&self, a: Complex64, t: f64) -> Result<Complex64> {
        let p = self.poly;
        let n = p.degree() as f64;
        let (idx, _) = self.roots.nearest(a);
        let sep = self.roots.separation(idx);
        let reach = (t / p.leading().norm()).powf(1.0 / n);
        let length = if sep.is_finite() { sep.min(reach.max(sep * 1e-3)) } else { reach };
        let far = self
            .roots
            .locations()
            .map(|r| (r - a).norm())
            .fold(0.0, f64::max);
        let r_max = 4.0 * (far + reach) + length;

        for k in 0..self.params.n_ray_attempts {
            let dir = Complex64::from_polar(1.0, TAU * k as f64 / self.params.n_ray_attempts as f64);
            let level_gap = |r: f64| p.eval(a + dir * r).norm().ln() - t.ln();
            let mut lo = 0.0;
            let mut r = 1e-9 * length;
            let mut bracket = None;
            while r <= r_max {
                let (v, dv) = p.eval_with_derivative(a + dir * r);
                if v.norm() >= t {
                    bracket = Some((lo, r));
                    break;
                }
                let natural = if dv.norm() > 0.0 { 0.2 * v.norm() / dv.norm() } else { f64::INFINITY };
                let step = natural
                    .min(0.05 * (r + length))
                    .max(1e-6 * (r + length));
                lo = r;
                r += step;
            }
            let Some((mut lo, mut hi)) = bracket else {
                continue;
            };
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if level_gap(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let lo_gap = level_gap(lo).abs();
            let hi_gap = level_gap(hi).abs();
            let r = if lo_gap < hi_gap { lo } else { hi };
            return Ok(a + dir * r);
        }
        Err(Error::SeedNotFound {
            anchor: a,
            level: t,
            attempts: self.params.n_ray_attempts,
        })
    }

    /// Newton iteration on `log|P| = log t` along the gradient direction.
    fn correct(&self, mut z: Complex64, t: f64, max_iters: usize) -> Option<(Complex64, usize)> {
        let target = t.ln();
        let tol = 0.1 * self.params.trace_tol;
        for it in 0..=max_iters {
            let (v, dv) = self.poly.eval_with_derivative(z);
            if v.norm() == 0.0 {
                return None;
            }
            let gap = v.norm().ln() - target;
            // log|P| cannot be resolved below the rounding level of Horner's rule
            let noise = 16.0 * f64::EPSILON * self.poly.abs_scale_at(z) / v.norm();
            if gap.abs() <= tol.max(4.0 * noise) {
                return Some((z, it));
            }
            let g = dv / v;
            if g.norm() == 0.0 || !g.re.is_finite() {
                return None;
            }
            z -= gap / g;
        }
        None
    }

    /// Predictor–corrector march around the level curve through `seed`.
    pub fn trace(&self, seed: Complex64, t: f64) -> Result<LevelCurve> {
        if let Some(critical_value) = self.near_critical(t) {
            return Err(Error::CriticalLevelTooClose {
                level: t,
                critical_value,
            });
        }
        let stuck = || Error::CriticalLevelTooClose {
            level: t,
            critical_value: self.nearest_critical_value(t),
        };
        let (z0, _) = self.correct(seed, t, 30).ok_or_else(stuck)?;
        let (_, diameter_guess) = self.roots.nearest(z0);
        let h_max = self.params.max_step_fraction * 2.0 * diameter_guess.max(f64::MIN_POSITIVE);
        let h_min = 1e-13 * (1.0 + z0.norm());

        let tangent_at = |z: Complex64| -> (Complex64, Complex64, Complex64) {
            let (v, dv) = self.poly.eval_with_derivative(z);
            let g = dv / v;
            let tan = Complex64::i() * g.conj() / g.norm();
            (v, g, tan)
        };

        let (v0, _, tan0) = tangent_at(z0);
        let mut points = vec![z0];
        let mut z = z0;
        let mut total = 0.0;
        let mut h = h_max;
        loop {
            let (v, g, tan) = tangent_at(z);
            if !tan.re.is_finite() {
                return Err(stuck());
            }
            h = h.min(h_max).min(self.params.max_arg_step / g.norm());

            if total > PI {
                let to_seed = z0 - z;
                if to_seed.norm() <= 2.0 * h
                    && (to_seed * tan.conj()).re > 0.0
                    && (tan * tan0.conj()).re > 0.0
                {
                    let closing = (v0 / v).arg();
                    let turns = (total + closing) / TAU;
                    if closing > 0.0 && closing < FRAC_PI_2 && (turns - turns.round()).abs() < 0.1 {
                        break;
                    }
                }
            }

            let (next, darg) = loop {
                if h < h_min {
                    return Err(stuck());
                }
                let predicted = z + tan * h;
                if let Some((corrected, iters)) = self.correct(predicted, t, 6) {
                    let (vn, _, tan_n) = tangent_at(corrected);
                    let darg = (vn / v).arg();
                    let turn = (tan_n * tan.conj()).arg().abs();
                    if iters <= 3
                        && (corrected - predicted).norm() <= 0.25 * h
                        && darg > 0.0
                        && darg < FRAC_PI_2
                        && turn < 0.2
                    {
                        break (corrected, darg);
                    }
                }
                h *= 0.5;
            };
            total += darg;
            z = next;
            points.push(z);
            if points.len() > self.params.max_points {
                return Err(Error::TraceOverflow {
                    level: t,
                    max_points: self.params.max_points,
                });
            }
            h *= 1.5;
        }

        let mut curve = LevelCurve {
            level: t,
            closed: true,
            argument_increment: 0.0,
            enclosed_zero_count: 0,
            points,
        };
        argument_increment(self.poly, &mut curve)?;
        Ok(curve)
    }

    fn nearest_critical_value(&self, t: f64) -> f64 {
        self.criticals
            .iter()
            .filter(|c| c.is_proper())
            .map(|c| c.critical_value)
            .min_by(|a, b| (a - t).abs().total_cmp(&(b - t).abs()))
            .unwrap_or(f64::NAN)
    }

    /// Seeds from `a` and traces the component boundary at `t`.
    pub fn trace_around(&self, a: Complex64, t: f64) -> Result<LevelCurve> {
        if let Some(critical_value) = self.near_critical(t) {
            return Err(Error::CriticalLevelTooClose {
                level: t,
                critical_value,
            });
        }
        let seed = self.seed_on_level(a, t)?;
        self.trace(seed, t)
    }

    /// Enclosed zero counts `N_t` at ascending levels around the zero `a`;
    /// fails if the sequence ever decreases.
    pub fn monotonicity_sweep(&self, a: Complex64, levels: &[f64]) -> Result<Vec<(f64, i64)>> {
        let mut out: Vec<(f64, i64)> = Vec::with_capacity(levels.len());
        for &t in levels {
            let curve = self.trace_around(a, t)?;
            let count = curve.enclosed_zero_count;
            if let Some(&(_, previous)) = out.last() {
                if count < previous {
                    return Err(Error::MonotonicityViolated {
                        level: t,
                        previous,
                        current: count,
                    });
                }
            }
            out.push((t, count));
        }
        Ok(out)
    }
}

pub fn seed_on_level(p: &Polynomial, a: Complex64, t: f64) -> Result<Complex64> {
    LevelTracer::new(p, TraceParams::default())?.seed_on_level(a, t)
}

pub fn trace_level_curve(p: &Polynomial, seed: Complex64, t: f64) -> Result<LevelCurve> {
    LevelTracer::new(p, TraceParams::default())?.trace(seed, t)
}

pub fn monotonicity_sweep(p: &Polynomial, a: Complex64, levels: &[f64]) -> Result<Vec<(f64, i64)>> {
    LevelTracer::new(p, TraceParams::default())?.monotonicity_sweep(a, levels)
}

/// Sums the continuous change of `arg P` around the closed curve and stores
/// the total and `N_t = round(total / 2 pi)` on it.
pub fn argument_increment(p: &Polynomial, curve: &mut LevelCurve) -> Result<f64> {
    if !curve.closed || curve.points.len() < 3 {
        return Err(Error::CurveNotClosed { level: curve.level });
    }
    let values: Vec<Complex64> = curve.points.iter().map(|&z| p.eval(z)).collect();
    let n = values.len();
    let mut total = 0.0;
    for k in 0..n {
        let next = (k + 1) % n;
        let jump = (values[next] / values[k]).arg();
        if jump.abs() > FRAC_PI_2 {
            return Err(Error::ArgumentJumpTooLarge {
                index: k,
                next,
                jump,
            });
        }
        total += jump;
    }
    curve.argument_increment = total;
    curve.enclosed_zero_count = (total / TAU).round() as i64;
    Ok(total)
}
