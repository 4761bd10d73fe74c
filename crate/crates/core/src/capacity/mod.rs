//! Condenser capacities on a grid, their small-`r` asymptotics, and the
//! strip map behind the `log(4n)` constant.

mod solver;

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub use solver::{GridGeometry, Potential, SolverParams};

/// A closed planar set making up part of a plate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Region {
    Disk { center: Complex64, radius: f64 },
    /// `|z - center| >= radius`.
    Exterior { center: Complex64, radius: f64 },
    Segment { start: Complex64, end: Complex64 },
    /// `origin + t * direction`, `t >= 0`.
    Ray { origin: Complex64, direction: Complex64 },
    /// Points with `Re[(z - point) * conj(normal)] >= 0`.
    HalfPlane { point: Complex64, normal: Complex64 },
    /// Points at distance `>= half_width` from the line through `center` along `direction`.
    StripComplement {
        center: Complex64,
        direction: Complex64,
        half_width: f64,
    },
}

impl Region {
    /// Euclidean distance from `z` to the region (zero inside).
    pub fn distance(&self, z: Complex64) -> f64 {
        match *self {
            Region::Disk { center, radius } => ((z - center).norm() - radius).max(0.0),
            Region::Exterior { center, radius } => (radius - (z - center).norm()).max(0.0),
            Region::Segment { start, end } => {
                let d = end - start;
                let t = if d.norm_sqr() > 0.0 {
                    (((z - start) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0)
                } else {
                    0.0
                };
                (z - (start + d * t)).norm()
            }
            Region::Ray { origin, direction } => {
                let t = (((z - origin) * direction.conj()).re / direction.norm_sqr()).max(0.0);
                (z - (origin + direction * t)).norm()
            }
            Region::HalfPlane { point, normal } => (-((z - point) * normal.conj()).re / normal.norm()).max(0.0),
            Region::StripComplement {
                center,
                direction,
                half_width,
            } => (half_width - ((z - center) * direction.conj()).im.abs() / direction.norm()).max(0.0),
        }
    }

    fn is_thin(&self) -> bool {
        matches!(self, Region::Segment { .. } | Region::Ray { .. })
    }

    pub fn is_unbounded(&self) -> bool {
        !matches!(self, Region::Disk { .. } | Region::Segment { .. })
    }

    /// Rasterization rule: thin sets take nodes within half a cell, solid ones
    /// take the nodes they contain.
    pub fn contains(&self, z: Complex64, cell_width: f64) -> bool {
        let d = self.distance(z);
        if self.is_thin() {
            d <= 0.5 * cell_width
        } else {
            d <= 1e-9 * cell_width
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Region::Disk { radius, .. } | Region::Exterior { radius, .. } => radius > 0.0 && radius.is_finite(),
            Region::Segment { start, end } => start != end,
            Region::Ray { direction, .. } => direction.norm() > 0.0,
            Region::HalfPlane { normal, .. } => normal.norm() > 0.0,
            Region::StripComplement {
                direction, half_width, ..
            } => direction.norm() > 0.0 && half_width > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCondenser(format!("degenerate region {self:?}")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Frame {
    /// Cartesian grid with square cells; `grid_size` cells along the longer side.
    Box { min: Complex64, max: Complex64 },
    /// Nodes at `center + exp(s + i theta)` for `inner_radius <= e^s <= outer_radius`;
    /// `grid_size` angular cells, starting at `theta_offset`. When `snap_radius`
    /// is set the radial step is adjusted so that a node ring lands on it.
    LogPolar {
        center: Complex64,
        inner_radius: f64,
        outer_radius: f64,
        theta_offset: f64,
        #[serde(default)]
        snap_radius: Option<f64>,
    },
}

/// A condenser: potential 0 on `plate0`, 1 on `plate1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CondenserSpec {
    pub plate0: Vec<Region>,
    pub plate1: Vec<Region>,
    pub frame: Frame,
}

impl CondenserSpec {
    /// Checks region parameters and plate disjointness on a coarse raster.
    pub fn validate(&self) -> Result<()> {
        if self.plate1.is_empty() {
            return Err(Error::InvalidCondenser("second plate is empty".into()));
        }
        for r in self.plate0.iter().chain(&self.plate1) {
            r.validate()?;
        }
        let coarse = GridGeometry::new(&self.frame, 64)?;
        solver::rasterize(self, &coarse).map(|_| ())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(spec)
    }

    /// `r1 <= |z - center| <= r2` gap, plate1 the inner disk, on a box frame.
    pub fn annulus(center: Complex64, r1: f64, r2: f64) -> Self {
        let pad = Complex64::new(1.02 * r2, 1.02 * r2);
        Self {
            plate0: vec![Region::Exterior { center, radius: r2 }],
            plate1: vec![Region::Disk { center, radius: r1 }],
            frame: Frame::Box {
                min: center - pad,
                max: center + pad,
            },
        }
    }

    /// `C(r)`: the ray `{z0 + (a - z0) t : t >= 1}` against the disk `|z - z0| <= r`,
    /// on a log-polar frame around `z0` reaching `outer_radius`.
    pub fn slit(a: Complex64, z0: Complex64, r: f64, outer_radius: f64) -> Result<Self> {
        let d = (a - z0).norm();
        if !(r > 0.0 && r < d) {
            return Err(Error::InvalidCondenser(format!("need 0 < r < |a - z0| = {d}, got r = {r}")));
        }
        if outer_radius <= 2.0 * d {
            return Err(Error::InvalidCondenser("outer radius must exceed 2|a - z0|".into()));
        }
        Ok(Self {
            plate0: vec![Region::Ray {
                origin: a,
                direction: a - z0,
            }],
            plate1: vec![Region::Disk { center: z0, radius: r }],
            frame: Frame::LogPolar {
                center: z0,
                inner_radius: r,
                outer_radius,
                theta_offset: (a - z0).arg(),
                snap_radius: Some(d),
            },
        })
    }

    /// `C(r, rho)`: `C(r)` with `rho`-disks at `a` and at each of `criticals`,
    /// plus the exterior `|z| >= 1/rho`, added to the first plate.
    pub fn punctured(base: &Self, a: Complex64, criticals: &[Complex64], rho: f64) -> Self {
        let mut spec = base.clone();
        spec.plate0.push(Region::Disk { center: a, radius: rho });
        for &c in criticals {
            spec.plate0.push(Region::Disk { center: c, radius: rho });
        }
        spec.plate0.push(Region::Exterior {
            center: Complex64::new(0.0, 0.0),
            radius: 1.0 / rho,
        });
        spec
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityEstimate {
    /// Richardson-extrapolated over the two finest grids (or the single energy).
    pub value: f64,
    /// Finest grid size used.
    pub grid_size: usize,
    /// Dirichlet energy of the potential on the finest grid.
    pub energy: f64,
    pub refinement_history: Vec<(usize, f64)>,
    pub sweeps: Vec<usize>,
}

pub fn solve_potential(spec: &CondenserSpec, grid_size: usize, params: &SolverParams) -> Result<Potential> {
    spec.validate()?;
    solver::solve(spec, grid_size, params, None)
}

/// Solves on each grid size (ascending), warm-starting from the previous grid,
/// and extrapolates assuming first-order convergence in the cell width.
pub fn capacity(spec: &CondenserSpec, refinement: &[usize], params: &SolverParams) -> Result<CapacityEstimate> {
    spec.validate()?;
    let mut sizes = refinement.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.is_empty() {
        return Err(Error::InvalidCondenser("no grid sizes given".into()));
    }
    let mut history = Vec::with_capacity(sizes.len());
    let mut sweeps = Vec::with_capacity(sizes.len());
    let mut prev: Option<Potential> = None;
    for &n in &sizes {
        let pot = solver::solve(spec, n, params, prev.as_ref())?;
        history.push((n, pot.energy()));
        sweeps.push(pot.sweeps);
        prev = Some(pot);
    }
    let (nf, ef) = *history.last().expect("nonempty");
    let value = match history.len() {
        1 => ef,
        k => {
            let (nc, ec) = history[k - 2];
            ef + (ef - ec) / (nf as f64 / nc as f64 - 1.0)
        }
    };
    Ok(CapacityEstimate {
        value,
        grid_size: nf,
        energy: ef,
        refinement_history: history,
        sweeps,
    })
}

/// `2 pi / log(r2 / r1)`.
pub fn annulus_capacity(r1: f64, r2: f64) -> f64 {
    TAU / (r2 / r1).ln()
}

/// Two-term small-`r` expansion of `cap C(r)`:
/// `-2pi/log r - 2pi log(4|a - z0|) / (log r)^2`.
pub fn asymptotic_cap_c(r: f64, a: Complex64, z0: Complex64) -> f64 {
    let l = r.ln();
    -TAU / l - TAU * (4.0 * (a - z0).norm()).ln() / (l * l)
}

/// Same expansion for the strip comparison condenser, in the variable `r * ratio`
/// with constant `log(4n)`, where `ratio = |P'(z0)| / P(z0)`.
pub fn asymptotic_cap_strip(r: f64, n: usize, ratio: f64) -> f64 {
    let l = (r * ratio).ln();
    -TAU / l - TAU * (4.0 * n as f64).ln() / (l * l)
}

/// The inner radius `R` for which `2pi / log(R / r)` equals `cap`.
pub fn effective_inner_radius(cap: f64, r: f64) -> f64 {
    r * (TAU / cap).exp()
}

/// `F(z) = 2n log((1 + z) / (1 - z))`, mapping the unit disk onto `|Im w| < pi n`.
pub fn strip_map(n: usize, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    ((one + z) / (one - z)).ln() * (2.0 * n as f64)
}

pub fn strip_map_derivative(n: usize, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    (4.0 * n as f64) / (one - z * z)
}

/// Numeric `cap C(r)` against the two-term capacity of the strip comparison
/// condenser, at a point `z0` with `P(z0) > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripComparison {
    pub a: Complex64,
    pub z0: Complex64,
    pub r: f64,
    pub n: usize,
    /// `|P'(z0)| / P(z0)`.
    pub ratio: f64,
    pub numeric: f64,
    pub strip_asymptotic: f64,
    /// Allowed shortfall of `numeric` below `strip_asymptotic`.
    pub budget: f64,
    pub holds: bool,
    pub estimate: CapacityEstimate,
}

/// Fraction of the compared value allowed for discretization error.
pub const GRID_ERROR_BUDGET: f64 = 0.02;

pub fn strip_comparison(
    p: &Polynomial,
    a: Complex64,
    z0: Complex64,
    r: f64,
    outer_radius: f64,
    refinement: &[usize],
    params: &SolverParams,
) -> Result<StripComparison> {
    let (v, dv) = p.eval_with_derivative(z0);
    let ratio = dv.norm() / v.norm();
    let n = p.degree();
    if r * ratio >= 1.0 || (r * ratio).is_nan() {
        return Err(Error::InvalidCondenser(format!(
            "the strip expansion needs r |P'(z0)| / P(z0) < 1, got {}",
            r * ratio
        )));
    }
    let spec = CondenserSpec::slit(a, z0, r, outer_radius.max(4.0 * (a - z0).norm()))?;
    let estimate = capacity(&spec, refinement, params)?;
    let strip_asymptotic = asymptotic_cap_strip(r, n, ratio);
    let budget = GRID_ERROR_BUDGET * strip_asymptotic.abs();
    Ok(StripComparison {
        a,
        z0,
        r,
        n,
        ratio,
        numeric: estimate.value,
        strip_asymptotic,
        budget,
        holds: estimate.value >= strip_asymptotic - budget,
        estimate,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PunctureEntry {
    pub rho: f64,
    pub estimate: CapacityEstimate,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PunctureStudy {
    pub base: CapacityEstimate,
    pub entries: Vec<PunctureEntry>,
    /// Deviations shrink along the (decreasing) `rho` sequence, up to `grid_slack`.
    pub monotone: bool,
    pub grid_slack: f64,
}

/// Capacities of `C(r, rho)` for each `rho` against `cap C(r)` on the same grids.
pub fn puncture_convergence(
    base: &CondenserSpec,
    a: Complex64,
    criticals: &[Complex64],
    rhos: &[f64],
    refinement: &[usize],
    params: &SolverParams,
) -> Result<PunctureStudy> {
    let finest = *refinement
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidCondenser("no grid sizes given".into()))?;
    let g = GridGeometry::new(&base.frame, finest)?;
    for &rho in rhos {
        for &c in std::iter::once(&a).chain(criticals) {
            let w = g.width_at(c);
            if rho < 3.0 * w {
                return Err(Error::PunctureBelowResolution { rho, cell_width: w });
            }
        }
    }
    let base_est = capacity(base, refinement, params)?;
    let mut entries = Vec::with_capacity(rhos.len());
    for &rho in rhos {
        let est = capacity(&CondenserSpec::punctured(base, a, criticals, rho), refinement, params)?;
        entries.push(PunctureEntry {
            rho,
            deviation: est.value - base_est.value,
            estimate: est,
        });
    }
    let grid_slack = 1e-3 * base_est.value;
    let monotone = entries
        .windows(2)
        .all(|w| w[1].rho < w[0].rho && w[1].deviation <= w[0].deviation + grid_slack);
    Ok(PunctureStudy {
        base: base_est,
        entries,
        monotone,
        grid_slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn asymptotic_formulas() {
        let v = asymptotic_cap_c((-10.0f64).exp(), c(0.0, 0.0), c(-1.0, 0.0));
        assert!((v - (TAU / 10.0 - TAU * 4f64.ln() / 100.0)).abs() < 1e-15);
        assert!((v - 0.5412).abs() < 1e-4);
        let r = 1e-3;
        assert!((asymptotic_cap_c(r, c(0.25, 0.0), c(0.0, 0.0)) + TAU / r.ln()).abs() < 1e-15);
        assert!((asymptotic_cap_strip(r, 3, 1.0) - asymptotic_cap_c(r, c(3.0, 0.0), c(0.0, 0.0))).abs() < 1e-15);
        assert!(asymptotic_cap_c(1e-300, c(1.0, 0.0), c(0.0, 0.0)) < 0.03);
    }

    #[test]
    fn strip_map_basics() {
        for n in 1..5 {
            assert_eq!(strip_map(n, c(0.0, 0.0)), c(0.0, 0.0));
            assert!((strip_map_derivative(n, c(0.0, 0.0)) - c(4.0 * n as f64, 0.0)).norm() < 1e-15);
            let h = 1e-6;
            let fd = (strip_map(n, c(h, 0.0)) - strip_map(n, c(-h, 0.0))) / (2.0 * h);
            assert!((fd.re - 4.0 * n as f64).abs() < 1e-6);
            let w = strip_map(n, Complex64::from_polar(0.999_999, 1.0));
            assert!((w.im.abs() - std::f64::consts::PI * n as f64).abs() < 1e-4);
        }
    }

    #[test]
    fn region_distances() {
        let ray = Region::Ray {
            origin: c(0.0, 0.0),
            direction: c(1.0, 0.0),
        };
        assert_eq!(ray.distance(c(5.0, 2.0)), 2.0);
        assert_eq!(ray.distance(c(-3.0, 4.0)), 5.0);
        let hp = Region::HalfPlane {
            point: c(0.0, 0.0),
            normal: c(0.0, 1.0),
        };
        assert_eq!(hp.distance(c(1.0, -2.0)), 2.0);
        assert_eq!(hp.distance(c(1.0, 2.0)), 0.0);
        let sc = Region::StripComplement {
            center: c(0.0, 0.0),
            direction: c(1.0, 0.0),
            half_width: 1.0,
        };
        assert_eq!(sc.distance(c(3.0, 0.25)), 0.75);
        assert!(sc.is_unbounded());
    }

    #[test]
    fn log_polar_annulus_is_nearly_exact() {
        let spec = CondenserSpec {
            plate0: vec![Region::Exterior {
                center: c(0.0, 0.0),
                radius: 4.0,
            }],
            plate1: vec![Region::Disk {
                center: c(0.0, 0.0),
                radius: 1.0,
            }],
            frame: Frame::LogPolar {
                center: c(0.0, 0.0),
                inner_radius: 1.0,
                outer_radius: 4.0,
                theta_offset: 0.0,
                snap_radius: Some(4.0),
            },
        };
        let est = capacity(&spec, &[32, 64], &SolverParams::default()).unwrap();
        assert!((est.energy - annulus_capacity(1.0, 4.0)).abs() < 1e-6, "{est:?}");
    }

    #[test]
    fn overlapping_plates_rejected() {
        let spec = CondenserSpec {
            plate0: vec![Region::Disk {
                center: c(0.0, 0.0),
                radius: 1.0,
            }],
            plate1: vec![Region::Disk {
                center: c(0.5, 0.0),
                radius: 1.0,
            }],
            frame: Frame::Box {
                min: c(-3.0, -3.0),
                max: c(3.0, 3.0),
            },
        };
        assert!(matches!(spec.validate(), Err(Error::InvalidCondenser(_))));
    }

    #[test]
    fn puncture_below_resolution() {
        let base = CondenserSpec::slit(c(1.0, 0.0), c(1.2, 0.0), 0.01, 1e3).unwrap();
        let err = puncture_convergence(&base, c(1.0, 0.0), &[c(0.0, 0.0)], &[1e-4], &[64], &SolverParams::default());
        assert!(matches!(err, Err(Error::PunctureBelowResolution { .. })));
    }
}
