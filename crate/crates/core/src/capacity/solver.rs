//! Red-black SOR for the 5-point Laplacian on a structured node grid, either
//! Cartesian or log-polar around a center (where the map `z = c + e^(s + i theta)`
//! is conformal, so the same stencil and edge energy apply).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CondenserSpec, Frame};
use crate::error::{Error, Result};

pub(crate) const FREE: u8 = 0;
pub(crate) const ZERO: u8 = 1;
pub(crate) const ONE: u8 = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    /// `None` picks `2 / (1 + sin(pi / N))` for the longest grid side `N`.
    pub omega: Option<f64>,
    /// Max-norm bound on the Gauss-Seidel correction at convergence.
    pub residual_tol: f64,
    pub max_sweeps: usize,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            omega: None,
            residual_tol: 1e-10,
            max_sweeps: 200_000,
        }
    }
}

/// Node layout. Index `i` runs along x (or theta), `j` along y (or log radius).
#[derive(Clone, Debug, PartialEq)]
pub struct GridGeometry {
    pub frame: Frame,
    pub grid_size: usize,
    pub nx: usize,
    pub ny: usize,
    pub hx: f64,
    pub hy: f64,
    pub periodic_x: bool,
    origin: Complex64,
}

impl GridGeometry {
    pub fn new(frame: &Frame, grid_size: usize) -> Result<Self> {
        if grid_size < 4 {
            return Err(Error::InvalidCondenser(format!("grid size {grid_size} is too small")));
        }
        match *frame {
            Frame::Box { min, max } => {
                let (w, h) = (max.re - min.re, max.im - min.im);
                if !(w > 0.0 && h > 0.0) {
                    return Err(Error::InvalidCondenser("empty bounding box".into()));
                }
                let step = w.max(h) / grid_size as f64;
                let cx = (w / step).ceil().max(1.0) as usize;
                let cy = (h / step).ceil().max(1.0) as usize;
                let center = (min + max) * 0.5;
                let origin = center - Complex64::new(cx as f64, cy as f64) * (0.5 * step);
                Ok(Self {
                    frame: frame.clone(),
                    grid_size,
                    nx: cx + 1,
                    ny: cy + 1,
                    hx: step,
                    hy: step,
                    periodic_x: false,
                    origin,
                })
            }
            Frame::LogPolar {
                center: _,
                inner_radius,
                outer_radius,
                theta_offset,
                snap_radius,
            } => {
                if !(inner_radius > 0.0 && outer_radius > inner_radius) {
                    return Err(Error::InvalidCondenser("log-polar radii must satisfy 0 < inner < outer".into()));
                }
                if grid_size % 2 == 1 {
                    return Err(Error::InvalidCondenser("log-polar grids need an even angular count".into()));
                }
                let dtheta = TAU / grid_size as f64;
                let span = (outer_radius / inner_radius).ln();
                let ds = match snap_radius {
                    Some(rs) if rs > inner_radius && rs <= outer_radius => {
                        let gap = (rs / inner_radius).ln();
                        gap / (gap / dtheta).round().max(1.0)
                    }
                    _ => dtheta,
                };
                let cells = (span / ds - 1e-9).ceil().max(1.0) as usize;
                Ok(Self {
                    frame: frame.clone(),
                    grid_size,
                    nx: grid_size,
                    ny: cells + 1,
                    hx: dtheta,
                    hy: ds,
                    periodic_x: true,
                    origin: Complex64::new(theta_offset, inner_radius.ln()),
                })
            }
        }
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        match self.frame {
            Frame::Box { .. } => self.origin + Complex64::new(i as f64 * self.hx, j as f64 * self.hy),
            Frame::LogPolar { center, .. } => {
                let s = self.origin.im + j as f64 * self.hy;
                let theta = self.origin.re + i as f64 * self.hx;
                center + Complex64::from_polar(s.exp(), theta)
            }
        }
    }

    /// Physical spacing of the grid near node row `j`.
    pub fn local_width(&self, j: usize) -> f64 {
        match self.frame {
            Frame::Box { .. } => self.hx,
            Frame::LogPolar { .. } => (self.origin.im + j as f64 * self.hy).exp() * self.hx.max(self.hy),
        }
    }

    /// Physical spacing of the grid at `z`.
    pub fn width_at(&self, z: Complex64) -> f64 {
        match self.frame {
            Frame::Box { .. } => self.hx,
            Frame::LogPolar { center, .. } => (z - center).norm() * self.hx.max(self.hy),
        }
    }

    fn on_outer_boundary(&self, i: usize, j: usize) -> bool {
        match self.frame {
            Frame::Box { .. } => i == 0 || j == 0 || i == self.nx - 1 || j == self.ny - 1,
            Frame::LogPolar { .. } => j == self.ny - 1,
        }
    }

    /// Fractional index coordinates of `z`.
    fn locate(&self, z: Complex64) -> (f64, f64) {
        match self.frame {
            Frame::Box { .. } => {
                let d = z - self.origin;
                (d.re / self.hx, d.im / self.hy)
            }
            Frame::LogPolar { center, .. } => {
                let d = z - center;
                let theta = (d.arg() - self.origin.re).rem_euclid(TAU);
                (theta / self.hx, (d.norm().ln() - self.origin.im) / self.hy)
            }
        }
    }
}

pub(crate) fn rasterize(spec: &CondenserSpec, g: &GridGeometry) -> Result<Vec<u8>> {
    let unbounded = spec.plate0.iter().any(|r| r.is_unbounded());
    let mut kinds = vec![FREE; g.len()];
    let (mut n0, mut n1) = (0usize, 0usize);
    for j in 0..g.ny {
        let w = g.local_width(j);
        for i in 0..g.nx {
            let z = g.node(i, j);
            let in0 = spec.plate0.iter().any(|r| r.contains(z, w));
            let in1 = spec.plate1.iter().any(|r| r.contains(z, w));
            let k = match (in0, in1) {
                (true, true) => {
                    return Err(Error::InvalidCondenser(format!(
                        "plates overlap near {:.6}{:+.6}i",
                        z.re, z.im
                    )))
                }
                (true, false) => {
                    n0 += 1;
                    ZERO
                }
                (false, true) => {
                    n1 += 1;
                    ONE
                }
                (false, false) if unbounded && g.on_outer_boundary(i, j) => ZERO,
                _ => FREE,
            };
            kinds[j * g.nx + i] = k;
        }
    }
    if n1 == 0 {
        return Err(Error::InvalidCondenser("second plate covers no grid node".into()));
    }
    if n0 == 0 && !unbounded {
        return Err(Error::InvalidCondenser("first plate covers no grid node".into()));
    }
    Ok(kinds)
}

/// Converged discrete potential on one grid.
#[derive(Clone, Debug)]
pub struct Potential {
    pub geometry: GridGeometry,
    pub values: Vec<f64>,
    pub kinds: Vec<u8>,
    pub sweeps: usize,
    pub residual: f64,
}

impl Potential {
    /// Sum over grid edges of `weight * (du)^2`; boundary-parallel edges of a
    /// non-periodic side count half.
    pub fn energy(&self) -> f64 {
        let g = &self.geometry;
        let (wx, wy) = (g.hy / g.hx, g.hx / g.hy);
        let u = &self.values;
        let mut total = 0.0;
        for j in 0..g.ny {
            let row_w = if j == 0 || j == g.ny - 1 { 0.5 } else { 1.0 };
            let row = &u[j * g.nx..(j + 1) * g.nx];
            let mut acc = 0.0;
            for i in 0..g.nx - 1 {
                let d = row[i + 1] - row[i];
                acc += d * d;
            }
            if g.periodic_x {
                let d = row[0] - row[g.nx - 1];
                acc += d * d;
            }
            total += wx * row_w * acc;
        }
        for j in 0..g.ny - 1 {
            let (a, b) = (&u[j * g.nx..(j + 1) * g.nx], &u[(j + 1) * g.nx..(j + 2) * g.nx]);
            for i in 0..g.nx {
                let col_w = if !g.periodic_x && (i == 0 || i == g.nx - 1) { 0.5 } else { 1.0 };
                let d = b[i] - a[i];
                total += wy * col_w * d * d;
            }
        }
        total
    }

    /// Bilinear interpolation of the potential at `z` (clamped to the grid).
    pub fn sample(&self, z: Complex64) -> f64 {
        let g = &self.geometry;
        let (x, y) = g.locate(z);
        let y = y.clamp(0.0, (g.ny - 1) as f64);
        let j0 = (y.floor() as usize).min(g.ny.saturating_sub(2));
        let fy = y - j0 as f64;
        let (i0, i1, fx) = if g.periodic_x {
            let i0 = (x.floor() as usize) % g.nx;
            (i0, (i0 + 1) % g.nx, x - x.floor())
        } else {
            let x = x.clamp(0.0, (g.nx - 1) as f64);
            let i0 = (x.floor() as usize).min(g.nx - 2);
            (i0, i0 + 1, x - i0 as f64)
        };
        let at = |i: usize, j: usize| self.values[j * g.nx + i];
        let j1 = (j0 + 1).min(g.ny - 1);
        (1.0 - fy) * ((1.0 - fx) * at(i0, j0) + fx * at(i1, j0)) + fy * ((1.0 - fx) * at(i0, j1) + fx * at(i1, j1))
    }
}

pub(crate) fn solve(
    spec: &CondenserSpec,
    grid_size: usize,
    params: &SolverParams,
    warm: Option<&Potential>,
) -> Result<Potential> {
    let g = GridGeometry::new(&spec.frame, grid_size)?;
    let kinds = rasterize(spec, &g)?;
    let mut u = vec![0.0; g.len()];
    for j in 0..g.ny {
        for i in 0..g.nx {
            let k = j * g.nx + i;
            u[k] = match kinds[k] {
                ONE => 1.0,
                ZERO => 0.0,
                _ => warm.map_or(0.0, |w| w.sample(g.node(i, j)).clamp(0.0, 1.0)),
            };
        }
    }
    let omega = params
        .omega
        .unwrap_or_else(|| 2.0 / (1.0 + (PI / g.nx.max(g.ny) as f64).sin()));
    let (sweeps, residual) = sor(&g, &kinds, &mut u, omega, params)?;
    Ok(Potential {
        geometry: g,
        values: u,
        kinds,
        sweeps,
        residual,
    })
}

fn sor(g: &GridGeometry, kinds: &[u8], u: &mut [f64], omega: f64, params: &SolverParams) -> Result<(usize, f64)> {
    let (nx, ny) = (g.nx, g.ny);
    let (wx, wy) = (g.hy / g.hx, g.hx / g.hy);
    let norm = 1.0 / (2.0 * (wx + wy));
    let mut residual = f64::INFINITY;
    for sweep in 1..=params.max_sweeps {
        residual = 0.0f64;
        for color in 0..2 {
            for j in 0..ny {
                let up = if j + 1 < ny { j + 1 } else { j - 1 };
                let down = if j > 0 { j - 1 } else { 1 };
                let (row, rup, rdown) = (j * nx, up * nx, down * nx);
                let mut i = (j + color) % 2;
                while i < nx {
                    let k = row + i;
                    if kinds[k] == FREE {
                        let left = if i > 0 {
                            i - 1
                        } else if g.periodic_x {
                            nx - 1
                        } else {
                            1
                        };
                        let right = if i + 1 < nx {
                            i + 1
                        } else if g.periodic_x {
                            0
                        } else {
                            nx - 2
                        };
                        let target = norm * (wx * (u[row + left] + u[row + right]) + wy * (u[rup + i] + u[rdown + i]));
                        let d = target - u[k];
                        residual = residual.max(d.abs());
                        u[k] += omega * d;
                    }
                    i += 2;
                }
            }
        }
        if residual <= params.residual_tol {
            return Ok((sweep, residual));
        }
        if !residual.is_finite() {
            break;
        }
    }
    Err(Error::SolverNotConverged {
        sweeps: params.max_sweeps,
        residual,
    })
}
