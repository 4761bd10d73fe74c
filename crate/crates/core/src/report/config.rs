use std::path::PathBuf;

use num_complex::Complex64;
use serde::Serialize;

use crate::bound::{BoundParams, SamplingPlan};
use crate::capacity::SolverParams;
use crate::error::{Error, Result};
use crate::level::TraceParams;
use crate::poly::RootParams;
use crate::topology::TopologyParams;

/// Settings shared by every command. Read from a `key = value` file, then
/// overridden by command-line flags.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisConfig {
    pub tau: f64,
    pub levels: Vec<f64>,
    pub grid: Vec<usize>,
    pub seed: u64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub verbose: bool,
    pub trace_tol: f64,
    pub verify_tol: f64,
    pub residual_tol: f64,
    pub cluster_tol: f64,
    pub critical_gap: f64,
    pub sublevels: usize,
    pub boundary_samples: usize,
    pub interior_samples: usize,
    pub radii: usize,
    pub radius_steps: usize,
    pub capacity_r: f64,
    pub outer_radius: f64,
    pub solver_tol: f64,
    pub probes: Vec<Complex64>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            tau: 1.0,
            levels: Vec::new(),
            grid: vec![128, 256],
            seed: 0x1e3,
            out: None,
            verbose: false,
            trace_tol: 1e-10,
            verify_tol: 1e-9,
            residual_tol: 1e-8,
            cluster_tol: 1e-6,
            critical_gap: 1e-4,
            sublevels: 5,
            boundary_samples: 256,
            interior_samples: 1000,
            radii: 16,
            radius_steps: 64,
            capacity_r: 1e-3,
            outer_radius: 1e4,
            solver_tol: 1e-10,
            probes: Vec::new(),
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("{key}: expected a number, got {v:?}")))
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("{key}: expected an integer, got {v:?}")))
}

fn parse_list<T>(key: &str, v: &str, item: impl Fn(&str, &str) -> Result<T>) -> Result<Vec<T>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| item(key, s))
        .collect()
}

/// `re,im` (or just `re`).
pub fn parse_complex(v: &str) -> Result<Complex64> {
    let parts: Vec<&str> = v.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse_f64("complex", re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse_f64("complex", re)?, parse_f64("complex", im)?)),
        _ => Err(Error::Parse(format!("expected re,im, got {v:?}"))),
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(Error::Parse(format!("{key}: expected a boolean, got {other:?}"))),
    }
}

impl AnalysisConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "tau" => self.tau = parse_f64(key, value)?,
            "levels" => self.levels = parse_list(key, value, parse_f64)?,
            "grid" => self.grid = parse_list(key, value, parse_usize)?,
            "seed" => {
                self.seed = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("seed: expected an integer, got {value:?}")))?
            }
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "verbose" => self.verbose = parse_bool(key, value)?,
            "trace_tol" => self.trace_tol = parse_f64(key, value)?,
            "verify_tol" => self.verify_tol = parse_f64(key, value)?,
            "residual_tol" => self.residual_tol = parse_f64(key, value)?,
            "cluster_tol" => self.cluster_tol = parse_f64(key, value)?,
            "critical_gap" => self.critical_gap = parse_f64(key, value)?,
            "sublevels" => self.sublevels = parse_usize(key, value)?,
            "boundary_samples" => self.boundary_samples = parse_usize(key, value)?,
            "interior_samples" => self.interior_samples = parse_usize(key, value)?,
            "radii" => self.radii = parse_usize(key, value)?,
            "radius_steps" => self.radius_steps = parse_usize(key, value)?,
            "capacity_r" => self.capacity_r = parse_f64(key, value)?,
            "outer_radius" => self.outer_radius = parse_f64(key, value)?,
            "solver_tol" => self.solver_tol = parse_f64(key, value)?,
            "probes" => {
                self.probes = value
                    .split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(parse_complex)
                    .collect::<Result<_>>()?
            }
            other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file on top of `self`. `#` starts a comment.
    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("tau", self.tau),
            ("trace_tol", self.trace_tol),
            ("verify_tol", self.verify_tol),
            ("residual_tol", self.residual_tol),
            ("cluster_tol", self.cluster_tol),
            ("critical_gap", self.critical_gap),
            ("capacity_r", self.capacity_r),
            ("outer_radius", self.outer_radius),
            ("solver_tol", self.solver_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parse(format!("{name} must be positive and finite")));
            }
        }
        if self.levels.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::Parse("levels must be positive".into()));
        }
        if self.grid.is_empty() || self.grid.iter().any(|&g| g < 4) {
            return Err(Error::Parse("grid sizes must be at least 4".into()));
        }
        if self.radius_steps == 0 || self.radii == 0 {
            return Err(Error::Parse("radii and radius_steps must be positive".into()));
        }
        Ok(())
    }

    pub fn root_params(&self) -> RootParams {
        RootParams {
            residual_tol: self.residual_tol,
            cluster_tol: self.cluster_tol,
            ..RootParams::default()
        }
    }

    pub fn trace_params(&self) -> TraceParams {
        TraceParams {
            trace_tol: self.trace_tol,
            critical_gap: self.critical_gap,
            roots: self.root_params(),
            ..TraceParams::default()
        }
    }

    pub fn topology_params(&self) -> TopologyParams {
        TopologyParams {
            critical_gap: self.critical_gap,
            roots: self.root_params(),
            ..TopologyParams::default()
        }
    }

    pub fn bound_params(&self) -> BoundParams {
        BoundParams {
            verify_tol: self.verify_tol,
            trace: self.trace_params(),
            ..BoundParams::default()
        }
    }

    pub fn sampling_plan(&self) -> SamplingPlan {
        SamplingPlan {
            sublevels: self.sublevels,
            min_boundary_samples: self.boundary_samples,
            interior_samples: self.interior_samples,
            seed: self.seed,
            probes: self.probes.clone(),
            ..SamplingPlan::default()
        }
    }

    pub fn solver_params(&self) -> SolverParams {
        SolverParams {
            residual_tol: self.solver_tol,
            ..SolverParams::default()
        }
    }
}
