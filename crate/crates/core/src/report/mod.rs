//! Command pipelines behind the `lemnikit` binary and their JSON / SVG output.

mod config;
pub mod svg;

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use config::{parse_complex, AnalysisConfig};

use crate::bound::{self, BoundReport, BoundSummary, CorollaryCheck, InverseBranchPath, SampleOrigin, Verdict};
use crate::capacity::{self, CapacityEstimate, CondenserSpec, PunctureStudy, StripComparison};
use crate::error::{Error, Result};
use crate::level::{LevelCurve, LevelTracer};
use crate::poly::{self, CriticalPoint, Polynomial, RootSet};
use crate::topology::{self, Component, MergeTree};

pub const SCHEMA: &str = "lemnikit/1";

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<Polynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub config: AnalysisConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<Analysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inverse: Vec<InverseReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity: Option<CapacityReport>,
    /// Failed checks on components where the theorem applies.
    pub violations: usize,
}

impl ReportDocument {
    fn new(command: &str, p: Option<&Polynomial>, cfg: &AnalysisConfig) -> Self {
        Self {
            schema: SCHEMA.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            polynomial: p.cloned(),
            degree: p.map(Polynomial::degree),
            config: cfg.clone(),
            analysis: None,
            trace: None,
            inverse: Vec::new(),
            capacity: None,
            violations: 0,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub tau: f64,
    pub roots: RootSet,
    pub critical_points: Vec<CriticalPoint>,
    pub merge_tree: MergeTree,
    pub components: Vec<ComponentReport>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum BoundView {
    Summary(BoundSummary),
    Full(Box<BoundReport>),
}

impl BoundView {
    pub fn verdict(&self) -> Verdict {
        match self {
            BoundView::Summary(s) => s.verdict,
            BoundView::Full(r) => r.verdict,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub component: Component,
    pub bound: BoundView,
    pub corollary: Vec<CorollaryCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelEntry {
    pub level: f64,
    pub total_argument_increment: f64,
    pub total_enclosed_zeros: i64,
    pub curves: Vec<LevelCurve>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub levels: Vec<LevelEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseReport {
    pub component_id: usize,
    pub a: Complex64,
    pub level: f64,
    pub radii: usize,
    pub samples_per_radius: usize,
    /// Smallest `|w f'(w) / (f(w) - a)|` along each radius.
    pub min_ratio_per_radius: Vec<f64>,
    pub min_ratio: f64,
    pub lower_bound: f64,
    pub holds: bool,
    pub reciprocal_defect: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub paths: Vec<InverseBranchPath>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticRow {
    pub r: f64,
    pub numeric: f64,
    pub asymptotic: f64,
    pub second_term: f64,
    /// `|numeric - asymptotic| / |second_term|`.
    pub relative_to_second_term: f64,
    pub effective_inner_radius: f64,
    pub expected_inner_radius: f64,
    pub estimate: CapacityEstimate,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CapacityReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<CapacityEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub asymptotics: Vec<AsymptoticRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub puncture: Option<PunctureStudy>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub strip_comparisons: Vec<StripComparison>,
}

/// Input of the `capacity` command.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityInput {
    Condenser(CondenserSpec),
    Annulus {
        #[serde(default)]
        center: Complex64,
        r1: f64,
        r2: f64,
    },
    /// `C(r)` for each listed `r`, compared with the two-term asymptotics.
    Slit { a: Complex64, z0: Complex64, radii: Vec<f64> },
    /// `C(r, rho)` against `C(r)` for the zero `a` of `polynomial`.
    Puncture {
        polynomial: Polynomial,
        a: Complex64,
        z0: Complex64,
        r: f64,
        rhos: Vec<f64>,
    },
}

/// A finished command: the document plus its serialized forms.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub document: ReportDocument,
    pub json: String,
    pub svg: Option<String>,
}

impl Outcome {
    fn finish(document: ReportDocument, svg: Option<String>) -> Result<Self> {
        Ok(Self {
            json: document.to_json()?,
            document,
            svg,
        })
    }

    pub fn violations(&self) -> usize {
        self.document.violations
    }

    /// Writes `<command>.json` (and `<command>.svg`) into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let json = dir.join(format!("{}.json", self.document.command));
        std::fs::write(&json, &self.json)?;
        written.push(json);
        if let Some(svg) = &self.svg {
            let path = dir.join(format!("{}.svg", self.document.command));
            std::fs::write(&path, svg)?;
            written.push(path);
        }
        Ok(written)
    }
}

struct Analyzed {
    analysis: Analysis,
    bounds: Vec<BoundReport>,
    violations: usize,
}

fn run_analysis(p: &Polynomial, cfg: &AnalysisConfig) -> Result<Analyzed> {
    let tree = topology::build_merge_tree_with(p, &cfg.topology_params())?;
    let criticals = poly::critical_points_with(p, &cfg.root_params())?;
    let components = tree.components_at_level(cfg.tau, &cfg.topology_params())?;
    let tracer = LevelTracer::with_parts(p, tree.zeros.clone(), criticals.clone(), cfg.trace_params());
    let plan = cfg.sampling_plan();
    let params = cfg.bound_params();

    let mut reports = Vec::with_capacity(components.len());
    let mut bounds = Vec::with_capacity(components.len());
    let mut violations = 0;
    for comp in components {
        let report = bound::verify_theorem_with(&tracer, &comp, &plan, &params)?;
        let corollary: Vec<CorollaryCheck> = report
            .curves
            .iter()
            .filter(|c| c.level == cfg.tau)
            .flat_map(|c| bound::positive_points(p, c))
            .map(|z| bound::verify_corollary(p, &comp, z, &params))
            .collect();
        violations += usize::from(report.verdict == Verdict::Violated);
        violations += corollary.iter().filter(|c| c.holds == Some(false)).count();
        let view = if cfg.verbose {
            BoundView::Full(Box::new(report.clone()))
        } else {
            BoundView::Summary(report.summary())
        };
        reports.push(ComponentReport {
            component: comp,
            bound: view,
            corollary,
        });
        bounds.push(report);
    }
    Ok(Analyzed {
        analysis: Analysis {
            tau: cfg.tau,
            roots: tree.zeros.clone(),
            critical_points: criticals,
            merge_tree: tree,
            components: reports,
        },
        bounds,
        violations,
    })
}

/// Roots, critical points, merge tree, and the bound on every component at `tau`.
pub fn cmd_analyze(p: &Polynomial, cfg: &AnalysisConfig) -> Result<Outcome> {
    cfg.validate()?;
    let run = run_analysis(p, cfg)?;
    let mut doc = ReportDocument::new("analyze", Some(p), cfg);
    doc.violations = run.violations;
    doc.analysis = Some(run.analysis);
    Outcome::finish(doc, None)
}

/// Traces every component boundary at each level.
pub fn trace_levels(p: &Polynomial, levels: &[f64], cfg: &AnalysisConfig) -> Result<TraceReport> {
    let tree = topology::build_merge_tree_with(p, &cfg.topology_params())?;
    let criticals = poly::critical_points_with(p, &cfg.root_params())?;
    let tracer = LevelTracer::with_parts(p, tree.zeros.clone(), criticals, cfg.trace_params());
    let mut entries = Vec::with_capacity(levels.len());
    for &t in levels {
        if let Some(critical_value) = tracer.near_critical(t) {
            return Err(Error::CriticalLevelTooClose {
                level: t,
                critical_value,
            });
        }
        let comps = tree.components_at_level(t, &cfg.topology_params())?;
        let curves = comps
            .iter()
            .map(|c| tracer.trace_around(c.anchor_zero, t))
            .collect::<Result<Vec<_>>>()?;
        entries.push(LevelEntry {
            level: t,
            total_argument_increment: curves.iter().map(|c| c.argument_increment).sum(),
            total_enclosed_zeros: curves.iter().map(|c| c.enclosed_zero_count).sum(),
            curves,
        });
    }
    Ok(TraceReport { levels: entries })
}

fn trace_figure(p: &Polynomial, cfg: &AnalysisConfig, trace: &TraceReport, heat: &[bound::BoundSample]) -> Result<String> {
    let roots = poly::find_roots_with(p, &cfg.root_params())?;
    let criticals = poly::critical_points_with(p, &cfg.root_params())?;
    let curves: Vec<LevelCurve> = trace.levels.iter().flat_map(|l| l.curves.iter().cloned()).collect();
    Ok(svg::render(&svg::Figure {
        roots: Some(&roots),
        criticals: &criticals,
        curves: &curves,
        heat,
        n: p.degree(),
    }))
}

fn levels_or_tau(cfg: &AnalysisConfig) -> Vec<f64> {
    if cfg.levels.is_empty() {
        vec![cfg.tau]
    } else {
        cfg.levels.clone()
    }
}

/// Level curves at `cfg.levels` (or `tau`) with their argument increments, plus a figure.
pub fn cmd_trace(p: &Polynomial, cfg: &AnalysisConfig) -> Result<Outcome> {
    cfg.validate()?;
    let trace = trace_levels(p, &levels_or_tau(cfg), cfg)?;
    let svg = trace_figure(p, cfg, &trace, &[])?;
    let mut doc = ReportDocument::new("trace", Some(p), cfg);
    doc.trace = Some(trace);
    Outcome::finish(doc, Some(svg))
}

/// Inverse-branch ratios on each eligible component around a simple zero.
/// `P` is divided by `tau`, so the branch lives on the unit disk.
pub fn inverse_reports(p: &Polynomial, cfg: &AnalysisConfig) -> Result<Vec<InverseReport>> {
    let tree = topology::build_merge_tree_with(p, &cfg.topology_params())?;
    let comps = tree.components_at_level(cfg.tau, &cfg.topology_params())?;
    let q = p.scaled(Complex64::new(1.0 / cfg.tau, 0.0))?;
    let params = cfg.bound_params();
    let n = p.degree();
    let mut out = Vec::new();
    for comp in comps.iter().filter(|c| c.eligible && c.multiplicity() == 1) {
        let mut per_radius = Vec::with_capacity(cfg.radii);
        let mut defect: f64 = 0.0;
        let mut paths = Vec::new();
        for k in 0..cfg.radii {
            let dir = Complex64::from_polar(1.0, TAU * k as f64 / cfg.radii as f64);
            let path = bound::continue_inverse_branch(&q, comp.anchor_zero, dir, cfg.radius_steps, &params)?;
            per_radius.push(bound::inverse_ratios(&path).fold(f64::INFINITY, f64::min));
            defect = defect.max(bound::reciprocal_defect(&q, &path)?);
            if cfg.verbose {
                paths.push(path);
            }
        }
        let min_ratio = per_radius.iter().copied().fold(f64::INFINITY, f64::min);
        let lower_bound = 1.0 / n as f64;
        out.push(InverseReport {
            component_id: comp.id,
            a: comp.anchor_zero,
            level: cfg.tau,
            radii: cfg.radii,
            samples_per_radius: cfg.radius_steps,
            min_ratio_per_radius: per_radius,
            min_ratio,
            lower_bound,
            holds: min_ratio >= lower_bound - cfg.verify_tol,
            reciprocal_defect: defect,
            paths,
        });
    }
    Ok(out)
}

pub fn cmd_inverse(p: &Polynomial, cfg: &AnalysisConfig) -> Result<Outcome> {
    cfg.validate()?;
    let inverse = inverse_reports(p, cfg)?;
    let mut doc = ReportDocument::new("inverse", Some(p), cfg);
    doc.violations = inverse.iter().filter(|r| !r.holds).count();
    doc.inverse = inverse;
    Outcome::finish(doc, None)
}

/// `C(r)` at each radius next to the two-term expansion.
pub fn slit_table(a: Complex64, z0: Complex64, radii: &[f64], cfg: &AnalysisConfig) -> Result<Vec<AsymptoticRow>> {
    let d = (a - z0).norm();
    radii
        .iter()
        .map(|&r| {
            let spec = CondenserSpec::slit(a, z0, r, cfg.outer_radius.max(4.0 * d))?;
            let est = capacity::capacity(&spec, &cfg.grid, &cfg.solver_params())?;
            let asym = capacity::asymptotic_cap_c(r, a, z0);
            let second = -TAU * (4.0 * d).ln() / (r.ln() * r.ln());
            Ok(AsymptoticRow {
                r,
                numeric: est.value,
                asymptotic: asym,
                second_term: second,
                relative_to_second_term: (est.value - asym).abs() / second.abs(),
                effective_inner_radius: capacity::effective_inner_radius(est.value, r),
                expected_inner_radius: 4.0 * d,
                estimate: est,
            })
        })
        .collect()
}

pub fn cmd_capacity(input: &CapacityInput, cfg: &AnalysisConfig) -> Result<Outcome> {
    cfg.validate()?;
    let solver = cfg.solver_params();
    let mut rep = CapacityReport::default();
    match input {
        CapacityInput::Condenser(spec) => {
            rep.estimate = Some(capacity::capacity(spec, &cfg.grid, &solver)?);
        }
        &CapacityInput::Annulus { center, r1, r2 } => {
            if !(r1 > 0.0 && r2 > r1) {
                return Err(Error::InvalidCondenser(format!("annulus needs 0 < r1 < r2, got {r1}, {r2}")));
            }
            rep.estimate = Some(capacity::capacity(&CondenserSpec::annulus(center, r1, r2), &cfg.grid, &solver)?);
            rep.exact = Some(capacity::annulus_capacity(r1, r2));
        }
        CapacityInput::Slit { a, z0, radii } => {
            rep.asymptotics = slit_table(*a, *z0, radii, cfg)?;
        }
        CapacityInput::Puncture {
            polynomial,
            a,
            z0,
            r,
            rhos,
        } => {
            let criticals: Vec<Complex64> = poly::critical_points_with(polynomial, &cfg.root_params())?
                .iter()
                .filter(|c| c.is_proper())
                .map(|c| c.location)
                .collect();
            let base = CondenserSpec::slit(*a, *z0, *r, cfg.outer_radius)?;
            rep.puncture = Some(capacity::puncture_convergence(
                &base, *a, &criticals, rhos, &cfg.grid, &solver,
            )?);
        }
    }
    let mut doc = ReportDocument::new("capacity", None, cfg);
    doc.capacity = Some(rep);
    Outcome::finish(doc, None)
}

/// The point `z0` with `P(z0) = s * tau` on the branch of `P^{-1}` through `a`
/// along the positive real axis.
pub fn positive_point(p: &Polynomial, a: Complex64, tau: f64, s: f64, cfg: &AnalysisConfig) -> Result<Complex64> {
    let q = p.scaled(Complex64::new(1.0 / (tau * 2.0 * s), 0.0))?;
    let path = bound::continue_inverse_branch(&q, a, Complex64::new(1.0, 0.0), 1, &cfg.bound_params())?;
    Ok(path.f_values[0])
}

/// `r_max`, shrunk so that both `r <= |a - z0| / 100` and `r |P'(z0)| / P(z0) <= 1/100`.
pub fn comparison_radius(p: &Polynomial, a: Complex64, z0: Complex64, r_max: f64) -> f64 {
    let (v, dv) = p.eval_with_derivative(z0);
    r_max.min(0.01 * (a - z0).norm()).min(0.01 * v.norm() / dv.norm())
}

/// Everything: analysis with bound heat map, level curves, inverse branches,
/// and the strip-capacity comparison on each eligible component.
pub fn cmd_report(p: &Polynomial, cfg: &AnalysisConfig) -> Result<Outcome> {
    cfg.validate()?;
    let run = run_analysis(p, cfg)?;
    let trace = trace_levels(p, &levels_or_tau(cfg), cfg)?;
    let inverse = inverse_reports(p, cfg)?;

    let mut comparisons = Vec::new();
    for comp in run.analysis.components.iter().map(|c| &c.component) {
        if !(comp.eligible && comp.multiplicity() == 1) {
            continue;
        }
        let z0 = positive_point(p, comp.anchor_zero, cfg.tau, 0.5, cfg)?;
        comparisons.push(capacity::strip_comparison(
            p,
            comp.anchor_zero,
            z0,
            comparison_radius(p, comp.anchor_zero, z0, cfg.capacity_r),
            cfg.outer_radius,
            &cfg.grid,
            &cfg.solver_params(),
        )?);
    }

    let heat: Vec<bound::BoundSample> = run
        .bounds
        .iter()
        .flat_map(|b| b.samples.iter())
        .filter(|s| matches!(s.origin, SampleOrigin::Boundary { .. }))
        .copied()
        .collect();
    let svg = trace_figure(p, cfg, &trace, &heat)?;

    let mut doc = ReportDocument::new("report", Some(p), cfg);
    doc.violations = run.violations
        + inverse.iter().filter(|r| !r.holds).count()
        + comparisons.iter().filter(|c| !c.holds).count();
    doc.analysis = Some(run.analysis);
    doc.trace = Some(trace);
    doc.inverse = inverse;
    doc.capacity = Some(CapacityReport {
        strip_comparisons: comparisons,
        ..CapacityReport::default()
    });
    Outcome::finish(doc, Some(svg))
}

pub fn parse_capacity_input(text: &str) -> Result<CapacityInput> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
