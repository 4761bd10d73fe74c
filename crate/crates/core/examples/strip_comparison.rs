//! The strip map `F(z) = 2n log((1+z)/(1-z))` with `F'(0) = 4n`, and numeric
//! `cap C(r)` against the strip condenser's two-term capacity at points with `P(z0) > 0`.

use lemnikit::capacity::{self, SolverParams};
use lemnikit::report::{self, AnalysisConfig};
use lemnikit::topology::{self, TopologyParams};
use lemnikit::{Complex64, Polynomial};

fn main() -> lemnikit::Result<()> {
    for n in 1..=4 {
        let d = capacity::strip_map_derivative(n, Complex64::new(0.0, 0.0));
        println!("n = {n}: F'(0) = {d}, F(0.99) = {:.4}", capacity::strip_map(n, Complex64::new(0.0, 0.99)));
    }
    let cfg = AnalysisConfig::default();
    let p = Polynomial::from_real(&[1.0, -2.0, 0.0, 1.0])?;
    let tree = topology::build_merge_tree(&p)?;
    let tau = 0.5 * tree.critical_levels[1];
    for comp in tree.components_at_level(tau, &TopologyParams::default())?.iter().filter(|c| c.eligible) {
        let z0 = report::positive_point(&p, comp.anchor_zero, tau, 0.5, &cfg)?;
        let r = report::comparison_radius(&p, comp.anchor_zero, z0, 1e-3);
        let c = capacity::strip_comparison(&p, comp.anchor_zero, z0, r, 1e4, &[128, 256], &SolverParams::default())?;
        println!(
            "a = {:.4}, z0 = {:.4}, r = {:.1e}: cap C(r) = {:.5} >= {:.5} - {:.5}: {}",
            c.a, c.z0, c.r, c.numeric, c.strip_asymptotic, c.budget, c.holds
        );
    }
    Ok(())
}
