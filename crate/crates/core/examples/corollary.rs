//! `Re D_a P(z) >= 0` where `P(z) > 0` on an eligible component, and how it
//! fails on the counterexample's ineligible one.

use lemnikit::bound::{self, BoundParams};
use lemnikit::level::{LevelTracer, TraceParams};
use lemnikit::topology::{self, TopologyParams};
use lemnikit::Polynomial;

fn show(p: &Polynomial, tau: f64) -> lemnikit::Result<()> {
    let tree = topology::build_merge_tree(p)?;
    let tracer = LevelTracer::new(p, TraceParams::default())?;
    for comp in tree.components_at_level(tau, &TopologyParams::default())? {
        let curve = tracer.trace_around(comp.anchor_zero, tau)?;
        for z in bound::positive_points(p, &curve) {
            let c = bound::verify_corollary(p, &comp, z, &BoundParams::default());
            println!(
                "P = {p}, t = {tau}, z = {:.6}: Re D_a P = {:.6}, applicable {}, holds {:?}",
                z, c.re_polar, c.applicable, c.holds
            );
        }
    }
    Ok(())
}

fn main() -> lemnikit::Result<()> {
    show(&Polynomial::from_real(&[-1.0, 0.0, 1.0])?, 0.5)?;
    show(&Polynomial::from_real(&[0.0, 0.0, -0.75, 0.5])?, 1.0)?;
    Ok(())
}
