//! `P(z) = z^3/2 - 3z^2/4` at level 1: one component holding both zeros and the
//! saddle at z = 1, so the bound does not apply, and indeed `2 P'(2) / P(2) = 6 > 3`.

use lemnikit::bound::{self, BoundParams, SamplingPlan};
use lemnikit::topology::{self, TopologyParams};
use lemnikit::{poly, Complex64, Polynomial};

fn main() -> lemnikit::Result<()> {
    let p = Polynomial::from_real(&[0.0, 0.0, -0.75, 0.5])?;
    let two = Complex64::new(2.0, 0.0);
    println!("P = {p}");
    println!("P(2) = {}", p.eval(two));
    println!("|2 P'(2) / P(2)| = {}", poly::bound_value(&p, Complex64::new(0.0, 0.0), two)?);

    let tree = topology::build_merge_tree(&p)?;
    let comps = tree.components_at_level(1.0, &TopologyParams::default())?;
    for c in &comps {
        println!(
            "component {}: zeros {:?}, proper critical points inside {}, eligible {}",
            c.id,
            c.zero_members.iter().map(|r| (r.location, r.multiplicity)).collect::<Vec<_>>(),
            c.proper_criticals_inside.len(),
            c.eligible
        );
    }

    let plan = SamplingPlan {
        probes: vec![two],
        ..SamplingPlan::default()
    };
    let report = bound::verify_theorem(&p, &comps[0], &plan, &BoundParams::default())?;
    println!(
        "verdict {:?}, max sampled bound {:.3} at {:.4}, probe value {}",
        report.verdict, report.max_bound, report.argmax_z, report.probes[0].value
    );
    Ok(())
}
