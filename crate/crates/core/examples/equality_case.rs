//! For `P = c z^n` every sample of `|z P'(z) / P(z)|` equals `n`.

use lemnikit::bound::{self, BoundParams, SamplingPlan};
use lemnikit::topology::{self, TopologyParams};
use lemnikit::{Complex64, Polynomial};

fn main() -> lemnikit::Result<()> {
    for c in [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0)] {
        for n in 1..=6 {
            let p = Polynomial::monomial(c, n)?;
            let tree = topology::build_merge_tree(&p)?;
            let comp = &tree.components_at_level(1.0, &TopologyParams::default())?[0];
            let r = bound::verify_theorem(&p, comp, &SamplingPlan::default(), &BoundParams::default())?;
            let worst = r
                .samples
                .iter()
                .map(|s| (s.value - n as f64).abs() / n as f64)
                .fold(0.0, f64::max);
            println!(
                "c = {c}, n = {n}: {} samples, verdict {:?}, max relative deviation from n {worst:.1e}",
                r.samples.len(),
                r.verdict
            );
        }
    }
    Ok(())
}
