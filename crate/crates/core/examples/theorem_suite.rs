//! Random polynomials: every eligible component yields a max sampled bound <= n.

use lemnikit::bound::{self, BoundParams, SamplingPlan, Verdict};
use lemnikit::topology::{self, TopologyParams};
use lemnikit::{Complex64, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> lemnikit::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = TopologyParams::default();
    for trial in 0..10 {
        let n = rng.gen_range(2..=6);
        let roots: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        let p = Polynomial::from_roots(Complex64::new(1.0, 0.0), &roots)?;
        let tree = topology::build_merge_tree(&p)?;
        let Some(tau) = tree.merge_events.first().map(|e| 0.5 * e.level) else {
            continue;
        };
        for comp in tree.components_at_level(tau, &params)?.iter().filter(|c| c.eligible) {
            let r = bound::verify_theorem(&p, comp, &SamplingPlan::default(), &BoundParams::default())?;
            assert_ne!(r.verdict, Verdict::Violated);
            println!(
                "trial {trial}, n = {n}, zero {:.3}: max bound {:.6}, slack {:.6}",
                comp.anchor_zero, r.max_bound, r.slack
            );
        }
    }
    Ok(())
}
