//! How the components of `|P| <= t` join as `t` grows.

use lemnikit::topology::{self, TopologyParams};
use lemnikit::{Complex64, Polynomial};

fn main() -> lemnikit::Result<()> {
    let z = |re: f64, im: f64| Complex64::new(re, im);
    let p = Polynomial::from_roots(z(1.0, 0.0), &[z(-2.0, 0.0), z(0.0, 0.0), z(0.5, 1.5), z(2.5, -0.5)])?;
    let tree = topology::build_merge_tree(&p)?;
    for (i, r) in tree.zeros.roots.iter().enumerate() {
        println!("zero {i}: {:.6}", r.location);
    }
    for ev in &tree.merge_events {
        let s = &tree.saddles[ev.saddle].critical;
        println!("t = {:.6}: groups {:?} join at saddle {:.6}", ev.level, ev.groups, s.location);
    }
    let params = TopologyParams::default();
    let mut levels: Vec<f64> = tree.critical_levels.windows(2).map(|w| if w[1].is_finite() { 0.5 * (w[0] + w[1]) } else { 2.0 * w[0] }).collect();
    levels.dedup();
    for t in levels {
        let comps = tree.components_at_level(t, &params)?;
        let desc: Vec<String> = comps
            .iter()
            .map(|c| format!("{:?}{}", c.zero_ids, if c.eligible { "*" } else { "" }))
            .collect();
        println!("t = {t:.4}: {} components {} (* = eligible)", comps.len(), desc.join(" "));
    }
    Ok(())
}
