//! Grid capacity of an annulus against `2 pi / log(r2 / r1)`.

use lemnikit::capacity::{self, CondenserSpec, SolverParams};
use lemnikit::Complex64;

fn main() -> lemnikit::Result<()> {
    let grids: Vec<usize> = std::env::args()
        .nth(1)
        .map(|s| s.split(',').filter_map(|g| g.parse().ok()).collect())
        .unwrap_or_else(|| vec![128, 256]);
    for ratio in [2.0, std::f64::consts::E, 10.0] {
        let spec = CondenserSpec::annulus(Complex64::new(0.0, 0.0), 1.0, ratio);
        let est = capacity::capacity(&spec, &grids, &SolverParams::default())?;
        let exact = capacity::annulus_capacity(1.0, ratio);
        println!(
            "r2/r1 = {ratio:.4}: {:.6} (history {:?}), exact {exact:.6}, rel. error {:.2e}",
            est.value,
            est.refinement_history,
            (est.value - exact).abs() / exact
        );
    }
    Ok(())
}
