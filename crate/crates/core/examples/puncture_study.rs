//! `cap C(r, rho)` tends to `cap C(r)` as the punctures shrink.

use lemnikit::capacity::{self, CondenserSpec, SolverParams};
use lemnikit::{poly, Complex64, Polynomial};

fn main() -> lemnikit::Result<()> {
    let p = Polynomial::from_real(&[-1.0, 0.0, 1.0])?;
    let a = Complex64::new(1.0, 0.0);
    let z0 = Complex64::new(1.6, 0.0);
    let criticals: Vec<Complex64> = poly::critical_points(&p)?
        .iter()
        .filter(|c| c.is_proper())
        .map(|c| c.location)
        .collect();
    let base = CondenserSpec::slit(a, z0, 1e-2, 1e4)?;
    let study = capacity::puncture_convergence(&base, a, &criticals, &[0.48, 0.24, 0.12, 0.06], &[256, 512], &SolverParams::default())?;
    println!("cap C(r) = {:.6}", study.base.value);
    for e in &study.entries {
        println!("rho = {:<5} cap C(r, rho) = {:.6}, deviation {:.6}", e.rho, e.estimate.value, e.deviation);
    }
    println!("deviations shrink: {}", study.monotone);
    Ok(())
}
