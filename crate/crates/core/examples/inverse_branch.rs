//! The branch `f` of `P^{-1}` with `f(0) = a` on the unit disk, and the ratio
//! `|w f'(w) / (f(w) - a)|` against `1/n`.

use lemnikit::bound::{self, BoundParams};
use lemnikit::{Complex64, Polynomial};

fn main() -> lemnikit::Result<()> {
    // Zeros at +-1, saddle value 1: the level-1/2 component around 1 is eligible.
    let p = Polynomial::from_real(&[-1.0, 0.0, 1.0])?.scaled(Complex64::new(2.0, 0.0))?;
    let a = Complex64::new(1.0, 0.0);
    let params = BoundParams::default();
    let mut overall = f64::INFINITY;
    for k in 0..16 {
        let dir = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 16.0);
        let path = bound::continue_inverse_branch(&p, a, dir, 64, &params)?;
        let check = bound::verify_inverse_bound(&path, p.degree(), params.verify_tol);
        let defect = bound::reciprocal_defect(&p, &path)?;
        overall = overall.min(check.min_ratio);
        println!(
            "arg w = {:5.3}: min ratio {:.6}, f at the rim {:.6}, reciprocal defect {defect:.1e}",
            dir.arg(),
            check.min_ratio,
            path.f_values.last().unwrap()
        );
    }
    println!("min over all radii {overall:.6} vs 1/n = {}", 1.0 / p.degree() as f64);
    Ok(())
}
