//! Roots with multiplicities, critical points and their classification,
//! and the polar derivative `n P(z) - (z - a) P'(z)`.

use lemnikit::{poly, Complex64, Polynomial};

fn main() -> lemnikit::Result<()> {
    let z = |re: f64, im: f64| Complex64::new(re, im);
    // (z - 1)^2 (z + 1) (z - i)
    let p = Polynomial::from_roots(z(1.0, 0.0), &[z(1.0, 0.0), z(1.0, 0.0), z(-1.0, 0.0), z(0.0, 1.0)])?;
    println!("P = {p}");
    for r in &poly::find_roots(&p)?.roots {
        println!("zero {:.12} multiplicity {}", r.location, r.multiplicity);
    }
    for c in poly::critical_points(&p)? {
        println!(
            "critical point {:.9} ({:?}), critical value {:.6}",
            c.location, c.kind, c.critical_value
        );
    }
    let a = z(-1.0, 0.0);
    let w = z(0.3, -0.4);
    println!("D_a P({w}) = {:.6}", poly::polar_derivative(&p, a, w));
    println!("bound value at {w}: {:.6}", poly::bound_value(&p, a, w)?);
    Ok(())
}
