//! `cap C(r)` for the ray `[0, +inf)` against the disk `|z + 1| <= r`, next to
//! its two-term expansion; the fitted inner radius approaches `4|a - z0| = 4`.

use lemnikit::report::{self, AnalysisConfig};
use lemnikit::Complex64;

fn main() -> lemnikit::Result<()> {
    let cfg = AnalysisConfig::default();
    let rows = report::slit_table(Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0), &[1e-1, 1e-2, 1e-3, 1e-4], &cfg)?;
    println!("{:>8} {:>10} {:>10} {:>10} {:>8} {:>8}", "r", "numeric", "two-term", "2nd term", "err/2nd", "R_eff");
    for r in rows {
        println!(
            "{:>8.0e} {:>10.6} {:>10.6} {:>10.6} {:>8.3} {:>8.4}",
            r.r, r.numeric, r.asymptotic, r.second_term, r.relative_to_second_term, r.effective_inner_radius
        );
    }
    Ok(())
}
