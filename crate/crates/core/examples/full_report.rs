//! Runs the `report` pipeline and writes `report.json` and `report.svg`
//! into the directory given as the first argument (default `target/lemnikit-report`).

use lemnikit::report::{self, AnalysisConfig};
use lemnikit::Polynomial;

fn main() -> lemnikit::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "target/lemnikit-report".into());
    let p = Polynomial::from_json_str(r#"{"coeffs": [[-1, 0], [0, 0.5], [0, 0], [1, 0]]}"#)?;
    let cfg = AnalysisConfig {
        tau: 0.3,
        levels: vec![0.3, 0.8, 2.0],
        ..AnalysisConfig::default()
    };
    let out = report::cmd_report(&p, &cfg)?;
    for path in out.write_to(dir.as_ref())? {
        println!("wrote {}", path.display());
    }
    println!("violations: {}", out.violations());
    Ok(())
}
