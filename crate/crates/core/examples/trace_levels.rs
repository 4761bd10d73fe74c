//! Level curves `|P| = t` with their argument increments, a monotonicity sweep,
//! and an SVG figure (written to the path given as the first argument, if any).

use lemnikit::level::{LevelTracer, TraceParams};
use lemnikit::report::{self, AnalysisConfig};
use lemnikit::{Complex64, Polynomial};

fn main() -> lemnikit::Result<()> {
    let p = Polynomial::from_real(&[-1.0, 0.0, 1.0])?;
    let cfg = AnalysisConfig::default();
    let trace = report::trace_levels(&p, &[0.5, 1.5], &cfg)?;
    for level in &trace.levels {
        for c in &level.curves {
            println!(
                "t = {}: {} points, increment / 2pi = {:.12}, enclosed zeros {}",
                level.level,
                c.points.len(),
                c.argument_increment / std::f64::consts::TAU,
                c.enclosed_zero_count
            );
        }
    }

    let tracer = LevelTracer::new(&p, TraceParams::default())?;
    let levels: Vec<f64> = (1..=8).map(|k| 0.25 * k as f64 + 0.1).collect();
    for (t, count) in tracer.monotonicity_sweep(Complex64::new(1.0, 0.0), &levels)? {
        println!("N({t:.2}) = {count}");
    }

    if let Some(path) = std::env::args().nth(1) {
        let out = report::cmd_trace(
            &p,
            &AnalysisConfig {
                levels: vec![0.25, 0.5, 0.9, 1.5, 3.0],
                ..cfg
            },
        )?;
        std::fs::write(&path, out.svg.unwrap_or_default())?;
        println!("wrote {path}");
    }
    Ok(())
}
