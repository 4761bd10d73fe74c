use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lemnikit::report::{self, AnalysisConfig, Outcome};
use lemnikit::{Error, Polynomial};

/// Lemniscate components, the logarithmic-derivative bound, and condenser capacities.
#[derive(Parser)]
#[command(name = "lemnikit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Merge tree, components at tau, and the bound on each component.
    Analyze(Common),
    /// Level curves with argument increments, as JSON and SVG.
    Trace(Common),
    /// Inverse-branch ratios on eligible components.
    Inverse(Common),
    /// Capacity of a condenser, annulus, slit or puncture study described in JSON.
    Capacity(Common),
    /// All of the above for one polynomial.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Polynomial JSON (`{"coeffs": [[re, im], ...]}`), or a capacity input for `capacity`.
    input: PathBuf,
    #[arg(long)]
    tau: Option<f64>,
    /// Comma-separated levels.
    #[arg(long)]
    levels: Option<String>,
    /// Comma-separated grid sizes, coarse to fine.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; JSON goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    verbose: bool,
    /// `key = value` file, overridden by flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra point `re,im` at which to evaluate the bound.
    #[arg(long = "probe", allow_hyphen_values = true)]
    probes: Vec<String>,
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn config(c: &Common) -> Result<AnalysisConfig, Error> {
    let mut cfg = AnalysisConfig::default();
    if let Some(path) = &c.config {
        cfg.apply_str(&read(path)?)?;
    }
    if let Some(t) = c.tau {
        cfg.tau = t;
    }
    if let Some(l) = &c.levels {
        cfg.set("levels", l)?;
    }
    if let Some(g) = &c.grid {
        cfg.set("grid", g)?;
    }
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(o) = &c.out {
        cfg.out = Some(o.clone());
    }
    cfg.verbose |= c.verbose;
    if !c.probes.is_empty() {
        cfg.probes = c.probes.iter().map(|p| report::parse_complex(p)).collect::<Result<_, _>>()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let (c, verb) = match &cli.command {
        Command::Analyze(c) => (c, "analyze"),
        Command::Trace(c) => (c, "trace"),
        Command::Inverse(c) => (c, "inverse"),
        Command::Capacity(c) => (c, "capacity"),
        Command::Report(c) => (c, "report"),
    };
    let cfg = config(c)?;
    let text = read(&c.input)?;
    let outcome = if verb == "capacity" {
        report::cmd_capacity(&report::parse_capacity_input(&text)?, &cfg)?
    } else {
        let p = Polynomial::from_json_str(&text)?;
        match verb {
            "analyze" => report::cmd_analyze(&p, &cfg)?,
            "trace" => report::cmd_trace(&p, &cfg)?,
            "inverse" => report::cmd_inverse(&p, &cfg)?,
            _ => report::cmd_report(&p, &cfg)?,
        }
    };
    match &cfg.out {
        Some(dir) => {
            for path in outcome.write_to(dir)? {
                eprintln!("wrote {}", path.display());
            }
        }
        None => print!("{}", outcome.json),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) if o.violations() > 0 => {
            eprintln!("{} violation(s)", o.violations());
            ExitCode::from(1)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) if e.is_input_error() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
