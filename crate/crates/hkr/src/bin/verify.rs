use std::process::ExitCode;

use clap::Parser;
use hkr::report::{parse_config, run_suite, Format, SuiteConfig};

/// Runs a verification suite and writes its report.
///
/// Exit status: 0 when every required check passes, 1 when one fails, 2 on usage errors.
#[derive(Parser, Debug)]
#[command(name = "verify")]
struct Args {
    /// JSON config file; flags given alongside it override its fields.
    #[arg(long)]
    config: Option<String>,
    /// One of all, signs, koszul, dg, ak, hkr, cycle, twist, probe.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    max_rank: Option<usize>,
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Library nerve name or path to a JSON nerve file.
    #[arg(long)]
    nerve: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Random cases per rank for the twist checks.
    #[arg(long)]
    samples: Option<usize>,
    /// Report path; standard output when absent.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_parser = ["json", "md"])]
    format: Option<String>,
    /// Record elapsed milliseconds per check (the report is then not reproducible).
    #[arg(long)]
    timings: bool,
}

fn config(args: Args) -> Result<SuiteConfig, String> {
    let mut cfg = match &args.config {
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            parse_config(&src).map_err(|e| format!("{path}: {e}"))?
        }
        None => SuiteConfig::new(args.suite.as_deref().ok_or("either --suite or --config is required")?),
    };
    if let Some(s) = args.suite {
        cfg.suite = s;
    }
    if let Some(r) = args.max_rank {
        cfg.max_rank = r;
    }
    if let Some(d) = args.degree_bound {
        cfg.degree_bound = d;
    }
    if let Some(n) = args.nerve {
        cfg.nerve = n;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(s) = args.samples {
        cfg.samples = s;
    }
    if args.out.is_some() {
        cfg.out = args.out;
    }
    if let Some(f) = args.format {
        cfg.format = f.parse::<Format>().map_err(|e| e.to_string())?;
    }
    cfg.timings |= args.timings;
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cfg = match config(Args::parse()) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("verify: {msg}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    let text = report.render();
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("verify: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for c in &report.checks {
        let status = serde_json::to_value(c.status).unwrap();
        eprintln!("{:<26} {}", c.id, status.as_str().unwrap());
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
