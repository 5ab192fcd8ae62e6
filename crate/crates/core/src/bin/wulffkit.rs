use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wulffkit::experiments::{run_report, ReportConfig};
use wulffkit::io::{read_json, PolygonSpec, TensionSpec};
use wulffkit::Result;

#[derive(Parser)]
#[command(
    name = "wulffkit",
    version,
    about = "Planar anisotropic isoperimetry toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// All functionals of one polygon, written as a JSON report.
    Compute {
        #[arg(long)]
        tension: PathBuf,
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rhombus-zigzag sweep.
    Example61 {
        #[arg(long, default_value_t = 1e-4)]
        theta_min: f64,
        #[arg(long, default_value_t = 1e-2)]
        theta_max: f64,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long, default_value_t = 32)]
        teeth: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// l^p cone sweep.
    Example62 {
        #[arg(long, default_value_t = 4.0)]
        p: f64,
        #[arg(long, default_value_t = 0.02)]
        r_min: f64,
        #[arg(long, default_value_t = 0.2)]
        r_max: f64,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Second-order expansion remainders on an ellipse.
    Fuglede {
        #[arg(long, default_value_t = 1.0)]
        a11: f64,
        #[arg(long, default_value_t = 1.0)]
        a22: f64,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        modes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.01,0.02,0.04,0.07,0.1")]
        eps_list: Vec<f64>,
        #[arg(long, default_value_t = wulffkit::elliptic::DEFAULT_NODES)]
        nodes: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Randomized invariant checks.
    Fuzz {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cmd: Command) -> Result<()> {
    let (config, out) = match cmd {
        Command::Compute {
            tension,
            polygon,
            out,
        } => (
            ReportConfig::Compute {
                tension: read_json::<TensionSpec>(&tension)?,
                polygon: read_json::<PolygonSpec>(&polygon)?,
            },
            out,
        ),
        Command::Example61 {
            theta_min,
            theta_max,
            steps,
            teeth,
            out,
        } => (
            ReportConfig::Example61 {
                theta_min,
                theta_max,
                steps,
                teeth,
            },
            out,
        ),
        Command::Example62 {
            p,
            r_min,
            r_max,
            steps,
            out,
        } => (
            ReportConfig::Example62 {
                p,
                r_min,
                r_max,
                steps,
            },
            out,
        ),
        Command::Fuglede {
            a11,
            a22,
            modes,
            eps_list,
            nodes,
            out,
        } => (
            ReportConfig::Fuglede {
                a11,
                a22,
                modes,
                eps_list,
                nodes,
            },
            out,
        ),
        Command::Fuzz { seed, count, out } => (ReportConfig::Fuzz { seed, count }, out),
    };
    for path in run_report(&config, &out)? {
        log::info!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
