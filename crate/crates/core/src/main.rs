use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use spinframe::cli::{self, exit_code, load_config, EXIT_CONFIG};

/// Run one spin-kinematics scenario from a TOML config.
#[derive(Parser)]
#[command(name = "spinframe", version)]
struct Args {
    /// Scenario config file
    #[arg(long)]
    config: PathBuf,
    /// Directory for trajectory.csv and report.txt
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override the config seed
    #[arg(long)]
    seed: Option<u64>,
    /// Print the report only when a check fails
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut sc = match load_config(&args.config) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    if let Some(seed) = args.seed {
        sc.seed = seed;
    }
    match cli::run(&sc, &args.out) {
        Ok(report) => {
            if !args.quiet || !report.passed() {
                print!("{}", report.render());
            }
            ExitCode::from(exit_code(&report) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
