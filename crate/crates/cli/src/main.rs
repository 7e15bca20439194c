use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gfdm_cli::commands::{cmd_calibrate, cmd_link, cmd_report, cmd_syslevel};
use gfdm_cli::config::ExperimentConfig;
use gfdm_cli::CliError;

#[derive(Parser)]
#[command(name = "gfdm", version, about = "GFDM link-level simulation and link quality model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the config's output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build SI tables and AWGN BLER LUTs (cached by config hash).
    Calibrate(Common),
    /// Bit-level and abstraction BER/BLER sweeps.
    Link(Common),
    /// System-level run: per-user results and CDFs for both cases.
    Syslevel {
        #[command(flatten)]
        common: Common,
        /// Run the bit-level cross-check (default).
        #[arg(long, overrides_with = "no_bitlevel")]
        bitlevel: bool,
        #[arg(long)]
        no_bitlevel: bool,
    },
    /// Accuracy summary of the CSVs in a result directory.
    Report { dir: PathBuf },
}

fn load(c: &Common) -> Result<(ExperimentConfig, PathBuf), CliError> {
    let mut cfg = ExperimentConfig::load(&c.config)?;
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(o) = &c.out {
        cfg.out = o.clone();
    }
    let out = cfg.out.clone();
    Ok((cfg, out))
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Config(format!("--jobs: {e}")))?;
    }
    match cli.command {
        Command::Calibrate(c) => {
            let (cfg, out) = load(&c)?;
            for (path, status) in cmd_calibrate(&cfg, &out)? {
                println!("{status:?} {path}");
            }
        }
        Command::Link(c) => {
            let (cfg, out) = load(&c)?;
            for p in cmd_link(&cfg, &out)? {
                println!("{}", p.display());
            }
        }
        Command::Syslevel { common, no_bitlevel, .. } => {
            let (cfg, out) = load(&common)?;
            for p in cmd_syslevel(&cfg, &out, !no_bitlevel)? {
                println!("{}", p.display());
            }
        }
        Command::Report { dir } => {
            println!("metric,scope,value");
            for r in cmd_report(&dir)? {
                println!("{},{},{}", r.metric, r.scope, r.value);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
