//! Command-line front end: sweeps, config validation and the coverage angle.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sagin::amud::coverage::CoverageDesign;
use sagin::experiments::{run_sweep, write_csv, write_csv_to, Config, SweepAxis, SweepSpec};
use sagin::{Error, SchemeId};

#[derive(Parser)]
#[command(name = "sagin-sim", version, about = "Satellite / UAV relay / ground network downlink simulator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a sweep and write per-trial and mean rows as CSV.
    Run {
        #[arg(long, value_parser = parse_axis)]
        sweep: SweepAxis,
        /// Comma-separated scheme names.
        #[arg(long, value_delimiter = ',', value_parser = parse_scheme, default_value = "amud,egc,leo-gbs,gbs-only")]
        schemes: Vec<SchemeId>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a config file.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the optimal elevation angle, coverage radius and max LoS distance.
    Angle {
        #[arg(long, value_enum, default_value_t = Env::Urban)]
        env: Env,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Env {
    Urban,
}

fn parse_axis(s: &str) -> Result<SweepAxis, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_scheme(s: &str) -> Result<SchemeId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn load(path: Option<&PathBuf>) -> sagin::Result<Config> {
    match path {
        Some(p) => Config::load(p),
        None => Ok(Config::default()),
    }
}

fn exec(cmd: Cmd) -> sagin::Result<()> {
    match cmd {
        Cmd::Run { sweep, schemes, trials, seed, config, out } => {
            let params = load(config.as_ref())?.to_params()?;
            let spec = SweepSpec { schemes, trials, ..SweepSpec::preset(sweep, seed) };
            let res = run_sweep(&spec, &params)?;
            let rows = res.all_rows();
            match out {
                Some(path) => {
                    write_csv(&rows, &path)?;
                    eprintln!("wrote {} rows to {}", rows.len(), path.display());
                }
                None => write_csv_to(&rows, std::io::stdout().lock())
                    .map_err(|source| Error::Csv { path: "<stdout>".into(), source })?,
            }
            Ok(())
        }
        Cmd::Validate { config } => {
            Config::load(&config)?.to_params()?;
            println!("{}: ok", config.display());
            Ok(())
        }
        Cmd::Angle { env: Env::Urban, config } => {
            let p = load(config.as_ref())?.to_params()?;
            let d = CoverageDesign::new(&p.a2g, p.uav_altitude, p.max_path_loss_db)?;
            println!("theta_opt = {:.4} deg ({:.6} rad)", d.theta_opt.to_degrees(), d.theta_opt);
            println!("R_j       = {:.3} m at h = {} m", d.radius, p.uav_altitude);
            println!("d_max     = {:.3} m", d.d_max);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match exec(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 1 })
        }
    }
}
