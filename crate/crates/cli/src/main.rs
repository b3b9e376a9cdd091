use std::io::Write;
use std::process::ExitCode;

use chiralpol_cli::{run_oracle_suite, scan_cavity, scan_dispersion, scan_n, Command, Config, RawConfig, ScanError};
use clap::{Parser, Subcommand};

const EXIT_CONFIG: u8 = 1;
const EXIT_ORACLE: u8 = 2;
const EXIT_UNSTABLE: u8 = 3;

#[derive(Parser)]
#[command(name = "chiralpol", version, about = "Chiral polariton spectra, scans and oracle checks")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Configuration file with `key = value` lines (a CSV written by this tool also works).
    #[arg(long, global = true)]
    config: Option<String>,
    /// Output file; standard output if omitted.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Override a configuration value, e.g. `--set n=1000`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    /// Random seed (same as `--set seed=...`).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Exit with status 3 if any row is unstable.
    #[arg(long, global = true)]
    strict: bool,
    /// List the configuration keys of the command with defaults and exit.
    #[arg(long, global = true)]
    list_keys: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Sub {
    /// Polaritons over cavity frequency and chirality.
    ScanCavity,
    /// Enantio-discrimination against the number of emitters.
    ScanN,
    /// Tavis-Cummings polaritons against in-plane wavenumber.
    ScanDispersion,
    /// Random exact-diagonalization checks of the closed-form frequencies.
    Oracle,
}

impl Sub {
    fn command(self) -> Command {
        match self {
            Sub::ScanCavity => Command::ScanCavity,
            Sub::ScanN => Command::ScanN,
            Sub::ScanDispersion => Command::ScanDispersion,
            Sub::Oracle => Command::Oracle,
        }
    }
}

fn resolve(cli: &Cli) -> Result<Config, ScanError> {
    let mut raw = match &cli.config {
        Some(path) => RawConfig::read(path)?,
        None => RawConfig::default(),
    };
    for s in &cli.set {
        raw.set(s)?;
    }
    if let Some(seed) = cli.seed {
        raw.insert("seed".into(), seed.to_string());
    }
    Ok(Config::resolve(cli.command.command(), &raw)?)
}

fn run(cli: &Cli) -> Result<u8, ScanError> {
    let config = resolve(cli)?;
    let (table, oracle_failures) = match cli.command {
        Sub::ScanCavity => (scan_cavity(&config)?, 0),
        Sub::ScanN => (scan_n(&config)?, 0),
        Sub::ScanDispersion => (scan_dispersion(&config)?, 0),
        Sub::Oracle => {
            let suite = run_oracle_suite(&config)?;
            if suite.failures > 0 {
                eprintln!("{} of {} oracle sets deviate (max relative deviation {:e})", suite.failures, suite.table.rows.len(), suite.max_deviation);
            }
            (suite.table, suite.failures)
        }
    };
    let csv = table.to_csv();
    let written = match &cli.out {
        Some(path) => std::fs::write(path, csv),
        None => std::io::stdout().lock().write_all(csv.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return Ok(EXIT_CONFIG);
    }
    let unstable = table.unstable_rows();
    if oracle_failures > 0 {
        Ok(EXIT_ORACLE)
    } else if cli.strict && unstable > 0 {
        eprintln!("{unstable} unstable rows");
        Ok(EXIT_UNSTABLE)
    } else {
        Ok(0)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_keys {
        for k in cli.command.command().keys() {
            println!("{:<22} {:<28} {}", k.name, k.default, k.doc);
        }
        return ExitCode::SUCCESS;
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ ScanError::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ORACLE)
        }
    }
}
