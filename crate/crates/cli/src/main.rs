use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use dynosc::verify::VerifyOptions;
use dynosc::{evolve, moments, verify, CliError, CliResult, RunConfig};
use dynosc_core::oracle::TauConvention;
use dynosc_core::{MomentumDenominator, Preset};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    /// Run the numerical checks and print one verdict per check.
    Verify,
    /// Write one CSV per frame plus a manifest into --out.
    Evolve,
    /// Print the moment table as CSV on standard output.
    Moments,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PresetArg {
    Schrodinger,
    Example1,
    Example2,
    Example3,
    Minuncert,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::Schrodinger => Preset::Schrodinger,
            PresetArg::Example1 => Preset::Example1,
            PresetArg::Example2 => Preset::Example2,
            PresetArg::Example3 => Preset::Example3,
            PresetArg::Minuncert => Preset::Minuncert,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DenominatorArg {
    /// 4α₀² + β₀⁴
    #[value(name = "beta0quart")]
    Beta0Quart,
    /// 4α₀² + β₀²
    #[value(name = "beta0sq")]
    Beta0Sq,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TauArg {
    #[value(name = "minus_gamma")]
    MinusGamma,
    #[value(name = "minus_two_gamma")]
    MinusTwoGamma,
}

/// Closed-form dynamic states of the harmonic oscillator: verification,
/// frame export and moment tables.
#[derive(Debug, Parser)]
#[command(name = "dynosc", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON run configuration.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in configuration.
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    /// Output directory for `evolve`.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// With `moments`: append quadrature relative errors and fail above 1e-8.
    #[arg(long)]
    check: bool,
    /// Width denominator of the momentum-space parameter map.
    #[arg(long, value_enum, default_value = "beta0quart")]
    appendix_b_denominator: DenominatorArg,
    /// Comoving time used by the comoving-frame check.
    #[arg(long, value_enum, default_value = "minus_two_gamma")]
    tau_convention: TauArg,
}

fn load_config(cli: &Cli) -> CliResult<RunConfig> {
    match (&cli.config, cli.preset) {
        (Some(path), _) => RunConfig::load(path),
        (None, Some(p)) => Ok(RunConfig::preset(p.into())),
        (None, None) => Err(CliError::Config("one of --config or --preset is required".into())),
    }
}

fn run(cli: &Cli) -> CliResult<bool> {
    let config = load_config(cli)?;
    let denominator = match cli.appendix_b_denominator {
        DenominatorArg::Beta0Quart => MomentumDenominator::Beta0Quart,
        DenominatorArg::Beta0Sq => MomentumDenominator::Beta0Sq,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let io = |e| CliError::io("<stdout>", e);
    match cli.command {
        Command::Verify => {
            let tau = match cli.tau_convention {
                TauArg::MinusGamma => TauConvention::MinusGamma,
                TauArg::MinusTwoGamma => TauConvention::MinusTwoGamma,
            };
            let report = verify(&config, VerifyOptions { denominator, tau })?;
            for check in &report.checks {
                writeln!(out, "{check}").map_err(io)?;
            }
            let passed = report.checks.iter().filter(|c| c.passed()).count();
            writeln!(out, "{passed}/{} checks passed", report.checks.len()).map_err(io)?;
            Ok(report.passed())
        }
        Command::Evolve => {
            let summary = evolve(&config, &cli.out, denominator)?;
            writeln!(out, "wrote {} files to {}", summary.files_written, summary.dir.display()).map_err(io)?;
            Ok(true)
        }
        Command::Moments => {
            let table = moments(&config, cli.check, denominator)?;
            out.write_all(table.csv.as_bytes()).map_err(io)?;
            if let Some(worst) = table.worst_error.filter(|_| !table.passed()) {
                eprintln!(
                    "moment check failed: largest relative error {worst:.3e} exceeds {:.0e}",
                    dynosc::moments::CHECK_TOLERANCE
                );
            }
            Ok(table.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
