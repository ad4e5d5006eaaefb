use std::path::PathBuf;
use std::process::ExitCode;

use cartan_core::algebra::AdjointFault;
use cartan_workbench::builtins::{self, BUILTIN_NAMES};
use cartan_workbench::commands::{cmd_check_cartan, cmd_counterexample, cmd_reproduce, cmd_validate, cmd_weyl, CommandError, ReproduceOptions};
use cartan_workbench::{emit_report, exit, load_config, ConfigError, Format, Report, WorkbenchConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cartan", version, about = "Exact checks for Cartan pairs in twisted group algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the group, cocycle and subgroups of a config.
    Validate(Common),
    /// Check every hypothesis of the Cartan criterion for one subgroup.
    CheckCartan(Common),
    /// Tabulate the Weyl action and Weyl 2-cocycle for one subgroup.
    Weyl(Common),
    /// Look for an element commuting with C_c(S) but not supported in S.
    Counterexample(Common),
    /// Run every built-in scenario against the expected verdicts.
    Reproduce(Common),
}

#[derive(Args)]
struct Common {
    /// Config file, or builtin:g5, builtin:counterexample, builtin:rotation.
    #[arg(long)]
    config: Option<String>,
    /// Subgroup name from the config. Defaults to the only one, if unique.
    #[arg(long)]
    subgroup: Option<String>,
    #[arg(long)]
    ball: Option<u32>,
    #[arg(long)]
    kmax: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run the Weyl construction even when a Cartan hypothesis fails.
    #[arg(long)]
    force: bool,
    /// Negative control for the law suites.
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    AdjointConjugation,
}

fn load(common: &Common) -> Result<WorkbenchConfig, ConfigError> {
    let spec = common.config.as_deref().unwrap_or("builtin:g5");
    let mut cfg = match spec.strip_prefix("builtin:") {
        Some(name) => builtins::builtin(name).ok_or_else(|| ConfigError::UnknownSubgroup {
            name: format!("builtin:{name}"),
            available: BUILTIN_NAMES.join(", "),
        })?,
        None => load_config(&PathBuf::from(spec))?,
    };
    if let Some(b) = common.ball {
        cfg.ball_radius = b;
    }
    if let Some(k) = common.kmax {
        cfg.k_max = k;
    }
    if let Some(n) = common.samples {
        cfg.samples = n;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn subgroup_name(cfg: &WorkbenchConfig, common: &Common) -> Result<String, ConfigError> {
    match &common.subgroup {
        Some(s) => Ok(s.clone()),
        None if cfg.subgroups.len() == 1 => Ok(cfg.subgroups.keys().next().expect("one subgroup").clone()),
        None => Err(ConfigError::UnknownSubgroup {
            name: String::new(),
            available: cfg.subgroups.keys().cloned().collect::<Vec<_>>().join(", "),
        }),
    }
}

fn run(command: Command) -> Result<(Report, Format), CommandError> {
    match command {
        Command::Reproduce(c) => {
            let opts = ReproduceOptions {
                ball: c.ball,
                k_max: c.kmax,
                samples: c.samples,
                seed: c.seed,
                fault: c.inject_fault.map(|Fault::AdjointConjugation| AdjointFault::CoefficientAngleSign),
            };
            Ok((cmd_reproduce(&opts), c.format))
        }
        Command::Validate(c) => Ok((cmd_validate(&load(&c)?), c.format)),
        Command::CheckCartan(c) => {
            let cfg = load(&c)?;
            Ok((cmd_check_cartan(&cfg, &subgroup_name(&cfg, &c)?)?, c.format))
        }
        Command::Weyl(c) => {
            let cfg = load(&c)?;
            Ok((cmd_weyl(&cfg, &subgroup_name(&cfg, &c)?, c.force)?, c.format))
        }
        Command::Counterexample(c) => {
            let cfg = load(&c)?;
            Ok((cmd_counterexample(&cfg, &subgroup_name(&cfg, &c)?)?, c.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, format)) => {
            print!("{}", emit_report(&report, format));
            let code = if report.verdict.is_pass() { exit::OK } else { exit::MISMATCH };
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::CONFIG as u8)
        }
    }
}
