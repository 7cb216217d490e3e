use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gjf_cli::config::{Orders, StudyConfig};
use gjf_cli::output::{config_hash, render_csv, render_json, SolutionDump};
use gjf_cli::study::{run_study, solve_single, StudyError};
use gjf_cli::Format;

#[derive(Parser)]
#[command(name = "gjf", version, about = "Spectral Petrov-Galerkin solvers for fractional differential equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a convergence study described by a TOML or JSON file.
    Study {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the format given in the config.
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Overrides the output path given in the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the quadrature surplus given in the config.
        #[arg(long)]
        quad_extra: Option<usize>,
    },
    /// Solve one problem and report its errors.
    Solve {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        nu: f64,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value_t = 16)]
        quad_extra: usize,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), StudyError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| {
            StudyError::Config(gjf_cli::ConfigError::Io {
                path: path.clone(),
                source,
            })
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), StudyError> {
    match cli.command {
        Command::Study {
            config,
            format,
            out,
            quad_extra,
        } => {
            let (mut cfg, bytes) = StudyConfig::load(&config)?;
            if let Some(q) = quad_extra {
                cfg.quad_extra = q;
            }
            let format = format.unwrap_or(cfg.format);
            let out = out.or_else(|| cfg.output.clone());
            let hash = config_hash(&bytes);
            let rows = run_study(&cfg)?;
            let text = match format {
                Format::Csv => render_csv(&rows, &hash),
                Format::Json => render_json(&rows, &hash, None),
            };
            emit(&text, out.as_ref())
        }
        Command::Solve {
            kind,
            nu,
            n,
            rhs,
            out,
            format,
            quad_extra,
        } => {
            let cfg = StudyConfig {
                kind,
                nu: Orders::One(nu),
                rhs,
                n_list: vec![n],
                norms: vec!["L2".into(), "FracEnergy".into()],
                output: out.clone(),
                format,
                quad_extra,
            };
            let canonical = serde_json::to_vec(&cfg).expect("config serializes");
            let hash = config_hash(&canonical);
            let (sol, row) = solve_single(&cfg)?;
            let rows = [row];
            let text = match format {
                Format::Csv => render_csv(&rows, &hash),
                Format::Json => {
                    let dump = SolutionDump {
                        family: format!("{:?}", sol.coeffs.family),
                        start: sol.coeffs.start,
                        coeffs: sol.coeffs.coeffs.clone(),
                    };
                    render_json(&rows, &hash, Some(&dump))
                }
            };
            emit(&text, out.as_ref())
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gjf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
