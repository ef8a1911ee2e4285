//! Command-line definitions and dispatch.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::diff::{run_diff, Tolerances};
use crate::error::{CliError, CliResult, EXIT_DIFF, EXIT_OK};
use crate::eval::evaluate;
use crate::expr::parse_real;
use crate::output::{write_grid_csv, write_json, Format};
use crate::scenario::{resolve, Overrides, Resolved, ScenarioId, ScenarioSpec, DEFAULT_DIM_CAP, DIM_CAP_ENV};
use crate::sweep::{run_sweep, write_sweep_csv, SweepGrid, SweepParam};

#[derive(Debug, Parser)]
#[command(name = "discorrelate", version, about = "Heralded discorrelation scenarios as CSV/JSON data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest per-mode Fock dimension accepted.
    #[arg(long, env = DIM_CAP_ENV, default_value_t = DEFAULT_DIM_CAP, global = true)]
    pub dim_cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one scenario.
    Run(RunArgs),
    /// Compare the closed-form coefficients with the circuit simulation.
    Diff(DiffArgs),
    /// Evaluate a scenario over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// fig1, fig3a..fig3d, fig4a..fig4d, fig5a..fig5c, fig6a..fig6c or custom.
    pub scenario: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// One squeezing value, or `a,b` for the two modes.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Fractional photon loss.
    #[arg(long, allow_hyphen_values = true)]
    pub loss: Option<String>,
    /// anc, herald or after.
    #[arg(long)]
    pub loss_point: Option<String>,
    /// State for the fig6 scenarios.
    #[arg(long)]
    pub state: Option<String>,
    /// Input kind for the custom scenario: coherent, squeezed or tmsv.
    #[arg(long)]
    pub input: Option<String>,
}

impl ScenarioArgs {
    pub fn spec(&self, dim_cap: usize) -> CliResult<ScenarioSpec> {
        let id: ScenarioId = self.scenario.parse()?;
        let overrides = Overrides {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            lambda: self.lambda.clone(),
            t: self.t.clone(),
            dim: self.dim,
            loss: self.loss.clone(),
            loss_point: self.loss_point.clone(),
            state: self.state.clone(),
            input: self.input.clone(),
        };
        Ok(ScenarioSpec { id, overrides, dim_cap })
    }

    pub fn resolve(&self, dim_cap: usize) -> CliResult<Resolved> {
        resolve(&self.spec(dim_cap)?)
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, default_value = "csv")]
    pub format: String,
    /// Output file; with csv the summary goes next to it as `<stem>.summary.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiffArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, default_value_t = Tolerances::default().coefficient)]
    pub coeff_tol: f64,
    #[arg(long, default_value_t = Tolerances::default().probability)]
    pub prob_tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// loss, t or phase.
    #[arg(long)]
    pub param: String,
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value = "csv")]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn sink<'a>(out: Option<&Path>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

fn real_flag(flag: &'static str, s: &str) -> CliResult<f64> {
    parse_real(s).map_err(|source| CliError::Expr { flag, source })
}

/// Runs one command, writing results to `stdout` unless `--out` is given.
/// Returns the exit code for a completed run.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    match &cli.command {
        Command::Run(a) => {
            let format: Format = a.format.parse()?;
            let r = a.scenario.resolve(cli.dim_cap)?;
            let eval = evaluate(&r)?;
            match format {
                Format::Csv => {
                    let mut w = sink(a.out.as_deref(), stdout)?;
                    write_grid_csv(&mut w, &eval.distribution)?;
                    w.flush()?;
                    if let Some(out) = &a.out {
                        write_json(BufWriter::new(File::create(summary_path(out))?), &eval.summary)?;
                    }
                }
                Format::Json => {
                    let mut w = sink(a.out.as_deref(), stdout)?;
                    write_json(&mut w, &eval.summary)?;
                    w.flush()?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Diff(a) => {
            let r = a.scenario.resolve(cli.dim_cap)?;
            let report = run_diff(&r, Tolerances { coefficient: a.coeff_tol, probability: a.prob_tol })?;
            let mut w = sink(a.out.as_deref(), stdout)?;
            write_json(&mut w, &report)?;
            w.flush()?;
            Ok(if report.pass { EXIT_OK } else { EXIT_DIFF })
        }
        Command::Sweep(a) => {
            let format: Format = a.format.parse()?;
            let param: SweepParam = a.param.parse()?;
            let grid = SweepGrid { param, from: real_flag("from", &a.from)?, to: real_flag("to", &a.to)?, steps: a.steps };
            let r = a.scenario.resolve(cli.dim_cap)?;
            let result = run_sweep(&r, grid)?;
            let mut w = sink(a.out.as_deref(), stdout)?;
            match format {
                Format::Csv => write_sweep_csv(&mut w, &result)?,
                Format::Json => write_json(&mut w, &result)?,
            }
            w.flush()?;
            Ok(EXIT_OK)
        }
    }
}
