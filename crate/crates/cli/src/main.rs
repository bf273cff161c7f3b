//! `qpd3`: evaluate, sweep and verify the three-player quantum Prisoner's Dilemma.

mod args;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qpd3::analysis::{
    best_response, nash_check, nash_invariance_map, strategy_surface, sweep, GridSpec, Preset,
    SurfaceSpec, SweepSpec, SweepVariable,
};
use qpd3::verify::{self, VerifyOptions};
use qpd3::{closed_form_payoffs, pipeline_payoffs, BasisReading, Player, StrategyParams, Table};
use serde_json::json;

use args::{load_table, parse_triple, GameArgs};
use output::{csv, emit};

#[derive(Parser, Debug)]
#[command(
    name = "qpd3",
    version,
    about = "Three-player quantum Prisoner's Dilemma under correlated dephasing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Payoffs and outcome probabilities for one configuration, as JSON
    Payoff {
        #[command(flatten)]
        game: GameArgs,
    },
    /// Payoffs along a grid in p or mu (both passages), as CSV
    Sweep {
        #[command(flatten)]
        game: GameArgs,
        /// Swept parameter: p|mu (default preset: fig2 for p, fig3 for mu)
        #[arg(long)]
        var: SweepVariable,
        /// Grid as start:stop:count
        #[arg(long, default_value = "0:1:21")]
        grid: GridSpec,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Alice's payoff over (alpha1, theta1), as CSV (default preset: fig4)
    Surface {
        #[command(flatten)]
        game: GameArgs,
        /// Points per axis
        #[arg(long, default_value_t = 41)]
        res: usize,
        /// Output file (default: standard output)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid best response of one player, as JSON (default preset: fig4)
    BestResponse {
        #[command(flatten)]
        game: GameArgs,
        /// Responding player: A|B|C
        #[arg(long, default_value = "A")]
        player: Player,
        /// Strategy to compare against, theta,alpha,beta (default: the player's configured strategy)
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        claimed: Option<[f64; 3]>,
        /// Points per axis
        #[arg(long, default_value_t = 25)]
        res: usize,
    },
    /// Check whether the configured profile is a grid Nash equilibrium, as JSON (default preset: fig4)
    NashCheck {
        #[command(flatten)]
        game: GameArgs,
        /// Points per axis
        #[arg(long, default_value_t = 25)]
        res: usize,
        /// With --mu-grid, repeat the check over p values start:stop:count
        #[arg(long, requires = "mu_grid")]
        p_grid: Option<GridSpec>,
        /// With --p-grid, repeat the check over mu values start:stop:count
        #[arg(long, requires = "p_grid")]
        mu_grid: Option<GridSpec>,
    },
    /// Run the acceptance checks
    Verify {
        /// Seed for the randomised checks
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Directory for the JSON reports (default: none written)
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Payoff table for the table-generic checks (default: the standard table)
        #[arg(long)]
        table: Option<PathBuf>,
        /// Measurement basis reading
        #[arg(long, default_value = "uniform")]
        basis: BasisReading,
    },
}

/// Error with its exit code: 2 for bad input, 3 for a broken numerical invariant.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Self { code: 2, message }
    }
}

impl From<qpd3::Error> for Failure {
    fn from(e: qpd3::Error) -> Self {
        Self {
            code: if e.is_numerical() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn print_json(value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serialisable");
    emit(&(text + "\n"), None)
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Payoff { game } => {
            let cfg = game.config(None)?;
            let out = pipeline_payoffs(&cfg)?;
            let cf = closed_form_payoffs(&cfg)?;
            print_json(&json!({
                "payoff_A": out.payoffs[0],
                "payoff_B": out.payoffs[1],
                "payoff_C": out.payoffs[2],
                "outcome_probabilities": out.probabilities,
                "closed_form": {
                    "values": cf.values,
                    "max_abs_discrepancy": cf.max_abs_discrepancy,
                },
                "basis": cfg.basis(),
            }))?;
        }
        Command::Sweep {
            game,
            var,
            grid,
            out,
        } => {
            let fallback = match var {
                SweepVariable::P => Preset::Fig2,
                SweepVariable::Mu => Preset::Fig3,
            };
            let spec = SweepSpec::new(var, grid.points(), game.config(Some(fallback))?)?;
            let rows = sweep(&spec)?;
            let text = csv(
                "x,payoff_A,payoff_B,payoff_C",
                rows.iter()
                    .map(|r| vec![r.x, r.payoffs[0], r.payoffs[1], r.payoffs[2]]),
            );
            emit(&text, out.as_deref())?;
        }
        Command::Surface { game, res, out } => {
            let spec = SurfaceSpec::uniform(res, game.config(Some(Preset::Fig4))?)?;
            let surface = strategy_surface(&spec)?;
            let text = csv(
                "alpha1,theta1,payoff_A",
                surface.rows().map(|(a, t, v)| vec![a, t, v]),
            );
            emit(&text, out.as_deref())?;
        }
        Command::BestResponse {
            game,
            player,
            claimed,
            res,
        } => {
            let cfg = game.config(Some(Preset::Fig4))?;
            let claimed = match claimed {
                Some([t, a, b]) => StrategyParams::new(t, a, b)?,
                None => *cfg.strategy(player),
            };
            let r = best_response(&cfg, player, claimed, res)?;
            print_json(&serde_json::to_value(&r).expect("serialisable"))?;
        }
        Command::NashCheck {
            game,
            res,
            p_grid,
            mu_grid,
        } => {
            let cfg = game.config(Some(Preset::Fig4))?;
            let profile = *cfg.strategies();
            let value = match (p_grid, mu_grid) {
                (Some(pg), Some(mg)) => {
                    let map = nash_invariance_map(&cfg, profile, &pg.points(), &mg.points(), res)?;
                    serde_json::to_value(&map)
                }
                _ => serde_json::to_value(&nash_check(&cfg, profile, res)?),
            };
            print_json(&value.expect("serialisable"))?;
        }
        Command::Verify {
            seed,
            out_dir,
            table,
            basis,
        } => {
            let table = match &table {
                Some(path) => load_table(path)?,
                None => Table::default(),
            };
            let opts = VerifyOptions {
                seed,
                basis,
                table,
                out_dir,
            };
            println!("basis reading: {basis}; seed: {seed}");
            let report = verify::run_all(&opts)?;
            for check in &report.checks {
                println!("{check}");
            }
            if report.all_passed() {
                println!("all {} checks passed", report.checks.len());
            } else {
                for check in report.failures() {
                    eprintln!("failed: check {} ({})", check.id, check.name);
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
