//! Command-line surface.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use skellam_core::diagnostics::{self, CURVE_POINTS};
use skellam_core::simulation::simulate_path_indexed;
use skellam_core::{calibrate_snapshot, calibrate_timeline, GameState, InflationModel, ScoringRates};

use crate::error::{CliError, EXIT_OK, EXIT_VALIDATION};
use crate::{formats, report};

pub const BIN_NAME: &str = "skellam-odds";

#[derive(Debug, Parser)]
#[command(name = BIN_NAME, version, about = "Calibrate a Skellam score-difference model to correct-score odds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit scoring rates to one odds snapshot.
    Calibrate(CalibrateArgs),
    /// Fit every snapshot listed in a manifest.
    Timeline(TimelineArgs),
    /// Export Monte Carlo score-difference paths.
    Simulate(SimulateArgs),
    /// Q-Q and comparison reports from probability pairs, or bucket calibration from games.
    Diagnose(DiagnoseArgs),
    /// Win/draw curve at a fixed rate product.
    Curve(CurveArgs),
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long, value_name = "FILE")]
    pub odds: PathBuf,
    /// Current score as HOME:AWAY.
    #[arg(long, value_name = "A:B", value_parser = parse_score)]
    pub score: Option<(u32, u32)>,
    /// Fraction of the game already played.
    #[arg(long, value_name = "F", default_value_t = 0.0)]
    pub t: f64,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TimelineArgs {
    #[arg(long, value_name = "FILE")]
    pub manifest: PathBuf,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long = "lambda-a", value_name = "F")]
    pub lambda_a: f64,
    #[arg(long = "lambda-b", value_name = "F")]
    pub lambda_b: f64,
    #[arg(long, value_name = "I", default_value_t = 0, allow_hyphen_values = true)]
    pub lead: i32,
    #[arg(long, value_name = "F", default_value_t = 0.0)]
    pub t: f64,
    #[arg(long = "n-paths", value_name = "N")]
    pub n_paths: u64,
    #[arg(long, value_name = "S")]
    pub seed: u64,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "input")]
pub struct DiagnoseInput {
    /// CSV of `diff,market,model` probability pairs.
    #[arg(long, value_name = "FILE")]
    pub pairs: Option<PathBuf>,
    /// CSV of `implied_win_prob,home_won` game results.
    #[arg(long, value_name = "FILE")]
    pub games: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub input: DiagnoseInput,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Fixed value of lambda_a * lambda_b.
    #[arg(long, value_name = "F")]
    pub product: f64,
    /// none, type1:P or type2:THETA
    #[arg(long, value_name = "SPEC", default_value = "none", value_parser = parse_inflation)]
    pub inflation: InflationModel,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

fn parse_score(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("score {s:?} is not A:B"))?;
    let a = a.trim().parse().map_err(|_| format!("bad home score in {s:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad away score in {s:?}"))?;
    Ok((a, b))
}

fn parse_inflation(s: &str) -> Result<InflationModel, String> {
    if s == "none" {
        return Ok(InflationModel::None);
    }
    let (kind, factor) = s.split_once(':').ok_or_else(|| format!("inflation {s:?} is not none, type1:P or type2:THETA"))?;
    let factor: f64 = factor.parse().map_err(|_| format!("bad inflation factor in {s:?}"))?;
    match kind {
        "type1" if factor > 0.0 && factor < 1.0 => Ok(InflationModel::TypeOne { p: factor }),
        "type1" => Err(format!("type1 factor {factor} outside (0, 1)")),
        "type2" if factor >= 0.0 && factor.is_finite() => Ok(InflationModel::TypeTwo { theta: factor }),
        "type2" => Err(format!("type2 factor {factor} must be nonnegative")),
        _ => Err(format!("unknown inflation kind {kind:?}")),
    }
}

fn shell_quote(arg: &str) -> String {
    let plain = !arg.is_empty()
        && arg.chars().all(|c| c.is_ascii_alphanumeric() || "-_./:=,+@%".contains(c));
    if plain {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', r"'\''"))
    }
}

/// The command line that regenerates an output, as written into its header.
pub fn reproduction_line<S: AsRef<str>>(args: &[S]) -> String {
    std::iter::once(BIN_NAME.to_string())
        .chain(args.iter().map(|a| shell_quote(a.as_ref())))
        .collect::<Vec<_>>()
        .join(" ")
}

fn prepare_out(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn run_calibrate(args: &CalibrateArgs, command: &str) -> Result<(), CliError> {
    let (score_a, score_b) = args.score.unwrap_or((0, 0));
    let state = GameState::new(args.t, score_a, score_b).map_err(|e| CliError::Usage(e.to_string()))?;
    let odds = formats::read_odds_csv(&args.odds)?;
    let fit = calibrate_snapshot(&odds.matrix, &state)?;
    let lead = state.lead();
    let rows: Vec<_> = diagnostics::compare(&fit.market, fit.result.rates)?
        .into_iter()
        .map(|mut r| {
            r.score_diff += lead;
            r
        })
        .collect();
    prepare_out(&args.out)?;
    report::write_calibration_json(&args.out.join("calibration.json"), command, &fit)?;
    report::write_comparison(&args.out.join("comparison.csv"), command, &rows)
}

fn run_timeline(args: &TimelineArgs, command: &str) -> Result<(), CliError> {
    let rows = formats::read_manifest(&args.manifest)?;
    let snapshots = formats::load_snapshots(&rows)?;
    let points = calibrate_timeline(&snapshots).map_err(|e| match e {
        skellam_core::Error::Snapshot { index, reason } => {
            CliError::validation(&args.manifest, rows[index].line, reason)
        }
        other => other.into(),
    })?;
    prepare_out(&args.out)?;
    report::write_timeline(&args.out.join("timeline.csv"), command, &points)
}

fn run_simulate(args: &SimulateArgs, command: &str) -> Result<(), CliError> {
    let rates = ScoringRates::new(args.lambda_a, args.lambda_b).map_err(|e| CliError::Usage(e.to_string()))?;
    let start = GameState::from_lead(args.t, args.lead).map_err(|e| CliError::Usage(e.to_string()))?;
    if args.n_paths == 0 {
        return Err(CliError::Usage("--n-paths must be at least 1".into()));
    }
    prepare_out(&args.out)?;
    let paths = (0..args.n_paths).map(|i| (i, simulate_path_indexed(rates, &start, args.seed, i)));
    report::write_paths(&args.out.join("paths.csv"), command, paths)
}

fn run_diagnose(args: &DiagnoseArgs, command: &str) -> Result<(), CliError> {
    if let Some(pairs_path) = &args.input.pairs {
        let pairs = formats::read_pairs(pairs_path)?;
        let rows: Vec<_> = pairs
            .iter()
            .map(|p| diagnostics::ComparisonRow { score_diff: p.diff, market_prob: p.market, model_prob: p.model })
            .collect();
        let qq = diagnostics::qq_log_odds(&pairs.iter().map(|p| (p.market, p.model)).collect::<Vec<_>>());
        if qq.excluded > 0 {
            log::warn!("{} pairs with probability 0 or 1 left out of the Q-Q report", qq.excluded);
        }
        prepare_out(&args.out)?;
        report::write_comparison(&args.out.join("compare.csv"), command, &rows)?;
        report::write_qq(&args.out.join("qq.csv"), command, &qq)?;
    }
    if let Some(games_path) = &args.input.games {
        let games = formats::read_games(games_path)?;
        let buckets = diagnostics::bucket_calibration(&games)
            .map_err(|e| CliError::validation(games_path, 1, e.to_string()))?;
        if buckets.overflow > 0 {
            log::warn!("{} games outside (0.05, 0.85] counted as overflow", buckets.overflow);
        }
        prepare_out(&args.out)?;
        report::write_buckets(&args.out.join("buckets.csv"), command, &buckets)?;
    }
    Ok(())
}

fn run_curve(args: &CurveArgs, command: &str) -> Result<(), CliError> {
    if !args.product.is_finite() || args.product <= 0.0 {
        return Err(CliError::Usage("--product must be positive".into()));
    }
    let curve = diagnostics::win_draw_curve(args.product, args.inflation, CURVE_POINTS)?;
    prepare_out(&args.out)?;
    report::write_curve(&args.out.join("curve.csv"), command, &curve)
}

/// Runs a parsed command; `command` is the reproduction line for headers.
pub fn run(cli: &Cli, command: &str) -> Result<(), CliError> {
    match &cli.command {
        Command::Calibrate(a) => run_calibrate(a, command),
        Command::Timeline(a) => run_timeline(a, command),
        Command::Simulate(a) => run_simulate(a, command),
        Command::Diagnose(a) => run_diagnose(a, command),
        Command::Curve(a) => run_curve(a, command),
    }
}

/// Parses `args` (without the program name), runs, reports errors on
/// standard error and returns the process exit code.
pub fn main_with_args<S: AsRef<str>>(args: &[S]) -> i32 {
    let argv = std::iter::once(BIN_NAME).chain(args.iter().map(|a| a.as_ref()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    match run(&cli, &reproduction_line(args)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn score_and_inflation_parsers() {
        assert_eq!(parse_score("2:1"), Ok((2, 1)));
        assert!(parse_score("2-1").is_err());
        assert_eq!(parse_inflation("none"), Ok(InflationModel::None));
        assert_eq!(parse_inflation("type1:0.1"), Ok(InflationModel::TypeOne { p: 0.1 }));
        assert_eq!(parse_inflation("type2:0.3"), Ok(InflationModel::TypeTwo { theta: 0.3 }));
        assert!(parse_inflation("type1:1.5").is_err());
        assert!(parse_inflation("type3:0.1").is_err());
    }

    #[test]
    fn quoting() {
        assert_eq!(
            reproduction_line(&["calibrate", "--odds", "my file.csv", "--out", "o"]),
            "skellam-odds calibrate --odds 'my file.csv' --out o"
        );
    }
}
