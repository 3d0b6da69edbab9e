//! Readers for the input files.
//!
//! All inputs are UTF-8 CSV with a header row. Lines starting with `#` are
//! comments, so report files written by this tool (which begin with a
//! reproduction comment) can be fed back in. Errors carry `file:line`.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use csv::{ReaderBuilder, StringRecord};
use log::warn;
use skellam_core::{FractionalOdds, GameState, OddsMatrix, Snapshot};

use crate::error::CliError;

struct Table {
    path: PathBuf,
    columns: Vec<usize>,
    rows: Vec<(u64, StringRecord)>,
}

impl Table {
    fn read(path: &Path, wanted: &[&str]) -> Result<Self, CliError> {
        let file = File::open(path).map_err(|e| CliError::io(path, e))?;
        Self::from_reader(path, file, wanted)
    }

    fn from_reader<R: std::io::Read>(path: &Path, reader: R, wanted: &[&str]) -> Result<Self, CliError> {
        let mut rdr = ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let csv_err = |e: csv::Error| {
            let line = e.position().map(|p| p.line()).unwrap_or(1);
            CliError::validation(path, line, e.to_string())
        };
        let headers = rdr.headers().map_err(csv_err)?.clone();
        let header_line = rdr.position().line().saturating_sub(1).max(1);
        let columns = wanted
            .iter()
            .map(|name| {
                headers.iter().position(|h| h == *name).ok_or_else(|| {
                    CliError::validation(path, header_line, format!("missing column `{name}` (expected {})", wanted.join(",")))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(csv_err)?;
            let line = record.position().map(|p| p.line()).unwrap_or(0);
            rows.push((line, record));
        }
        Ok(Self { path: path.to_path_buf(), columns, rows })
    }

    fn field<T: FromStr>(&self, line: u64, record: &StringRecord, col: usize, name: &str) -> Result<T, CliError> {
        let raw = record.get(self.columns[col]).unwrap_or("");
        raw.parse().map_err(|_| CliError::validation(&self.path, line, format!("invalid {name} {raw:?}")))
    }
}

/// A quote whose zero denominator was replaced by 1 on ingestion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correction {
    pub line: u64,
    pub home_goals: u32,
    pub away_goals: u32,
    pub numerator: u64,
}

#[derive(Debug, Clone)]
pub struct OddsFile {
    pub matrix: OddsMatrix,
    pub corrections: Vec<Correction>,
}

const ODDS_COLUMNS: [&str; 4] = ["home_goals", "away_goals", "numerator", "denominator"];

fn parse_odds(table: Table) -> Result<OddsFile, CliError> {
    let mut entries = BTreeMap::new();
    let mut corrections = Vec::new();
    for (line, record) in &table.rows {
        let line = *line;
        let home: u32 = table.field(line, record, 0, "home_goals")?;
        let away: u32 = table.field(line, record, 1, "away_goals")?;
        let numerator: u64 = table.field(line, record, 2, "numerator")?;
        let mut denominator: u64 = table.field(line, record, 3, "denominator")?;
        if denominator == 0 {
            // e.g. a quote transcribed as 50/0; the evident intent is a/1
            warn!(
                "{}:{line}: odds {numerator}/0 for {home}-{away} corrected to {numerator}/1",
                table.path.display()
            );
            corrections.push(Correction { line, home_goals: home, away_goals: away, numerator });
            denominator = 1;
        }
        let odds = FractionalOdds::new(numerator, denominator)?;
        if entries.insert((home, away), odds).is_some() {
            return Err(CliError::validation(&table.path, line, format!("score {home}-{away} quoted twice")));
        }
    }
    if entries.is_empty() {
        return Err(CliError::validation(&table.path, 1, "odds file has no quotes"));
    }
    Ok(OddsFile { matrix: OddsMatrix::new(entries)?, corrections })
}

/// Reads an odds snapshot: `home_goals,away_goals,numerator,denominator`.
pub fn read_odds_csv(path: &Path) -> Result<OddsFile, CliError> {
    parse_odds(Table::read(path, &ODDS_COLUMNS)?)
}

/// Same as [`read_odds_csv`] from an in-memory reader; `name` labels errors.
pub fn parse_odds_csv<R: std::io::Read>(name: &Path, reader: R) -> Result<OddsFile, CliError> {
    parse_odds(Table::from_reader(name, reader, &ODDS_COLUMNS)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManifestRow {
    pub line: u64,
    pub state: GameState,
    /// Resolved against the manifest's directory.
    pub odds_file: PathBuf,
}

/// Reads a timeline manifest `t,score_a,score_b,odds_file`, checking that
/// time and both scores never go backwards.
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestRow>, CliError> {
    let table = Table::read(path, &["t", "score_a", "score_b", "odds_file"])?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut rows: Vec<ManifestRow> = Vec::with_capacity(table.rows.len());
    for (line, record) in &table.rows {
        let line = *line;
        let t: f64 = table.field(line, record, 0, "t")?;
        let score_a: u32 = table.field(line, record, 1, "score_a")?;
        let score_b: u32 = table.field(line, record, 2, "score_b")?;
        let file: String = table.field(line, record, 3, "odds_file")?;
        let state = GameState::new(t, score_a, score_b)
            .map_err(|e| CliError::validation(path, line, e.to_string()))?;
        if let Some(prev) = rows.last() {
            if t < prev.state.t() {
                return Err(CliError::validation(path, line, format!("time {t} precedes {}", prev.state.t())));
            }
            if score_a < prev.state.score_a() || score_b < prev.state.score_b() {
                return Err(CliError::validation(
                    path,
                    line,
                    format!(
                        "score {score_a}-{score_b} decreases from {}-{}",
                        prev.state.score_a(),
                        prev.state.score_b()
                    ),
                ));
            }
        }
        rows.push(ManifestRow { line, state, odds_file: base.join(file) });
    }
    if rows.is_empty() {
        return Err(CliError::validation(path, 1, "manifest lists no snapshots"));
    }
    Ok(rows)
}

/// Loads every snapshot a manifest points to.
pub fn load_snapshots(rows: &[ManifestRow]) -> Result<Vec<Snapshot>, CliError> {
    rows.iter()
        .map(|row| Ok(Snapshot { state: row.state, odds: read_odds_csv(&row.odds_file)?.matrix }))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbPair {
    pub diff: i32,
    pub market: f64,
    pub model: f64,
}

/// Reads `diff,market,model` rows.
pub fn read_pairs(path: &Path) -> Result<Vec<ProbPair>, CliError> {
    let table = Table::read(path, &["diff", "market", "model"])?;
    table
        .rows
        .iter()
        .map(|(line, record)| {
            let pair = ProbPair {
                diff: table.field(*line, record, 0, "diff")?,
                market: table.field(*line, record, 1, "market")?,
                model: table.field(*line, record, 2, "model")?,
            };
            if !(0.0..=1.0).contains(&pair.market) || !(0.0..=1.0).contains(&pair.model) {
                return Err(CliError::validation(path, *line, "probabilities must lie in [0, 1]"));
            }
            Ok(pair)
        })
        .collect()
}

fn parse_flag(raw: &str) -> Option<bool> {
    match raw.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" => Some(true),
        "0" | "false" | "no" => Some(false),
        _ => None,
    }
}

/// Reads `implied_win_prob,home_won` rows; `home_won` is 0/1 or true/false.
pub fn read_games(path: &Path) -> Result<Vec<(f64, bool)>, CliError> {
    let table = Table::read(path, &["implied_win_prob", "home_won"])?;
    table
        .rows
        .iter()
        .map(|(line, record)| {
            let p: f64 = table.field(*line, record, 0, "implied_win_prob")?;
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::validation(path, *line, format!("probability {p} outside [0, 1]")));
            }
            let raw = record.get(table.columns[1]).unwrap_or("");
            let won = parse_flag(raw)
                .ok_or_else(|| CliError::validation(path, *line, format!("invalid home_won {raw:?}")))?;
            Ok((p, won))
        })
        .collect()
}
