//! Report writers. Every CSV starts with `# <command line>` so the file
//! records how to regenerate it; JSON carries the same line in `command`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use skellam_core::diagnostics::{BucketReport, ComparisonRow, CurvePoint, QqReport};
use skellam_core::{ScorePath, SnapshotFit, TimelinePoint};

use crate::error::CliError;

struct CsvOut {
    path: std::path::PathBuf,
    writer: csv::Writer<BufWriter<File>>,
}

impl CsvOut {
    fn create(path: &Path, command: &str, comments: &[String], header: &[&str]) -> Result<Self, CliError> {
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        let mut buf = BufWriter::new(file);
        let io = |e| CliError::io(path, e);
        writeln!(buf, "# {command}").map_err(io)?;
        for c in comments {
            writeln!(buf, "# {c}").map_err(io)?;
        }
        let mut out = Self { path: path.to_path_buf(), writer: csv::Writer::from_writer(buf) };
        out.row(header.iter().map(|s| s.to_string()))?;
        Ok(out)
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) -> Result<(), CliError> {
        let fields: Vec<String> = fields.into_iter().collect();
        self.writer
            .write_record(&fields)
            .map_err(|e| CliError::io(&self.path, std::io::Error::other(e)))
    }

    fn finish(mut self) -> Result<(), CliError> {
        self.writer.flush().map_err(|e| CliError::io(&self.path, e))
    }
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn write_comparison(path: &Path, command: &str, rows: &[ComparisonRow]) -> Result<(), CliError> {
    let mut out = CsvOut::create(path, command, &[], &["diff", "market", "model"])?;
    for r in rows {
        out.row([r.score_diff.to_string(), num(r.market_prob), num(r.model_prob)])?;
    }
    out.finish()
}

pub fn write_qq(path: &Path, command: &str, report: &QqReport) -> Result<(), CliError> {
    let comments = [format!("excluded={}", report.excluded)];
    let mut out = CsvOut::create(path, command, &comments, &["mq", "sq"])?;
    for (mq, sq) in &report.points {
        out.row([num(*mq), num(*sq)])?;
    }
    out.finish()
}

pub fn write_curve(path: &Path, command: &str, curve: &[CurvePoint]) -> Result<(), CliError> {
    let mut out = CsvOut::create(path, command, &[], &["win", "draw"])?;
    for p in curve {
        out.row([num(p.win), num(p.draw)])?;
    }
    out.finish()
}

pub fn write_buckets(path: &Path, command: &str, report: &BucketReport) -> Result<(), CliError> {
    let comments = [format!("overflow={}", report.overflow)];
    let mut out = CsvOut::create(path, command, &comments, &["bucket_lo", "bucket_hi", "count", "freq"])?;
    for (i, count) in report.counts.iter().enumerate() {
        out.row([
            num(report.bucket_edges[i]),
            num(report.bucket_edges[i + 1]),
            count.to_string(),
            opt(report.win_frequency[i]),
        ])?;
    }
    out.finish()
}

/// `path_id,time,diff`, one row for the start of each path and one per goal.
pub fn write_paths<I>(path: &Path, command: &str, paths: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = (u64, ScorePath)>,
{
    let mut out = CsvOut::create(path, command, &[], &["path_id", "time", "diff"])?;
    for (id, p) in paths {
        for (time, diff) in p.points() {
            out.row([id.to_string(), num(time), diff.to_string()])?;
        }
    }
    out.finish()
}

pub fn write_timeline(path: &Path, command: &str, points: &[TimelinePoint]) -> Result<(), CliError> {
    let header = [
        "t",
        "lambda_a",
        "lambda_b",
        "iv",
        "lambda_a_per_rem",
        "lambda_b_per_rem",
        "p_win",
        "p_draw",
        "p_lose",
    ];
    let mut out = CsvOut::create(path, command, &[], &header)?;
    for p in points {
        let o = p.outcome_probs();
        let per_rem = p.rates_per_remaining;
        out.row([
            num(p.t),
            num(p.result.rates.lambda_a()),
            num(p.result.rates.lambda_b()),
            num(p.result.implied_vol),
            opt(per_rem.map(|r| r.0)),
            opt(per_rem.map(|r| r.1)),
            num(o.win),
            num(o.draw),
            num(o.lose),
        ])?;
    }
    out.finish()
}

#[derive(Debug, Serialize)]
struct Residuals {
    mean: f64,
    var: f64,
}

#[derive(Debug, Serialize)]
struct CalibrationJson<'a> {
    command: &'a str,
    lambda_a: f64,
    lambda_b: f64,
    residuals: Residuals,
    objective: f64,
    implied_vol: f64,
    vig: f64,
}

pub fn write_calibration_json(path: &Path, command: &str, fit: &SnapshotFit) -> Result<(), CliError> {
    let r = &fit.result;
    let doc = CalibrationJson {
        command,
        lambda_a: r.rates.lambda_a(),
        lambda_b: r.rates.lambda_b(),
        residuals: Residuals { mean: r.residual_mean, var: r.residual_var },
        objective: r.objective,
        implied_vol: r.implied_vol,
        vig: fit.vig,
    };
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::io(path, e.into()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}
