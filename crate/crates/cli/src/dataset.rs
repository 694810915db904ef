//! CSV datasets.
//!
//! * samples: one number per line, optional header line;
//! * stacked bars: `category,level,value` rows, optional header;
//! * confusion: first row holds the observed labels after a corner cell,
//!   every other row a predicted label followed by integer counts.
//!
//! Parse errors carry the 1-based line and field number.

use std::collections::BTreeMap;
use std::path::Path;

use aquanim::charts::{ConfusionMatrix, StackedBarChart, StackedLevel};
use aquanim::Palette;
use csv::{ReaderBuilder, StringRecord, Trim};

use crate::error::CliError;

pub const DEFAULT_BAR_WIDTH: f64 = 1.0;
pub const DEFAULT_BAR_GAP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetKind {
    Samples,
    StackedBars,
    Confusion,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChartModel {
    Samples(Vec<f64>),
    Stacked(StackedBarChart),
    Confusion(ConfusionMatrix),
}

pub fn load_dataset(path: &Path, kind: DatasetKind) -> Result<ChartModel, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Unreadable(format!("{}: {e}", path.display())))?;
    parse_dataset(&text, kind)
}

pub fn parse_dataset(text: &str, kind: DatasetKind) -> Result<ChartModel, CliError> {
    match kind {
        DatasetKind::Samples => parse_samples(text).map(ChartModel::Samples),
        DatasetKind::StackedBars => {
            let rows = parse_stacked_rows(text)?;
            stacked_chart(&rows, &Palette::default(), DEFAULT_BAR_WIDTH, DEFAULT_BAR_GAP)
                .map(ChartModel::Stacked)
        }
        DatasetKind::Confusion => parse_confusion(text).map(ChartModel::Confusion),
    }
}

fn records(text: &str) -> Result<Vec<StringRecord>, CliError> {
    let mut reader = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| CliError::Parse {
            line: e.position().map(|p| p.line()),
            column: None,
            message: e.to_string(),
        })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        out.push(rec);
    }
    Ok(out)
}

fn line_of(rec: &StringRecord) -> Option<u64> {
    rec.position().map(|p| p.line())
}

fn parse_error(rec: &StringRecord, field: usize, message: String) -> CliError {
    CliError::Parse {
        line: line_of(rec),
        column: Some(field as u64 + 1),
        message,
    }
}

fn number(rec: &StringRecord, field: usize) -> Result<f64, CliError> {
    let raw = rec.get(field).unwrap_or("");
    raw.parse::<f64>()
        .map_err(|_| parse_error(rec, field, format!("{raw:?} is not a number")))
}

fn expect_fields(rec: &StringRecord, n: usize) -> Result<(), CliError> {
    if rec.len() != n {
        return Err(CliError::Parse {
            line: line_of(rec),
            column: None,
            message: format!("expected {n} fields, found {}", rec.len()),
        });
    }
    Ok(())
}

/// A first record whose numeric field does not parse is a header.
fn skip_header(recs: &[StringRecord], numeric_field: usize) -> &[StringRecord] {
    match recs.first() {
        Some(first) if first.get(numeric_field).is_some_and(|v| v.parse::<f64>().is_err()) => &recs[1..],
        _ => recs,
    }
}

pub fn parse_samples(text: &str) -> Result<Vec<f64>, CliError> {
    let recs = records(text)?;
    let mut values = Vec::with_capacity(recs.len());
    for rec in skip_header(&recs, 0) {
        expect_fields(rec, 1)?;
        let v = number(rec, 0)?;
        if !v.is_finite() {
            return Err(CliError::Validation(format!(
                "line {}: samples must be finite",
                line_of(rec).unwrap_or(0)
            )));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(CliError::Validation("a samples dataset needs at least one value".into()));
    }
    Ok(values)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StackedRow {
    pub category: String,
    pub level: String,
    pub value: f64,
}

pub fn parse_stacked_rows(text: &str) -> Result<Vec<StackedRow>, CliError> {
    let recs = records(text)?;
    let mut rows = Vec::with_capacity(recs.len());
    for rec in skip_header(&recs, 2) {
        expect_fields(rec, 3)?;
        rows.push(StackedRow {
            category: rec[0].to_string(),
            level: rec[1].to_string(),
            value: number(rec, 2)?,
        });
    }
    Ok(rows)
}

/// Categories and levels keep their order of first appearance; missing
/// pairs have height zero.
pub fn stacked_chart(
    rows: &[StackedRow],
    palette: &Palette,
    bar_width: f64,
    gap: f64,
) -> Result<StackedBarChart, CliError> {
    let mut categories: Vec<String> = Vec::new();
    let mut levels: Vec<String> = Vec::new();
    let mut cells: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for row in rows {
        if !(row.value.is_finite() && row.value >= 0.0) {
            return Err(CliError::Validation(format!(
                "value {} for {}/{} must be finite and non-negative",
                row.value, row.category, row.level
            )));
        }
        let c = index_of(&mut categories, &row.category);
        let l = index_of(&mut levels, &row.level);
        if cells.insert((c, l), row.value).is_some() {
            return Err(CliError::Validation(format!(
                "duplicate row for {}/{}",
                row.category, row.level
            )));
        }
    }
    let heights = (0..categories.len())
        .map(|c| (0..levels.len()).map(|l| cells.get(&(c, l)).copied().unwrap_or(0.0)).collect())
        .collect();
    let levels = levels
        .into_iter()
        .enumerate()
        .map(|(i, label)| StackedLevel {
            label,
            color: palette.level_color(i),
        })
        .collect();
    StackedBarChart::new(categories, levels, heights, bar_width, gap).map_err(|e| CliError::Validation(e.to_string()))
}

fn index_of(list: &mut Vec<String>, label: &str) -> usize {
    match list.iter().position(|l| l == label) {
        Some(i) => i,
        None => {
            list.push(label.to_string());
            list.len() - 1
        }
    }
}

pub fn parse_confusion(text: &str) -> Result<ConfusionMatrix, CliError> {
    let recs = records(text)?;
    let Some((header, body)) = recs.split_first() else {
        return Err(CliError::Validation("empty confusion dataset".into()));
    };
    let observed: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let k = observed.len();
    let mut predicted = Vec::with_capacity(body.len());
    let mut counts = Vec::with_capacity(body.len());
    for rec in body {
        expect_fields(rec, k + 1)?;
        predicted.push(rec[0].to_string());
        let mut row = Vec::with_capacity(k);
        for field in 1..=k {
            let raw = &rec[field];
            let v: i64 = raw
                .parse()
                .map_err(|_| parse_error(rec, field, format!("{raw:?} is not an integer count")))?;
            if v < 0 {
                return Err(CliError::Validation(format!(
                    "line {}, column {}: count {v} is negative; counts must be non-negative",
                    line_of(rec).unwrap_or(0),
                    field + 1
                )));
            }
            row.push(v as u64);
        }
        counts.push(row);
    }
    if predicted != observed {
        return Err(CliError::Validation(format!(
            "row labels {predicted:?} must match column labels {observed:?} in the same order"
        )));
    }
    ConfusionMatrix::new(observed, counts).map_err(|e| CliError::Validation(e.to_string()))
}
