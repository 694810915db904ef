//! Transition spec documents: a chart, a transition on it, render settings,
//! optional palette overrides and test hooks.

use std::collections::BTreeMap;
use std::path::{Component, Path, PathBuf};

use aquanim::charts::{histogram_from_samples, ConfusionMatrix, Histogram, StackedBarChart, StackedLevel};
use aquanim::render::RenderConfig;
use aquanim::transitions::{
    plan_fluctuation_to_mosaic_with, plan_histogram_data_change, plan_histogram_rebin,
    plan_histogram_rebin_diffusive, plan_proportion_tip, plan_stacked_horizontal_reorder,
    plan_stacked_vertical_reorder, DEFAULT_DIFFUSION, DEFAULT_GRID_CELL,
};
use aquanim::{Color, Palette, TransitionScript};
use serde::Deserialize;

use crate::dataset::{
    load_dataset, stacked_chart, ChartModel, DatasetKind, StackedRow, DEFAULT_BAR_GAP, DEFAULT_BAR_WIDTH,
};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSpecDoc {
    pub chart: ChartSpec,
    pub transition: TransitionParams,
    #[serde(default)]
    pub render: RenderSpec,
    #[serde(default)]
    pub palette: PaletteOverrides,
    #[serde(default)]
    pub test_hooks: TestHooks,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChartSpec {
    Histogram {
        samples: Option<Vec<f64>>,
        counts: Option<Vec<f64>>,
        dataset: Option<String>,
        bins: Option<usize>,
        range: Option<[f64; 2]>,
    },
    StackedBars {
        rows: Option<Vec<StackedRowSpec>>,
        dataset: Option<String>,
        bar_width: Option<f64>,
        gap: Option<f64>,
    },
    ConfusionMatrix {
        labels: Option<Vec<String>>,
        counts: Option<Vec<Vec<u64>>>,
        dataset: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackedRowSpec {
    pub category: String,
    pub level: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TransitionParams {
    DataChange {
        new_counts: Vec<f64>,
    },
    Rebin {
        new_bin_count: usize,
        new_range: Option<[f64; 2]>,
    },
    RebinDiffusive {
        new_bin_count: usize,
        new_range: Option<[f64; 2]>,
        steps: usize,
        alpha: Option<f64>,
    },
    ProportionTip {
        selected_bins: Vec<usize>,
    },
    VerticalReorder {
        level: String,
    },
    HorizontalReorder {
        moving_category: String,
        target_position: usize,
    },
    FluctuationToMosaic {
        grid_cell: Option<f64>,
    },
}

impl TransitionParams {
    pub fn kind(&self) -> &'static str {
        match self {
            TransitionParams::DataChange { .. } => "data_change",
            TransitionParams::Rebin { .. } => "rebin",
            TransitionParams::RebinDiffusive { .. } => "rebin_diffusive",
            TransitionParams::ProportionTip { .. } => "proportion_tip",
            TransitionParams::VerticalReorder { .. } => "vertical_reorder",
            TransitionParams::HorizontalReorder { .. } => "horizontal_reorder",
            TransitionParams::FluctuationToMosaic { .. } => "fluctuation_to_mosaic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderSpec {
    pub fps: u32,
    pub duration: f64,
    pub width: u32,
    pub height: u32,
    pub precision: usize,
}

impl Default for RenderSpec {
    fn default() -> Self {
        let cfg = RenderConfig::default();
        RenderSpec {
            fps: cfg.fps,
            duration: cfg.duration,
            width: cfg.width,
            height: cfg.height,
            precision: cfg.precision,
        }
    }
}

/// Palette slot name to `#RRGGBB[AA]`; `classes` and `levels` take lists.
pub type PaletteOverrides = BTreeMap<String, PaletteValue>;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum PaletteValue {
    One(String),
    Many(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TestHooks {
    /// Scales one liquid rectangle of the first non-view stage, so that
    /// verification has something to catch.
    pub corrupt_scale: Option<f64>,
}

/// Where relative dataset paths point.
#[derive(Debug, Clone, PartialEq)]
pub enum DatasetRoot {
    /// Any path, relative ones resolved against this directory.
    Relative(PathBuf),
    /// Only relative paths without `..`, resolved against this directory.
    Confined(PathBuf),
}

impl DatasetRoot {
    pub fn resolve(&self, path: &str) -> Result<PathBuf, CliError> {
        let p = Path::new(path);
        match self {
            DatasetRoot::Relative(dir) => Ok(if p.is_absolute() { p.to_path_buf() } else { dir.join(p) }),
            DatasetRoot::Confined(dir) => {
                if p.components().all(|c| matches!(c, Component::Normal(_) | Component::CurDir)) {
                    Ok(dir.join(p))
                } else {
                    Err(CliError::InvalidSpec(format!(
                        "dataset path {path:?} must be relative and stay inside the data directory"
                    )))
                }
            }
        }
    }
}

/// A planned script with the settings to render it.
pub struct Compiled {
    pub script: TransitionScript,
    pub render: RenderConfig,
}

pub fn parse_spec(bytes: &[u8]) -> Result<TransitionSpecDoc, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::from_json(&e))
}

/// Reads a palette override file (same shape as the spec's `palette`).
pub fn load_palette_file(path: &Path) -> Result<Palette, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Unreadable(format!("{}: {e}", path.display())))?;
    let overrides: PaletteOverrides = serde_json::from_slice(&bytes).map_err(|e| CliError::from_json(&e))?;
    apply_palette(Palette::default(), &overrides)
}

pub fn apply_palette(mut palette: Palette, overrides: &PaletteOverrides) -> Result<Palette, CliError> {
    let color = |hex: &str| Color::from_hex(hex).map_err(|e| CliError::InvalidSpec(e.to_string()));
    for (name, value) in overrides {
        match (name.as_str(), value) {
            ("classes", PaletteValue::Many(list)) => {
                palette.classes = list.iter().map(|h| color(h)).collect::<Result<_, _>>()?;
            }
            ("levels", PaletteValue::Many(list)) => {
                palette.levels = list.iter().map(|h| color(h)).collect::<Result<_, _>>()?;
            }
            (_, PaletteValue::One(hex)) => palette
                .set(name, hex)
                .map_err(|e| CliError::InvalidSpec(e.to_string()))?,
            (_, PaletteValue::Many(_)) => {
                return Err(CliError::InvalidSpec(format!("palette slot {name:?} takes a single color")))
            }
        }
    }
    Ok(palette)
}

fn one_source<T>(what: &str, inline: &[(&str, Option<T>)], dataset: &Option<String>) -> Result<(), CliError> {
    let given = inline.iter().filter(|(_, v)| v.is_some()).count() + usize::from(dataset.is_some());
    if given != 1 {
        let names: Vec<&str> = inline.iter().map(|(n, _)| *n).chain(["dataset"]).collect();
        return Err(CliError::InvalidSpec(format!(
            "a {what} chart needs exactly one of {}",
            names.join(", ")
        )));
    }
    Ok(())
}

fn validation(e: aquanim::Error) -> CliError {
    CliError::Validation(e.to_string())
}

enum HistogramSource {
    Samples(Vec<f64>),
    Counts(Vec<f64>),
}

struct HistogramInput {
    source: HistogramSource,
    bins: usize,
    range: (f64, f64),
}

impl HistogramInput {
    fn histogram(&self) -> Result<Histogram, CliError> {
        match &self.source {
            HistogramSource::Samples(v) => histogram_from_samples(v, self.bins, self.range).map_err(validation),
            HistogramSource::Counts(c) => Histogram::from_counts(c, self.range.0, self.range.1).map_err(validation),
        }
    }

    fn counts(&self) -> Result<Vec<f64>, CliError> {
        match &self.source {
            HistogramSource::Counts(c) => Ok(c.clone()),
            HistogramSource::Samples(v) => {
                let h = self.histogram()?;
                let n = v.len() as f64;
                Ok((0..h.bin_count()).map(|i| (h.densities()[i] * h.bin_width(i) * n).round()).collect())
            }
        }
    }

    /// Same data binned anew; only sample data can be rebinned.
    fn rebinned(&self, bins: usize, range: Option<[f64; 2]>) -> Result<Histogram, CliError> {
        let range = range.map_or(self.range, |[lo, hi]| (lo, hi));
        match &self.source {
            HistogramSource::Samples(v) => histogram_from_samples(v, bins, range).map_err(validation),
            HistogramSource::Counts(_) => Err(CliError::InvalidSpec(
                "rebinning needs sample data (samples or dataset), not counts".into(),
            )),
        }
    }
}

fn histogram_input(
    samples: &Option<Vec<f64>>,
    counts: &Option<Vec<f64>>,
    dataset: &Option<String>,
    bins: Option<usize>,
    range: Option<[f64; 2]>,
    root: &DatasetRoot,
) -> Result<HistogramInput, CliError> {
    one_source("histogram", &[("samples", samples.as_ref()), ("counts", counts.as_ref())], dataset)?;
    let source = if let Some(c) = counts {
        if bins.is_some_and(|b| b != c.len()) {
            return Err(CliError::InvalidSpec(format!("bins disagrees with the {} counts", c.len())));
        }
        HistogramSource::Counts(c.clone())
    } else if let Some(s) = samples {
        HistogramSource::Samples(s.clone())
    } else {
        let path = root.resolve(dataset.as_deref().unwrap_or_default())?;
        match load_dataset(&path, DatasetKind::Samples)? {
            ChartModel::Samples(v) => HistogramSource::Samples(v),
            _ => unreachable!("samples datasets load as samples"),
        }
    };
    let bins = match &source {
        HistogramSource::Counts(c) => c.len(),
        HistogramSource::Samples(_) => {
            bins.ok_or_else(|| CliError::InvalidSpec("a histogram of samples needs \"bins\"".into()))?
        }
    };
    let range = match (range, &source) {
        (Some([lo, hi]), _) => (lo, hi),
        (None, HistogramSource::Counts(c)) => (0.0, c.len() as f64),
        (None, HistogramSource::Samples(v)) => {
            let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if !(lo < hi) {
                return Err(CliError::InvalidSpec(
                    "samples span no interval; give an explicit \"range\"".into(),
                ));
            }
            (lo, hi)
        }
    };
    Ok(HistogramInput { source, bins, range })
}

fn recolored(chart: &StackedBarChart, palette: &Palette, bar_width: f64, gap: f64) -> Result<StackedBarChart, CliError> {
    let levels = chart
        .levels()
        .iter()
        .enumerate()
        .map(|(i, l)| StackedLevel {
            label: l.label.clone(),
            color: palette.level_color(i),
        })
        .collect();
    StackedBarChart::new(chart.categories().to_vec(), levels, chart.heights().to_vec(), bar_width, gap)
        .map_err(validation)
}

fn stacked_input(
    rows: &Option<Vec<StackedRowSpec>>,
    dataset: &Option<String>,
    bar_width: Option<f64>,
    gap: Option<f64>,
    palette: &Palette,
    root: &DatasetRoot,
) -> Result<StackedBarChart, CliError> {
    one_source("stacked_bars", &[("rows", rows.as_ref())], dataset)?;
    let (bw, gap) = (bar_width.unwrap_or(DEFAULT_BAR_WIDTH), gap.unwrap_or(DEFAULT_BAR_GAP));
    match rows {
        Some(rows) => {
            let rows: Vec<StackedRow> = rows
                .iter()
                .map(|r| StackedRow {
                    category: r.category.clone(),
                    level: r.level.clone(),
                    value: r.value,
                })
                .collect();
            stacked_chart(&rows, palette, bw, gap)
        }
        None => {
            let path = root.resolve(dataset.as_deref().unwrap_or_default())?;
            match load_dataset(&path, DatasetKind::StackedBars)? {
                ChartModel::Stacked(chart) => recolored(&chart, palette, bw, gap),
                _ => unreachable!("stacked datasets load as stacked charts"),
            }
        }
    }
}

fn confusion_input(
    labels: &Option<Vec<String>>,
    counts: &Option<Vec<Vec<u64>>>,
    dataset: &Option<String>,
    root: &DatasetRoot,
) -> Result<ConfusionMatrix, CliError> {
    one_source("confusion_matrix", &[("counts", counts.as_ref())], dataset)?;
    match counts {
        Some(counts) => {
            let labels = labels
                .clone()
                .ok_or_else(|| CliError::InvalidSpec("inline confusion counts need \"labels\"".into()))?;
            ConfusionMatrix::new(labels, counts.clone()).map_err(validation)
        }
        None => {
            if labels.is_some() {
                return Err(CliError::InvalidSpec("labels come from the dataset header".into()));
            }
            let path = root.resolve(dataset.as_deref().unwrap_or_default())?;
            match load_dataset(&path, DatasetKind::Confusion)? {
                ChartModel::Confusion(cm) => Ok(cm),
                _ => unreachable!("confusion datasets load as matrices"),
            }
        }
    }
}

fn mismatch(chart: &str, kind: &str) -> CliError {
    CliError::InvalidSpec(format!("transition {kind:?} does not apply to a {chart} chart"))
}

/// Loads the data, plans the script and checks the render settings.
///
/// Spec problems (including invalid data) are reported before any planning,
/// so that planning errors always come from the engine.
pub fn compile(doc: &TransitionSpecDoc, base_palette: &Palette, root: &DatasetRoot) -> Result<Compiled, CliError> {
    let palette = apply_palette(base_palette.clone(), &doc.palette)?;
    let r = doc.render;
    let mut render = RenderConfig::new(r.fps, r.duration, r.width, r.height)
        .map_err(|e| CliError::InvalidSpec(e.to_string()))?;
    render.precision = r.precision;
    render.background = palette.background;
    render.validate().map_err(|e| CliError::InvalidSpec(e.to_string()))?;
    let kind = doc.transition.kind();

    let script = match &doc.chart {
        ChartSpec::Histogram {
            samples,
            counts,
            dataset,
            bins,
            range,
        } => {
            let input = histogram_input(samples, counts, dataset, *bins, *range, root)?;
            match &doc.transition {
                TransitionParams::DataChange { new_counts } => {
                    let old = input.counts()?;
                    plan_histogram_data_change(&old, new_counts, input.range, &palette)?
                }
                TransitionParams::Rebin {
                    new_bin_count,
                    new_range,
                } => {
                    let old = input.histogram()?;
                    let new = input.rebinned(*new_bin_count, *new_range)?;
                    plan_histogram_rebin(&old, &new, &palette)?
                }
                TransitionParams::RebinDiffusive {
                    new_bin_count,
                    new_range,
                    steps,
                    alpha,
                } => {
                    let old = input.histogram()?;
                    let new = input.rebinned(*new_bin_count, *new_range)?;
                    plan_histogram_rebin_diffusive(&old, &new, *steps, alpha.unwrap_or(DEFAULT_DIFFUSION), &palette)?
                }
                TransitionParams::ProportionTip { selected_bins } => {
                    plan_proportion_tip(&input.histogram()?, selected_bins, &palette)?
                }
                _ => return Err(mismatch("histogram", kind)),
            }
        }
        ChartSpec::StackedBars {
            rows,
            dataset,
            bar_width,
            gap,
        } => {
            let chart = stacked_input(rows, dataset, *bar_width, *gap, &palette, root)?;
            match &doc.transition {
                TransitionParams::VerticalReorder { level } => plan_stacked_vertical_reorder(&chart, level, &palette)?,
                TransitionParams::HorizontalReorder {
                    moving_category,
                    target_position,
                } => plan_stacked_horizontal_reorder(&chart, moving_category, *target_position, &palette)?,
                _ => return Err(mismatch("stacked_bars", kind)),
            }
        }
        ChartSpec::ConfusionMatrix {
            labels,
            counts,
            dataset,
        } => {
            let cm = confusion_input(labels, counts, dataset, root)?;
            match &doc.transition {
                TransitionParams::FluctuationToMosaic { grid_cell } => {
                    plan_fluctuation_to_mosaic_with(&cm, grid_cell.unwrap_or(DEFAULT_GRID_CELL), &palette)?
                }
                _ => return Err(mismatch("confusion_matrix", kind)),
            }
        }
    };
    let script = match doc.test_hooks.corrupt_scale {
        Some(f) => script.corrupted(f),
        None => script,
    };
    Ok(Compiled { script, render })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root() -> DatasetRoot {
        DatasetRoot::Relative(PathBuf::from("."))
    }

    fn compile_str(s: &str) -> Result<Compiled, CliError> {
        compile(&parse_spec(s.as_bytes())?, &Palette::default(), &root())
    }

    #[test]
    fn inline_rebin() {
        let c = compile_str(
            r#"{"chart":{"type":"histogram","samples":[0.1,0.5,0.9,1.2,1.9],"bins":2,"range":[0,2]},
                "transition":{"kind":"rebin","new_bin_count":4},
                "render":{"fps":10,"duration":1}}"#,
        )
        .unwrap();
        assert_eq!(c.render.frame_count(), 11);
        assert_eq!(c.script.name(), "rebin");
    }

    #[test]
    fn unknown_kind_is_a_parse_error() {
        let err = compile_str(r#"{"chart":{"type":"histogram","counts":[1,2]},"transition":{"kind":"spin"}}"#)
            .err()
            .unwrap();
        assert_eq!(err.code(), "ParseError");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_fields_rejected() {
        let err = compile_str(
            r#"{"chart":{"type":"histogram","counts":[1,2],"colour":1},"transition":{"kind":"proportion_tip","selected_bins":[0]}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.code(), "ParseError");
    }

    #[test]
    fn range_mismatch_is_a_planning_error() {
        let err = compile_str(
            r#"{"chart":{"type":"histogram","samples":[0.5,1.5],"bins":2,"range":[0,2]},
                "transition":{"kind":"rebin","new_bin_count":3,"new_range":[0,3]}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.code(), "RangeMismatch");
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn kind_must_match_chart() {
        let err = compile_str(
            r#"{"chart":{"type":"histogram","counts":[1,2]},"transition":{"kind":"vertical_reorder","level":"a"}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.code(), "InvalidSpec");
    }

    #[test]
    fn exactly_one_data_source() {
        let err = compile_str(
            r#"{"chart":{"type":"histogram","counts":[1,2],"samples":[1]},"transition":{"kind":"proportion_tip","selected_bins":[0]}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.code(), "InvalidSpec");
    }

    #[test]
    fn counts_cannot_be_rebinned() {
        let err = compile_str(
            r#"{"chart":{"type":"histogram","counts":[1,2]},"transition":{"kind":"rebin","new_bin_count":3}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.code(), "InvalidSpec");
    }

    #[test]
    fn data_change_from_samples_uses_counts() {
        let c = compile_str(
            r#"{"chart":{"type":"histogram","samples":[0.5,1.5,1.6],"bins":2,"range":[0,2]},
                "transition":{"kind":"data_change","new_counts":[2,2]}}"#,
        )
        .unwrap();
        assert_eq!(c.script.name(), "data_change");
    }

    #[test]
    fn planning_errors_keep_engine_codes() {
        let err = compile_str(
            r#"{"chart":{"type":"histogram","counts":[1,2]},"transition":{"kind":"proportion_tip","selected_bins":[]}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.code(), "EmptySelection");
        let err = compile_str(
            r#"{"chart":{"type":"stacked_bars","rows":[{"category":"A","level":"x","value":1}]},
                "transition":{"kind":"vertical_reorder","level":"y"}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.code(), "UnknownLevel");
    }

    #[test]
    fn invalid_data_is_a_validation_error() {
        let err = compile_str(
            r#"{"chart":{"type":"confusion_matrix","labels":["a","b"],"counts":[[0,0],[0,0]]},
                "transition":{"kind":"fluctuation_to_mosaic"}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.code(), "ValidationError");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn palette_overrides() {
        let mut o = PaletteOverrides::new();
        o.insert("more".into(), PaletteValue::One("#00FF00".into()));
        o.insert("levels".into(), PaletteValue::Many(vec!["#000000".into()]));
        let p = apply_palette(Palette::default(), &o).unwrap();
        assert_eq!(p.more, Color::from_hex("#00FF00FF").unwrap());
        assert_eq!(p.levels.len(), 1);
        o.insert("nope".into(), PaletteValue::One("#000000".into()));
        assert_eq!(apply_palette(Palette::default(), &o).unwrap_err().code(), "InvalidSpec");
    }

    #[test]
    fn confined_paths() {
        let r = DatasetRoot::Confined(PathBuf::from("/data"));
        assert_eq!(r.resolve("a/b.csv").unwrap(), PathBuf::from("/data/a/b.csv"));
        assert!(r.resolve("../etc/passwd").is_err());
        assert!(r.resolve("/etc/passwd").is_err());
    }

    #[test]
    fn bad_render_settings() {
        let err = compile_str(
            r#"{"chart":{"type":"histogram","counts":[1,2]},"transition":{"kind":"proportion_tip","selected_bins":[0]},
                "render":{"fps":1,"duration":1}}"#,
        )
        .err()
        .unwrap();
        assert_eq!(err.code(), "InvalidSpec");
    }
}
