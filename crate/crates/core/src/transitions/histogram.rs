//! Histogram transitions: data change, rebinning and the proportion tip.

use crate::blocks::{fill_at, transfer_at, FillSpec, TransferContainer, TransferSpec};
use crate::charts::{bin_index, fit_viewport, stroke_width_for, Histogram};
use crate::error::{Error, Result};
use crate::geometry::{partition_intervals, rect_area, Axis, Color, Frame, LiquidId, Rect, ScenePrimitive};
use crate::interp::{lerp, EasedTime};
use crate::palette::Palette;

use super::{
    plan_hold, plan_view_change, with_viewport, Conservation, Stage, StageKind, StageScene,
    TransitionScript, MAIN_WEIGHT, VIEW_WEIGHT,
};

/// Largest blend fraction of the gray bars toward red or blue.
pub const TINT_MAX: f64 = 0.5;
/// Total-area deviation from 1 below which no tint is shown.
pub const TINT_DEADBAND: f64 = 1e-9;
/// Neighbor-averaging strength of the diffusive rebinning.
pub const DEFAULT_DIFFUSION: f64 = 0.5;

const DENSITY: &str = "density";
const SELECTED: &str = "selected";
const UNSELECTED: &str = "unselected";

/// Tint blend fraction for a transient total area.
///
/// Proportional to the deviation from 1, relative to the largest deviation
/// of the transition, and exactly zero inside [`TINT_DEADBAND`].
pub fn tint_fraction(area: f64, peak_area: f64) -> f64 {
    let dev = (area - 1.0).abs();
    if dev <= TINT_DEADBAND {
        return 0.0;
    }
    (dev / (peak_area - 1.0).abs().max(1e-12)).min(1.0) * TINT_MAX
}

fn bin_id(i: usize) -> LiquidId {
    LiquidId(format!("bin:{i}"))
}

fn baseline(lo: f64, hi: f64, palette: &Palette, stroke: f64) -> ScenePrimitive {
    ScenePrimitive::line((lo, 0.0), (hi, 0.0), palette.container, stroke)
}

/// Bars on `edges` with the given heights; zero-height bars are omitted.
fn bars(
    edges: &[f64],
    heights: &[f64],
    id: impl Fn(usize) -> LiquidId,
    color: impl Fn(usize) -> Color,
) -> Vec<ScenePrimitive> {
    heights
        .iter()
        .enumerate()
        .filter(|(_, h)| **h > 0.0)
        .map(|(i, h)| ScenePrimitive::liquid(Rect::span(edges[i], edges[i + 1], 0.0, *h), color(i), id(i)))
        .collect()
}

fn histogram_bounds(edges: &[f64], max_height: f64) -> Rect {
    Rect::span(edges[0], edges[edges.len() - 1], 0.0, max_height.max(1e-9))
}

fn static_frame(
    edges: &[f64],
    heights: &[f64],
    id: impl Fn(usize) -> LiquidId,
    color: impl Fn(usize) -> Color,
    palette: &Palette,
    stroke: f64,
) -> Frame {
    let max = heights.iter().copied().fold(0.0, f64::max);
    let mut primitives = bars(edges, heights, id, color);
    primitives.push(baseline(edges[0], edges[edges.len() - 1], palette, stroke));
    Frame {
        primitives,
        viewport: fit_viewport(&histogram_bounds(edges, max)),
        tint: 0.0,
    }
}

/// Surrounds `main` with pan and zoom stages from `initial` and to `final_frame`,
/// using `working` as the viewport of the main stages.
fn bracket_with_views(
    initial: &Frame,
    final_frame: &Frame,
    working: Rect,
    main: Vec<Stage>,
) -> Result<Vec<Stage>> {
    let mut stages = vec![plan_view_change(initial, working)?];
    stages.extend(main);
    stages.push(plan_view_change(&with_viewport(final_frame, working), final_frame.viewport)?);
    Ok(stages)
}

struct DataChangeScene {
    edges: Vec<f64>,
    old: Vec<f64>,
    raised: Vec<f64>,
    normalized: Vec<f64>,
    /// Total area of the raised histogram.
    peak: f64,
    rescale: bool,
    palette: Palette,
    stroke: f64,
    viewport: Rect,
}

enum Part {
    Gray,
    Delta(Color),
}

impl StageScene for DataChangeScene {
    fn frame(&self, u: EasedTime) -> Frame {
        let p = &self.palette;
        let mut parts: Vec<(usize, Rect, Part)> = Vec::new();
        let mut decorations = Vec::new();
        let scale = lerp(1.0, 1.0 / self.peak, u);
        for i in 0..self.old.len() {
            let (x0, x1) = (self.edges[i], self.edges[i + 1]);
            let (h0, h1) = (self.old[i], self.raised[i]);
            let mut piece = |y0: f64, y1: f64, part: Part| {
                if y1 > y0 {
                    parts.push((i, Rect::span(x0, x1, y0, y1), part));
                }
            };
            if self.rescale {
                let top = lerp(h1, self.normalized[i], u);
                if h1 > h0 {
                    let mid = (h0 * scale).min(top);
                    piece(0.0, mid, Part::Gray);
                    piece(mid, top, Part::Delta(p.more));
                } else {
                    piece(0.0, top, Part::Gray);
                }
            } else if h1 != h0 {
                let container = Rect::span(x0, x1, 0.0, h0.max(h1));
                let spec = FillSpec::new(container, Axis::Y, h0, h1).expect("levels inside the bar");
                let (liquid, deco) = fill_at(&spec, u);
                let (kept, color) = if h1 > h0 { (h0, p.more) } else { (h1, p.less) };
                piece(0.0, kept, Part::Gray);
                piece(kept, liquid.y_max, Part::Delta(color));
                decorations.extend(deco.primitives(p, self.stroke));
            } else {
                piece(0.0, h0, Part::Gray);
            }
        }

        let area: f64 = parts.iter().map(|(_, r, _)| rect_area(r)).sum();
        let tint = tint_fraction(area, self.peak);
        let toward = if area > 1.0 { p.more } else { p.less };
        let gray = p.gray.mix(&toward, tint);
        let mut primitives: Vec<ScenePrimitive> = parts
            .into_iter()
            .map(|(i, r, part)| {
                let color = match part {
                    Part::Gray => gray,
                    Part::Delta(c) if self.rescale => c.mix(&gray, u.get()),
                    Part::Delta(c) => c,
                };
                ScenePrimitive::liquid(r, color, bin_id(i))
            })
            .collect();
        primitives.extend(decorations);
        primitives.push(baseline(self.edges[0], self.edges[self.edges.len() - 1], p, self.stroke));
        Frame {
            primitives,
            viewport: self.viewport,
            tint,
        }
    }
}

/// Data change on fixed bins: bars fill (red) or empty (blue) to the new
/// counts measured against the old total, the gray turns reddish or bluish
/// while the total area is off 1, then every bar rescales back to area 1.
pub fn plan_histogram_data_change(
    old_counts: &[f64],
    new_counts: &[f64],
    range: (f64, f64),
    palette: &Palette,
) -> Result<TransitionScript> {
    if old_counts.len() != new_counts.len() {
        return Err(Error::DimensionMismatch {
            expected: old_counts.len(),
            actual: new_counts.len(),
        });
    }
    let old = Histogram::from_counts(old_counts, range.0, range.1)?;
    let new = Histogram::from_counts(new_counts, range.0, range.1)?;
    let n = old_counts.len();
    let width = (range.1 - range.0) / n as f64;
    let old_total: f64 = old_counts.iter().sum();
    let new_total: f64 = new_counts.iter().sum();
    let raised: Vec<f64> = new_counts.iter().map(|c| c / (old_total * width)).collect();
    let edges = old.edges().to_vec();

    let max = old
        .max_density()
        .max(new.max_density())
        .max(raised.iter().copied().fold(0.0, f64::max));
    let working = fit_viewport(&histogram_bounds(&edges, max));
    let stroke = stroke_width_for(&working);
    let scene = |rescale: bool| DataChangeScene {
        edges: edges.clone(),
        old: old.densities().to_vec(),
        raised: raised.clone(),
        normalized: new.densities().to_vec(),
        peak: new_total / old_total,
        rescale,
        palette: palette.clone(),
        stroke,
        viewport: working,
    };
    let gray = |_| palette.gray;
    let initial = static_frame(&edges, old.densities(), bin_id, gray, palette, stroke);
    let final_frame = static_frame(&edges, new.densities(), bin_id, gray, palette, stroke);
    let main = vec![
        Stage::new(StageKind::FillEmptyTinted, MAIN_WEIGHT, scene(false))?,
        Stage::new(StageKind::RescaleTinted, MAIN_WEIGHT, scene(true))?,
    ];
    TransitionScript::new(
        "data_change",
        bracket_with_views(&initial, &final_frame, working, main)?,
        palette.clone(),
        initial,
        final_frame,
        Conservation::TintedTotal,
    )
}

/// Intersection cells of two binnings with the density of each histogram
/// on every cell.
fn intersection_cells(old: &Histogram, new: &Histogram) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let cuts = partition_intervals(old.edges(), new.edges())?;
    let lookup = |h: &Histogram, m: f64| {
        let (lo, hi) = h.range();
        h.densities()[bin_index(h.edges(), (hi - lo) / h.bin_count() as f64, m)]
    };
    let mut d0 = Vec::with_capacity(cuts.len() - 1);
    let mut d1 = Vec::with_capacity(cuts.len() - 1);
    for w in cuts.windows(2) {
        let mid = (w[0] + w[1]) / 2.0;
        d0.push(lookup(old, mid));
        d1.push(lookup(new, mid));
    }
    Ok((cuts, d0, d1))
}

enum CellLevels {
    Linear(TransferSpec),
    /// Precomputed iterates, played back piecewise linearly.
    Iterates(Vec<Vec<f64>>),
}

struct RebinScene {
    cuts: Vec<f64>,
    levels: CellLevels,
    old: Histogram,
    new: Histogram,
    palette: Palette,
    stroke: f64,
    viewport: Rect,
}

impl RebinScene {
    fn levels_at(&self, u: EasedTime) -> Vec<f64> {
        match &self.levels {
            CellLevels::Linear(spec) => transfer_at(spec, u),
            CellLevels::Iterates(its) => {
                let steps = its.len() - 1;
                let pos = u.get() * steps as f64;
                let k = (pos.floor() as usize).min(steps - 1);
                let frac = EasedTime::new((pos - k as f64).clamp(0.0, 1.0)).expect("clamped");
                its[k]
                    .iter()
                    .zip(&its[k + 1])
                    .map(|(a, b)| lerp(*a, *b, frac))
                    .collect()
            }
        }
    }
}

impl StageScene for RebinScene {
    fn frame(&self, u: EasedTime) -> Frame {
        let levels = self.levels_at(u);
        let mut primitives = bars(&self.cuts, &levels, |_| DENSITY.into(), |_| self.palette.gray);
        for (h, color) in [
            (&self.old, self.palette.source_contour),
            (&self.new, self.palette.target_contour),
        ] {
            for r in h.bar_rects().into_iter().filter(|r| r.height() > 0.0) {
                primitives.push(ScenePrimitive::stroked_rect(r, color, self.stroke));
            }
        }
        let (lo, hi) = self.old.range();
        primitives.push(baseline(lo, hi, &self.palette, self.stroke));
        Frame {
            primitives,
            viewport: self.viewport,
            tint: 0.0,
        }
    }
}

fn plan_rebin_with(
    old: &Histogram,
    new: &Histogram,
    palette: &Palette,
    name: &str,
    levels: impl FnOnce(&[f64], &[f64], &[f64]) -> Result<CellLevels>,
) -> Result<TransitionScript> {
    let (cuts, d0, d1) = intersection_cells(old, new)?;
    let levels = levels(&cuts, &d0, &d1)?;
    let max = old.max_density().max(new.max_density());
    let working = fit_viewport(&histogram_bounds(old.edges(), max));
    let stroke = stroke_width_for(&working);
    let gray = |_| palette.gray;
    let id = |_| LiquidId::from(DENSITY);
    let initial = static_frame(old.edges(), old.densities(), id, gray, palette, stroke);
    let final_frame = static_frame(new.edges(), new.densities(), id, gray, palette, stroke);
    let main = Stage::new(
        StageKind::BlockApplication,
        MAIN_WEIGHT,
        RebinScene {
            cuts,
            levels,
            old: old.clone(),
            new: new.clone(),
            palette: palette.clone(),
            stroke,
            viewport: working,
        },
    )?;
    TransitionScript::new(
        name,
        bracket_with_views(&initial, &final_frame, working, vec![main])?,
        palette.clone(),
        initial,
        final_frame,
        Conservation::PerLiquid,
    )
}

/// Rebinning over the same range: the levels of the intersection cells of
/// both binnings are linearly interpolated, which keeps the total area at 1.
pub fn plan_histogram_rebin(old: &Histogram, new: &Histogram, palette: &Palette) -> Result<TransitionScript> {
    plan_rebin_with(old, new, palette, "rebin", |cuts, d0, d1| {
        let containers = cuts
            .windows(2)
            .zip(d0.iter().zip(d1))
            .map(|(w, (a, b))| TransferContainer {
                width: w[1] - w[0],
                level0: *a,
                level1: *b,
            })
            .collect();
        Ok(CellLevels::Linear(TransferSpec::new(containers)?))
    })
}

/// One neighbor-averaging step with reflecting boundaries:
/// `λᵢ ← (1 − α)·λᵢ + α·(λᵢ₋₁ + λᵢ₊₁)/2`.
pub fn smooth_step(levels: &[f64], alpha: f64) -> Vec<f64> {
    let n = levels.len();
    (0..n)
        .map(|i| {
            let left = levels[i.saturating_sub(1)];
            let right = levels[(i + 1).min(n - 1)];
            (1.0 - alpha) * levels[i] + alpha * (left + right) / 2.0
        })
        .collect()
}

/// Iterates of the diffusive rebinning, `steps + 1` level vectors from
/// `start` to exactly `target`.
///
/// Each step smooths, blends toward the target with weight `k/steps` and
/// renormalizes to the starting area.
pub fn diffusive_iterates(
    start: &[f64],
    target: &[f64],
    widths: &[f64],
    steps: usize,
    alpha: f64,
) -> Result<Vec<Vec<f64>>> {
    if steps == 0 {
        return Err(Error::InvalidConfig("diffusive rebinning needs at least one step".into()));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidConfig(format!("diffusion strength {alpha} outside [0, 1]")));
    }
    if start.len() != target.len() || widths.len() != start.len() {
        return Err(Error::DimensionMismatch {
            expected: start.len(),
            actual: target.len().min(widths.len()),
        });
    }
    let area = |l: &[f64]| -> f64 { l.iter().zip(widths).map(|(a, w)| a * w).sum() };
    let a0 = area(start);
    let mut out = vec![start.to_vec()];
    for k in 1..=steps {
        if k == steps {
            out.push(target.to_vec());
            break;
        }
        let beta = k as f64 / steps as f64;
        let smoothed = smooth_step(&out[k - 1], alpha);
        let mut next: Vec<f64> = smoothed
            .iter()
            .zip(target)
            .map(|(s, t)| (1.0 - beta) * s + beta * t)
            .collect();
        let a = area(&next);
        if a > 0.0 {
            next.iter_mut().for_each(|l| *l *= a0 / a);
        }
        out.push(next);
    }
    Ok(out)
}

/// Rebinning variant whose levels converge toward their neighbors' average
/// while being drawn to the target, renormalized at each step.
pub fn plan_histogram_rebin_diffusive(
    old: &Histogram,
    new: &Histogram,
    steps: usize,
    alpha: f64,
    palette: &Palette,
) -> Result<TransitionScript> {
    plan_rebin_with(old, new, palette, "rebin_diffusive", |cuts, d0, d1| {
        let widths: Vec<f64> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(CellLevels::Iterates(diffusive_iterates(d0, d1, &widths, steps, alpha)?))
    })
}

#[derive(Clone, Copy)]
enum TipPhase {
    Recolor,
    Drain,
    Equalize,
}

struct TipScene {
    phase: TipPhase,
    edges: Vec<f64>,
    selected: Vec<bool>,
    densities: Vec<f64>,
    drain: TransferSpec,
    equalize: TransferSpec,
    yellow_level: f64,
    palette: Palette,
    stroke: f64,
    viewport: Rect,
}

impl StageScene for TipScene {
    fn frame(&self, u: EasedTime) -> Frame {
        let p = &self.palette;
        let n = self.densities.len();
        let (lo, hi) = (self.edges[0], self.edges[n]);
        let mut primitives = Vec::with_capacity(2 * n + 2);
        let mut push = |i: usize, y0: f64, y1: f64, color: Color, id: &str| {
            if y1 > y0 {
                let r = Rect::span(self.edges[i], self.edges[i + 1], y0, y1);
                primitives.push(ScenePrimitive::liquid(r, color, id));
            }
        };
        match self.phase {
            TipPhase::Recolor => {
                let yellow = p.gray.mix(&p.selection, u.get());
                for i in 0..n {
                    if self.selected[i] {
                        push(i, 0.0, self.densities[i], yellow, SELECTED);
                    } else {
                        push(i, 0.0, self.densities[i], p.gray, UNSELECTED);
                    }
                }
            }
            TipPhase::Drain => {
                let yellow = transfer_at(&self.drain, u);
                for i in 0..n {
                    let gray = if self.selected[i] { 0.0 } else { self.densities[i] };
                    push(i, 0.0, yellow[i], p.selection, SELECTED);
                    push(i, yellow[i], yellow[i] + gray, p.gray, UNSELECTED);
                }
            }
            TipPhase::Equalize => {
                let gray = transfer_at(&self.equalize, u);
                let y = self.yellow_level;
                for i in 0..n {
                    push(i, 0.0, y, p.selection, SELECTED);
                    push(i, y, y + gray[i], p.gray, UNSELECTED);
                }
            }
        }
        let target = match self.phase {
            TipPhase::Recolor => None,
            TipPhase::Drain => Some(self.yellow_level),
            TipPhase::Equalize => {
                Some(self.yellow_level + self.equalize.total_area() / (hi - lo))
            }
        };
        if let Some(level) = target {
            primitives.push(ScenePrimitive::line((lo, level), (hi, level), p.target_line, self.stroke));
        }
        primitives.push(baseline(lo, hi, p, self.stroke));
        Frame {
            primitives,
            viewport: self.viewport,
            tint: 0.0,
        }
    }
}

/// Proportion tip: the selected bins turn yellow and drain into a bottom
/// band spanning the whole range, the gray liquid equalizes above it, and
/// after a pause the whole sequence plays back to the original histogram.
pub fn plan_proportion_tip(h: &Histogram, selected_bins: &[usize], palette: &Palette) -> Result<TransitionScript> {
    if selected_bins.is_empty() {
        return Err(Error::EmptySelection);
    }
    let n = h.bin_count();
    let mut selected = vec![false; n];
    for &i in selected_bins {
        if i >= n {
            return Err(Error::InvalidPosition(format!("bin {i} outside 0..{n}")));
        }
        selected[i] = true;
    }
    let edges = h.edges().to_vec();
    let d = h.densities().to_vec();
    let total_width = edges[n] - edges[0];
    let width = |i: usize| edges[i + 1] - edges[i];
    let yellow_area: f64 = (0..n).filter(|&i| selected[i]).map(|i| width(i) * d[i]).sum();
    let gray_area: f64 = (0..n).filter(|&i| !selected[i]).map(|i| width(i) * d[i]).sum();
    let yellow_level = yellow_area / total_width;
    let gray_level = gray_area / total_width;

    let containers = |f: &dyn Fn(usize) -> (f64, f64)| -> Vec<TransferContainer> {
        (0..n)
            .map(|i| {
                let (level0, level1) = f(i);
                TransferContainer {
                    width: width(i),
                    level0,
                    level1,
                }
            })
            .collect()
    };
    let drain = TransferSpec::new(containers(&|i| {
        (if selected[i] { d[i] } else { 0.0 }, yellow_level)
    }))?;
    let equalize = TransferSpec::new(containers(&|i| {
        (if selected[i] { 0.0 } else { d[i] }, gray_level)
    }))?;

    let max = h.max_density().max(yellow_level + gray_level);
    let working = fit_viewport(&histogram_bounds(&edges, max));
    let stroke = stroke_width_for(&working);
    let scene = |phase| TipScene {
        phase,
        edges: edges.clone(),
        selected: selected.clone(),
        densities: d.clone(),
        drain: drain.clone(),
        equalize: equalize.clone(),
        yellow_level,
        palette: palette.clone(),
        stroke,
        viewport: working,
    };
    let id = |i: usize| LiquidId::from(if selected[i] { SELECTED } else { UNSELECTED });
    let initial = static_frame(&edges, &d, id, |_| palette.gray, palette, stroke);

    let forward = vec![
        plan_view_change(&initial, working)?,
        Stage::new(StageKind::BlockApplication, VIEW_WEIGHT, scene(TipPhase::Recolor))?,
        Stage::new(StageKind::BlockApplication, MAIN_WEIGHT, scene(TipPhase::Drain))?,
        Stage::new(StageKind::BlockApplication, MAIN_WEIGHT, scene(TipPhase::Equalize))?,
    ];
    let tip = forward.last().expect("non-empty").end_frame();
    let mut stages = forward.clone();
    stages.push(plan_hold(&tip, VIEW_WEIGHT)?);
    stages.extend(forward.iter().rev().map(Stage::reversed));
    TransitionScript::new(
        "proportion_tip",
        stages,
        palette.clone(),
        initial.clone(),
        initial,
        Conservation::PerLiquid,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::TimeParam;
    use crate::transitions::{evaluate, verify_script};

    #[test]
    fn tint_rule() {
        assert_eq!(tint_fraction(1.0, 0.95), 0.0);
        assert_eq!(tint_fraction(1.0 + 5e-10, 0.95), 0.0);
        assert!((tint_fraction(0.95, 0.95) - TINT_MAX).abs() < 1e-15);
        assert!((tint_fraction(0.975, 0.95) - TINT_MAX / 2.0).abs() < 1e-12);
        assert!(tint_fraction(1.0 + 2e-9, 1.0) > 0.0);
    }

    #[test]
    fn data_change_worked_example() {
        let s = plan_histogram_data_change(&[5.0, 10.0, 5.0], &[6.0, 10.0, 3.0], (0.0, 3.0), &Palette::default())
            .unwrap();
        let fill = &s.stages()[1];
        let peak = fill.end_frame();
        assert!((peak.total_liquid_area() - 0.95).abs() < 1e-12);
        assert!((peak.tint - TINT_MAX).abs() < 1e-12);
        let end = evaluate(&s, TimeParam::END);
        let areas = end.liquid_areas();
        let expected = [6.0 / 19.0, 10.0 / 19.0, 3.0 / 19.0];
        for (i, e) in expected.iter().enumerate() {
            assert!((areas[&bin_id(i)] - e).abs() < 1e-12);
        }
        assert!((expected[0] - 0.315789).abs() < 1e-6);
        assert_eq!(end.tint, 0.0);
        verify_script(&s, 101, 1e-9).unwrap();
    }

    #[test]
    fn bluish_when_shrinking_reddish_when_growing() {
        let p = Palette::default();
        let s = plan_histogram_data_change(&[1.0, 1.0], &[1.0, 0.5], (0.0, 2.0), &p).unwrap();
        let mid = s.stages()[1].frame_at(0.5);
        let (_, r) = mid.liquid_rects().next().unwrap();
        assert!(r.height() > 0.0);
        let fill = match &mid.primitives[0] {
            ScenePrimitive::Rect { fill, .. } => *fill,
            _ => unreachable!(),
        };
        assert!(fill.b > fill.r, "bluish gray");

        let s = plan_histogram_data_change(&[1.0, 1.0], &[2.0, 1.0], (0.0, 2.0), &p).unwrap();
        let mid = s.stages()[1].frame_at(0.5);
        assert!(mid.total_liquid_area() > 1.0);
        let reds = mid
            .primitives
            .iter()
            .filter(|q| matches!(q, ScenePrimitive::Rect { fill, liquid: Some(_), .. } if *fill == p.more))
            .count();
        assert_eq!(reds, 1);
    }

    #[test]
    fn unchanged_data_gives_constant_frames() {
        let s = plan_histogram_data_change(&[1.0, 2.0, 1.0], &[1.0, 2.0, 1.0], (0.0, 3.0), &Palette::default())
            .unwrap();
        let first = evaluate(&s, TimeParam::START).liquid_areas();
        for k in 0..=20 {
            let f = evaluate(&s, TimeParam::new(k as f64 / 20.0).unwrap());
            assert_eq!(f.tint, 0.0);
            assert!(f.viewport.max_coordinate_distance(&s.initial().viewport) < 1e-12);
            for (id, a) in f.liquid_areas() {
                assert!((a - first[&id]).abs() < 1e-12, "{id}");
            }
        }
    }

    #[test]
    fn data_change_rejects_mismatched_bins() {
        let err = plan_histogram_data_change(&[1.0, 1.0], &[1.0], (0.0, 1.0), &Palette::default()).unwrap_err();
        assert_eq!(err.code(), "DimensionMismatch");
    }

    #[test]
    fn rebin_midframe() {
        let old = Histogram::new(vec![0.0, 1.0, 2.0], vec![0.6, 0.4]).unwrap();
        let new = Histogram::new(vec![0.0, 2.0], vec![0.5]).unwrap();
        let s = plan_histogram_rebin(&old, &new, &Palette::default()).unwrap();
        let f = s.stages()[1].frame_at(0.5);
        let h: Vec<f64> = f.liquid_rects().map(|(_, r)| r.height()).collect();
        assert!((h[0] - 0.55).abs() < 1e-12 && (h[1] - 0.45).abs() < 1e-12);
        assert!((f.total_liquid_area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rebin_range_mismatch() {
        let old = Histogram::new(vec![0.0, 1.0], vec![1.0]).unwrap();
        let new = Histogram::new(vec![0.0, 2.0], vec![0.5]).unwrap();
        let err = plan_histogram_rebin(&old, &new, &Palette::default()).unwrap_err();
        assert_eq!(err.code(), "RangeMismatch");
    }

    #[test]
    fn smoothing_example() {
        assert_eq!(smooth_step(&[1.5, 0.5], 0.5), vec![1.25, 0.75]);
        assert_eq!(smooth_step(&[0.5, 0.5, 0.5], 0.5), vec![0.5, 0.5, 0.5]);
    }

    #[test]
    fn diffusive_iterates_snap_and_keep_area() {
        let w = [0.5, 0.5, 1.0];
        let its = diffusive_iterates(&[1.0, 0.0, 0.5], &[0.0, 1.0, 0.5], &w, 5, 0.5).unwrap();
        assert_eq!(its.len(), 6);
        assert_eq!(its[5], vec![0.0, 1.0, 0.5]);
        for it in &its {
            let a: f64 = it.iter().zip(&w).map(|(l, w)| l * w).sum();
            assert!((a - 1.0).abs() < 1e-12);
        }
        let one = diffusive_iterates(&[1.0, 0.0, 0.5], &[0.0, 1.0, 0.5], &w, 1, 0.5).unwrap();
        assert_eq!(one[1], vec![0.0, 1.0, 0.5]);
        let flat = diffusive_iterates(&[1.0; 3], &[1.0; 3], &[1.0 / 3.0; 3], 4, 0.5).unwrap();
        assert!(flat.iter().flatten().all(|l| (l - 1.0).abs() < 1e-12));
        assert!(diffusive_iterates(&[1.0], &[1.0], &[1.0], 0, 0.5).is_err());
    }

    #[test]
    fn tip_worked_example() {
        let h = Histogram::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.5, 0.25, 0.25]).unwrap();
        let s = plan_proportion_tip(&h, &[0], &Palette::default()).unwrap();
        // scale of the (2, 1, 1) example by the histogram's unit area
        let tip = s.stages()[3].end_frame();
        for (id, r) in tip.liquid_rects() {
            if id.0 == SELECTED {
                assert!((r.height() - 0.5 / 3.0).abs() < 1e-12);
            } else {
                assert!((r.height() - 0.5 / 3.0).abs() < 1e-12);
                assert!((r.y_max - 1.0 / 3.0).abs() < 1e-12);
            }
        }
        let a = tip.liquid_areas();
        assert!((a[&LiquidId::from(SELECTED)] - 0.5).abs() < 1e-12);
        verify_script(&s, 101, 1e-9).unwrap();
    }

    #[test]
    fn tip_is_a_palindrome() {
        let h = Histogram::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.5, 0.25, 0.25]).unwrap();
        let s = plan_proportion_tip(&h, &[0, 2], &Palette::default()).unwrap();
        for k in 0..=50 {
            let t = k as f64 / 50.0;
            let a = evaluate(&s, TimeParam::new(t).unwrap());
            let b = evaluate(&s, TimeParam::new(1.0 - t).unwrap());
            assert!(a.viewport.max_coordinate_distance(&b.viewport) < 1e-9);
            for ((ia, ra), (ib, rb)) in a.liquid_rects().zip(b.liquid_rects()) {
                assert_eq!(ia, ib);
                assert!(ra.max_coordinate_distance(rb) < 1e-9);
            }
        }
    }

    #[test]
    fn tip_full_and_empty_selections() {
        let h = Histogram::new(vec![0.0, 1.0, 2.0], vec![1.0, 0.0]).unwrap();
        let all = plan_proportion_tip(&h, &[0, 1], &Palette::default()).unwrap();
        let tip = all.stages()[3].end_frame();
        assert!(tip.liquid_rects().all(|(id, r)| id.0 == SELECTED && (r.height() - 0.5).abs() < 1e-12));
        let zero = plan_proportion_tip(&h, &[1], &Palette::default()).unwrap();
        let tip = zero.stages()[3].end_frame();
        assert!(tip.liquid_rects().all(|(id, _)| id.0 == UNSELECTED));
        assert_eq!(plan_proportion_tip(&h, &[], &Palette::default()).unwrap_err().code(), "EmptySelection");
        assert!(plan_proportion_tip(&h, &[2], &Palette::default()).is_err());
    }
}
