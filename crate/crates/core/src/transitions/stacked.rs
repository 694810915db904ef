//! Stacked-bar reordering: a level moved to the bottom of every bar, or a
//! whole bar moved to another position on the categorical axis.

use std::collections::BTreeMap;

use crate::blocks::{segments_shift_at, shift_at, transfer_at, TransferContainer, TransferSpec};
use crate::charts::{fit_viewport, stacked_frame, StackedBarChart};
use crate::error::{Error, Result};
use crate::geometry::{Axis, Color, Frame, LiquidId, Rect, ScenePrimitive};
use crate::interp::{lerp, EasedTime};
use crate::palette::Palette;

use super::{
    plan_view_change, with_viewport, Conservation, Stage, StageKind, StageScene, TransitionScript,
    MAIN_WEIGHT, VIEW_WEIGHT,
};

fn label_y(chart: &StackedBarChart) -> f64 {
    -0.04 * chart.max_total().max(1e-6)
}

fn label(chart: &StackedBarChart, category: usize, x_min: f64, palette: &Palette) -> ScenePrimitive {
    ScenePrimitive::label(
        (x_min + chart.bar_width() / 2.0, label_y(chart)),
        chart.categories()[category].clone(),
        palette.text,
    )
}

#[derive(Clone, Copy)]
enum VerticalPhase {
    Highlight,
    Shift,
    Unhighlight,
}

struct VerticalScene {
    phase: VerticalPhase,
    before: StackedBarChart,
    after: StackedBarChart,
    level: usize,
    levels_by_id: BTreeMap<LiquidId, usize>,
    palette: Palette,
    viewport: Rect,
}

impl VerticalScene {
    fn color(&self, id: &LiquidId, highlight: f64) -> Color {
        let l = self.levels_by_id[id];
        let base = self.before.levels()[l].color;
        if l == self.level {
            base.mix(&self.palette.segment_selection, highlight)
        } else {
            base
        }
    }
}

impl StageScene for VerticalScene {
    fn frame(&self, u: EasedTime) -> Frame {
        let chart = match self.phase {
            VerticalPhase::Highlight | VerticalPhase::Shift => &self.before,
            VerticalPhase::Unhighlight => &self.after,
        };
        let highlight = match self.phase {
            VerticalPhase::Highlight => u.get(),
            VerticalPhase::Shift => 1.0,
            VerticalPhase::Unhighlight => 1.0 - u.get(),
        };
        let mut primitives = Vec::new();
        for c in 0..chart.categories().len() {
            let stack = match self.phase {
                VerticalPhase::Shift => {
                    segments_shift_at(&chart.stack(c), &self.before.liquid_id(c, self.level), u)
                        .expect("level present in every bar")
                }
                _ => chart.stack(c),
            };
            for (id, r) in stack.rects(chart.slot_x(c), 0.0) {
                if r.height() > 0.0 {
                    let color = self.color(&id, highlight);
                    primitives.push(ScenePrimitive::liquid(r, color, id));
                }
            }
        }
        for c in 0..chart.categories().len() {
            primitives.push(label(chart, c, chart.slot_x(c), &self.palette));
        }
        Frame {
            primitives,
            viewport: self.viewport,
            tint: 0.0,
        }
    }
}

/// Moves `level` to the bottom of every bar at once with communicating
/// segments, highlighting it before and after the move.
pub fn plan_stacked_vertical_reorder(
    chart: &StackedBarChart,
    level: &str,
    palette: &Palette,
) -> Result<TransitionScript> {
    let l = chart.level_index(level)?;
    let after = chart.with_level_first(level)?;
    let initial = stacked_frame(chart, palette);
    let final_frame = stacked_frame(&after, palette);
    let mut levels_by_id = BTreeMap::new();
    for c in 0..chart.categories().len() {
        for k in 0..chart.levels().len() {
            levels_by_id.insert(chart.liquid_id(c, k), k);
        }
    }
    let scene = |phase| VerticalScene {
        phase,
        before: chart.clone(),
        after: after.clone(),
        level: l,
        levels_by_id: levels_by_id.clone(),
        palette: palette.clone(),
        viewport: initial.viewport,
    };
    let stages = vec![
        Stage::new(StageKind::BlockApplication, VIEW_WEIGHT, scene(VerticalPhase::Highlight))?,
        Stage::new(StageKind::BlockApplication, MAIN_WEIGHT, scene(VerticalPhase::Shift))?,
        Stage::new(StageKind::BlockApplication, VIEW_WEIGHT, scene(VerticalPhase::Unhighlight))?,
    ];
    TransitionScript::new(
        "vertical_reorder",
        stages,
        palette.clone(),
        initial,
        final_frame,
        Conservation::PerLiquid,
    )
}

/// One bar of a horizontal reorder: its category, slot positions and the
/// level heights it currently holds.
#[derive(Clone)]
struct BarState {
    category: usize,
    x_from: f64,
    x_to: f64,
    heights: Vec<f64>,
    labelled: bool,
}

struct BarsScene {
    chart: StackedBarChart,
    bars: Vec<BarState>,
    /// Extra labels `(category, x_from, x_to)` not tied to a bar.
    labels: Vec<(usize, f64, f64)>,
    /// Source/destination bars whose levels follow a transfer.
    transfer: Option<(usize, usize, usize, TransferSpec)>,
    container: Rect,
    palette: Palette,
    viewport: Rect,
}

impl StageScene for BarsScene {
    fn frame(&self, u: EasedTime) -> Frame {
        let mut bars = self.bars.clone();
        if let Some((src, dst, level, spec)) = &self.transfer {
            let levels = transfer_at(spec, u);
            bars[*src].heights[*level] = levels[0];
            bars[*dst].heights[*level] = levels[1];
        }
        let w = self.chart.bar_width();
        let mut primitives = Vec::new();
        for bar in &bars {
            let mut y = 0.0;
            for (l, h) in bar.heights.iter().enumerate() {
                if *h > 0.0 {
                    let r = Rect::span(bar.x_from, bar.x_from + w, y, y + h);
                    let r = shift_at(&r, &self.container, Axis::X, bar.x_to - bar.x_from, u)
                        .expect("bars stay on the axis");
                    primitives.push(ScenePrimitive::liquid(
                        r,
                        self.chart.levels()[l].color,
                        self.chart.liquid_id(bar.category, l),
                    ));
                }
                y += h;
            }
        }
        let labels = bars
            .iter()
            .filter(|b| b.labelled)
            .map(|b| (b.category, b.x_from, b.x_to))
            .chain(self.labels.iter().copied());
        for (c, from, to) in labels {
            primitives.push(label(&self.chart, c, lerp(from, to, u), &self.palette));
        }
        Frame {
            primitives,
            viewport: self.viewport,
            tint: 0.0,
        }
    }
}

/// Moves one bar to `target_position`: a gap opens at the destination, the
/// bar's segments are transferred into it one at a time from the bottom,
/// and the emptied slot closes.
pub fn plan_stacked_horizontal_reorder(
    chart: &StackedBarChart,
    moving: &str,
    target_position: usize,
    palette: &Palette,
) -> Result<TransitionScript> {
    let i = chart.category_index(moving)?;
    let k = chart.categories().len();
    if target_position == i {
        return Err(Error::InvalidPosition(format!(
            "{moving:?} is already at position {target_position}"
        )));
    }
    let after = chart.with_category_moved(moving, target_position)?;
    let dest = if target_position <= i {
        target_position
    } else {
        target_position + 1
    };
    let inter = |c: usize| c + usize::from(c >= dest);
    let final_index = |c: usize| {
        after
            .category_index(&chart.categories()[c])
            .expect("same categories")
    };
    let x = |slot: usize| chart.slot_x(slot);

    let initial = stacked_frame(chart, palette);
    let final_frame = stacked_frame(&after, palette);
    let height = chart.max_total().max(1e-6);
    let container = Rect::span(0.0, chart.slots_width(k + 1), 0.0, height);
    let working = fit_viewport(&Rect::span(
        0.0,
        chart.slots_width(k + 1),
        2.0 * label_y(chart),
        height,
    ));

    let n_levels = chart.levels().len();
    let full = |c: usize| chart.heights()[c].clone();
    let scene = |bars: Vec<BarState>, labels: Vec<(usize, f64, f64)>, transfer| BarsScene {
        chart: chart.clone(),
        bars,
        labels,
        transfer,
        container,
        palette: palette.clone(),
        viewport: working,
    };

    let mut stages = vec![plan_view_change(&initial, working)?];

    let open: Vec<BarState> = (0..k)
        .map(|c| BarState {
            category: c,
            x_from: x(c),
            x_to: x(inter(c)),
            heights: full(c),
            labelled: true,
        })
        .collect();
    let dest_label = (i, x(dest), x(dest));
    stages.push(Stage::new(
        StageKind::LayoutGap,
        MAIN_WEIGHT,
        scene(open.clone(), vec![dest_label], None),
    )?);

    // bars at rest in the widened layout; the destination is the last entry
    let mut bars: Vec<BarState> = open
        .iter()
        .map(|b| BarState {
            x_from: b.x_to,
            ..b.clone()
        })
        .collect();
    bars.push(BarState {
        category: i,
        x_from: x(dest),
        x_to: x(dest),
        heights: vec![0.0; n_levels],
        labelled: false,
    });
    for b in &mut bars {
        b.x_to = b.x_from;
    }
    let src = i;
    let dst = bars.len() - 1;
    let moved: Vec<usize> = (0..n_levels).filter(|&l| chart.heights()[i][l] > 0.0).collect();
    let sub_weight = MAIN_WEIGHT / moved.len().max(1) as f64;
    for &l in &moved {
        let h = chart.heights()[i][l];
        let spec = TransferSpec::new(vec![
            TransferContainer {
                width: chart.bar_width(),
                level0: h,
                level1: 0.0,
            },
            TransferContainer {
                width: chart.bar_width(),
                level0: 0.0,
                level1: h,
            },
        ])?;
        stages.push(Stage::new(
            StageKind::SegmentTransferSequence,
            sub_weight,
            scene(bars.clone(), vec![dest_label], Some((src, dst, l, spec))),
        )?);
        bars[src].heights[l] = 0.0;
        bars[dst].heights[l] = h;
    }

    let close: Vec<BarState> = bars
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != src)
        .map(|(j, b)| BarState {
            x_to: if j == dst { x(target_position) } else { x(final_index(b.category)) },
            labelled: true,
            ..b.clone()
        })
        .collect();
    stages.push(Stage::new(StageKind::LayoutGap, MAIN_WEIGHT, scene(close, vec![], None))?);
    stages.push(plan_view_change(&with_viewport(&final_frame, working), final_frame.viewport)?);

    TransitionScript::new(
        "horizontal_reorder",
        stages,
        palette.clone(),
        initial,
        final_frame,
        Conservation::PerLiquid,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::StackedLevel;
    use crate::interp::TimeParam;
    use crate::transitions::{evaluate, verify_script};

    fn chart(heights: Vec<Vec<f64>>) -> StackedBarChart {
        let p = Palette::default();
        let levels = (0..heights[0].len())
            .map(|l| StackedLevel {
                label: ["A", "B", "C"][l].to_string(),
                color: p.level_color(l),
            })
            .collect();
        let cats = (0..heights.len()).map(|c| format!("c{c}")).collect();
        StackedBarChart::new(cats, levels, heights, 1.0, 0.5).unwrap()
    }

    fn bar_segments(f: &Frame, x_min: f64) -> Vec<(String, f64)> {
        let mut v: Vec<_> = f
            .liquid_rects()
            .filter(|(_, r)| (r.x_min - x_min).abs() < 1e-12)
            .map(|(id, r)| (id.0.clone(), r.y_min, r.height()))
            .collect();
        v.sort_by(|a, b| a.1.total_cmp(&b.1));
        v.into_iter().map(|(id, _, h)| (id, h)).collect()
    }

    #[test]
    fn vertical_midframe() {
        let c = chart(vec![vec![2.0, 1.0, 3.0], vec![1.0, 0.0, 2.0]]);
        let s = plan_stacked_vertical_reorder(&c, "C", &Palette::default()).unwrap();
        let mid = s.stages()[1].frame_at(0.5);
        assert_eq!(
            bar_segments(&mid, c.slot_x(0)),
            vec![
                ("c0/C".to_string(), 1.5),
                ("c0/A".to_string(), 2.0),
                ("c0/B".to_string(), 1.0),
                ("c0/C".to_string(), 1.5)
            ]
        );
        verify_script(&s, 101, 1e-9).unwrap();
    }

    #[test]
    fn vertical_bottom_level_is_static() {
        let c = chart(vec![vec![2.0, 1.0, 3.0], vec![1.0, 0.0, 2.0]]);
        let s = plan_stacked_vertical_reorder(&c, "A", &Palette::default()).unwrap();
        let start = evaluate(&s, TimeParam::START);
        for k in 0..=10 {
            let f = evaluate(&s, TimeParam::new(k as f64 / 10.0).unwrap());
            for ((ia, ra), (ib, rb)) in f.liquid_rects().zip(start.liquid_rects()) {
                assert_eq!(ia, ib);
                assert!(ra.max_coordinate_distance(rb) < 1e-12);
            }
        }
    }

    #[test]
    fn vertical_absent_level_leaves_bar_unchanged() {
        let c = chart(vec![vec![2.0, 1.0, 3.0], vec![1.0, 0.0, 2.0]]);
        let s = plan_stacked_vertical_reorder(&c, "B", &Palette::default()).unwrap();
        let mid = s.stages()[1].frame_at(0.5);
        assert_eq!(
            bar_segments(&mid, c.slot_x(1)),
            vec![("c1/A".to_string(), 1.0), ("c1/C".to_string(), 2.0)]
        );
        assert_eq!(
            plan_stacked_vertical_reorder(&c, "Z", &Palette::default()).unwrap_err().code(),
            "UnknownLevel"
        );
    }

    #[test]
    fn horizontal_single_segment_transfer() {
        let c = chart(vec![vec![3.0], vec![1.0], vec![2.0]]);
        let s = plan_stacked_horizontal_reorder(&c, "c0", 2, &Palette::default()).unwrap();
        let kinds: Vec<StageKind> = s.stages().iter().map(|st| st.kind()).collect();
        assert_eq!(
            kinds,
            vec![
                StageKind::ViewChange,
                StageKind::LayoutGap,
                StageKind::SegmentTransferSequence,
                StageKind::LayoutGap,
                StageKind::ViewChange
            ]
        );
        let mid = s.stages()[2].frame_at(0.5);
        let parts: Vec<f64> = mid
            .liquid_rects()
            .filter(|(id, _)| id.0 == "c0/A")
            .map(|(_, r)| r.height())
            .collect();
        assert_eq!(parts, vec![1.5, 1.5]);
        verify_script(&s, 101, 1e-9).unwrap();
    }

    #[test]
    fn horizontal_transfers_bottom_up_with_equal_weights() {
        let c = chart(vec![vec![1.0, 2.0, 0.5], vec![1.0, 1.0, 1.0], vec![2.0, 0.0, 1.0]]);
        let s = plan_stacked_horizontal_reorder(&c, "c2", 0, &Palette::default()).unwrap();
        let transfers: Vec<&Stage> = s
            .stages()
            .iter()
            .filter(|st| st.kind() == StageKind::SegmentTransferSequence)
            .collect();
        // the empty middle level has nothing to move
        assert_eq!(transfers.len(), 2);
        assert_eq!(transfers[0].weight(), transfers[1].weight());
        let first = transfers[0].frame_at(0.5);
        let moving: Vec<&str> = first
            .liquid_rects()
            .filter(|(_, r)| r.height() > 0.0 && r.height() < 2.0)
            .map(|(id, _)| id.0.as_str())
            .filter(|id| id.starts_with("c2/A"))
            .collect();
        assert_eq!(moving.len(), 2);
        verify_script(&s, 101, 1e-9).unwrap();
        let end = evaluate(&s, TimeParam::END);
        assert_eq!(bar_segments(&end, c.slot_x(0)), vec![("c2/A".into(), 2.0), ("c2/C".into(), 1.0)]);
    }

    #[test]
    fn horizontal_rejections() {
        let c = chart(vec![vec![3.0], vec![1.0]]);
        let p = Palette::default();
        assert_eq!(plan_stacked_horizontal_reorder(&c, "c0", 0, &p).unwrap_err().code(), "InvalidPosition");
        assert_eq!(plan_stacked_horizontal_reorder(&c, "c0", 2, &p).unwrap_err().code(), "InvalidPosition");
        assert_eq!(plan_stacked_horizontal_reorder(&c, "zz", 1, &p).unwrap_err().code(), "UnknownCategory");
    }
}
