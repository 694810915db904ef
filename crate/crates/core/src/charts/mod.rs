//! Data models and static layouts of the product plots.

mod confusion;
mod histogram;
mod stacked;

pub use confusion::{
    cell_liquid_id, fluctuation_layout, mosaic_layout, probability_table, ConfusionMatrix,
    FluctuationLayout, MosaicLayout, ProbabilityTable,
};
pub use histogram::{histogram_from_samples, Histogram, HISTOGRAM_AREA_TOLERANCE};
pub use stacked::{liquid_id as stacked_liquid_id, StackedBarChart, StackedLevel};

pub(crate) use histogram::bin_index;

use crate::geometry::{Frame, Rect, ScenePrimitive};
use crate::palette::Palette;

/// Viewport showing `content` with a 5% margin on every side.
pub fn fit_viewport(content: &Rect) -> Rect {
    let w = content.width().max(1e-6);
    let h = content.height().max(1e-6);
    let cx = content.center(crate::geometry::Axis::X);
    let cy = content.center(crate::geometry::Axis::Y);
    Rect::span(cx - w / 2.0, cx + w / 2.0, cy - h / 2.0, cy + h / 2.0).padded(0.05)
}

/// Stroke width in chart units for content shown through `viewport`.
pub fn stroke_width_for(viewport: &Rect) -> f64 {
    0.004 * viewport.width().max(viewport.height())
}

/// Static stacked-bar layout: one liquid rect per segment plus category labels.
pub fn stacked_frame(chart: &StackedBarChart, palette: &Palette) -> Frame {
    let mut prims: Vec<ScenePrimitive> = chart
        .segment_rects()
        .into_iter()
        .filter(|(_, _, r)| r.height() > 0.0)
        .map(|(id, l, r)| ScenePrimitive::liquid(r, chart.levels()[l].color, id))
        .collect();
    let bounds = Rect::span(
        0.0,
        chart.slots_width(chart.categories().len()),
        0.0,
        chart.max_total().max(1e-6),
    );
    for (c, label) in chart.categories().iter().enumerate() {
        let x = chart.slot_x(c) + chart.bar_width() / 2.0;
        prims.push(ScenePrimitive::label((x, -0.04 * bounds.height()), label.clone(), palette.text));
    }
    Frame {
        primitives: prims,
        viewport: fit_viewport(&bounds.union(&Rect::span(0.0, 0.0, -0.08 * bounds.height(), 0.0))),
        tint: 0.0,
    }
}

pub(crate) fn confusion_labels(
    pt: &ProbabilityTable,
    layout: &FluctuationLayout,
    palette: &Palette,
) -> Vec<ScenePrimitive> {
    let k = pt.class_count();
    let s = layout.cell_size;
    let mut out = Vec::with_capacity(2 * k);
    for p in 0..k {
        out.push(ScenePrimitive::label(
            (-0.3 * s, layout.row_center(p)),
            pt.labels[p].clone(),
            palette.text,
        ));
    }
    for o in 0..k {
        out.push(ScenePrimitive::label(
            (layout.column_center(o), (k as f64 + 1.15) * s),
            pt.labels[o].clone(),
            palette.text,
        ));
    }
    out
}

/// Margin squares, reference square, inner frame and labels of a
/// fluctuation diagram; everything except the cell liquids.
pub(crate) fn fluctuation_context(
    pt: &ProbabilityTable,
    layout: &FluctuationLayout,
    palette: &Palette,
    stroke: f64,
) -> Vec<ScenePrimitive> {
    let mut out = vec![ScenePrimitive::stroked_rect(layout.grid, palette.container, stroke)];
    for (p, r) in layout.row_margins.iter().enumerate() {
        out.push(ScenePrimitive::filled_rect(*r, palette.class_color(p)));
    }
    for (o, r) in layout.col_margins.iter().enumerate() {
        out.push(
            ScenePrimitive::filled_rect(*r, palette.background)
                .with_stroke(palette.class_color(o), stroke),
        );
    }
    out.push(ScenePrimitive::filled_rect(layout.reference, palette.reference));
    out.extend(confusion_labels(pt, layout, palette));
    out
}

pub(crate) fn cell_primitive(
    pt: &ProbabilityTable,
    p: usize,
    o: usize,
    rect: Rect,
    palette: &Palette,
    stroke: f64,
) -> ScenePrimitive {
    ScenePrimitive::liquid(rect, palette.class_color(p), cell_liquid_id(pt, p, o))
        .with_stroke(palette.class_color(o), stroke)
}

/// Static fluctuation diagram.
pub fn fluctuation_frame(pt: &ProbabilityTable, layout: &FluctuationLayout, palette: &Palette) -> Frame {
    let viewport = fit_viewport(&layout.bounds());
    let stroke = stroke_width_for(&viewport);
    let mut prims = fluctuation_context(pt, layout, palette, stroke);
    for p in 0..pt.class_count() {
        for o in 0..pt.class_count() {
            if pt.joint[p][o] > 0.0 {
                prims.push(cell_primitive(pt, p, o, layout.cells[p][o], palette, stroke));
            }
        }
    }
    Frame {
        primitives: prims,
        viewport,
        tint: 0.0,
    }
}

/// Static mosaic plot, as laid out by `layout` (possibly translated).
pub fn mosaic_frame(pt: &ProbabilityTable, layout: &MosaicLayout, palette: &Palette) -> Frame {
    let bounds = layout
        .bands
        .iter()
        .copied()
        .reduce(|a, b| a.union(&b))
        .unwrap_or(Rect::span(0.0, 1.0, 0.0, 1.0));
    let viewport = fit_viewport(&bounds);
    let stroke = stroke_width_for(&viewport);
    let mut prims = Vec::new();
    for p in 0..pt.class_count() {
        for o in 0..pt.class_count() {
            if pt.joint[p][o] > 0.0 {
                prims.push(cell_primitive(pt, p, o, layout.segments[p][o], palette, stroke));
            }
        }
    }
    Frame {
        primitives: prims,
        viewport,
        tint: 0.0,
    }
}
