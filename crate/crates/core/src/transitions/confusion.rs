//! Fluctuation diagram to mosaic plot: cell squares slide to a strip right
//! of the grid, each row reshapes into its mosaic band, the bands pile up
//! into the unit square, and the view zooms onto the mosaic.

use crate::blocks::{reshape_at, shift_at, ReshapeSpec, Staging};
use crate::charts::{
    cell_primitive, fit_viewport, fluctuation_context, fluctuation_frame, fluctuation_layout,
    mosaic_frame, mosaic_layout, probability_table, stroke_width_for, ConfusionMatrix,
    FluctuationLayout, ProbabilityTable,
};
use crate::error::{Error, Result};
use crate::geometry::{Axis, Frame, Rect, ScenePrimitive};
use crate::interp::EasedTime;
use crate::palette::Palette;

use super::{
    plan_view_change, with_viewport, Conservation, Stage, StageKind, StageScene, TransitionScript,
    MAIN_WEIGHT,
};

/// Grid slot size of the fluctuation diagram, in units of the mosaic square.
pub const DEFAULT_GRID_CELL: f64 = 1.25;

/// One moving cell: where it starts and ends in a stage.
#[derive(Clone)]
struct Cell {
    p: usize,
    o: usize,
    from: Rect,
    to: Rect,
}

enum Motion {
    /// Rigid move along an axis inside a container.
    Shift { axis: Axis, container: Rect },
    /// Equal-area reshape with x pistons.
    Reshape(Vec<ReshapeSpec>),
}

struct CellsScene {
    pt: ProbabilityTable,
    context: Vec<ScenePrimitive>,
    cells: Vec<Cell>,
    motion: Motion,
    /// Outlines drawn above the cells.
    guides: Vec<Rect>,
    palette: Palette,
    stroke: f64,
    viewport: Rect,
}

impl StageScene for CellsScene {
    fn frame(&self, u: EasedTime) -> Frame {
        let mut primitives = self.context.clone();
        for (k, cell) in self.cells.iter().enumerate() {
            let rect = match &self.motion {
                Motion::Shift { axis, container } => {
                    let offset = cell.to.low(*axis) - cell.from.low(*axis);
                    shift_at(&cell.from, container, *axis, offset, u).expect("cells stay in their lane")
                }
                Motion::Reshape(specs) => reshape_at(&specs[k], u).expect("reshape validated when planned").0,
            };
            primitives.push(cell_primitive(&self.pt, cell.p, cell.o, rect, &self.palette, self.stroke));
        }
        for g in &self.guides {
            primitives.push(ScenePrimitive::stroked_rect(*g, self.palette.target_contour, self.stroke));
        }
        Frame {
            primitives,
            viewport: self.viewport,
            tint: 0.0,
        }
    }
}

fn hull(rects: impl IntoIterator<Item = Rect>) -> Option<Rect> {
    rects.into_iter().reduce(|a, b| a.union(&b))
}

pub fn plan_fluctuation_to_mosaic(cm: &ConfusionMatrix, palette: &Palette) -> Result<TransitionScript> {
    plan_fluctuation_to_mosaic_with(cm, DEFAULT_GRID_CELL, palette)
}

/// As [`plan_fluctuation_to_mosaic`] with an explicit grid slot size, which
/// must be at least 1 so that every cell square fits its slot.
pub fn plan_fluctuation_to_mosaic_with(
    cm: &ConfusionMatrix,
    grid_cell: f64,
    palette: &Palette,
) -> Result<TransitionScript> {
    if !(grid_cell >= 1.0 && grid_cell.is_finite()) {
        return Err(Error::InvalidConfig(format!("grid cell size {grid_cell} must be at least 1")));
    }
    let pt = probability_table(cm)?;
    let k = pt.class_count();
    let layout: FluctuationLayout = fluctuation_layout(&pt, grid_cell);
    let s = grid_cell;
    let strip_x = (k + 1) as f64 * s;
    let mosaic = mosaic_layout(&pt);
    // the mosaic sits in the strip, centered on the grid's ordinate range
    let pile_y = (k + 2) as f64 * s / 2.0 - 0.5;
    let piled = mosaic.translated(strip_x, pile_y);

    let present: Vec<(usize, usize)> = (0..k)
        .flat_map(|p| (0..k).map(move |o| (p, o)))
        .filter(|&(p, o)| pt.joint[p][o] > 0.0)
        .collect();

    // squares packed left to right from the strip's left edge
    let mut packed = vec![vec![None; k]; k];
    let mut widest: f64 = 1.0;
    for (p, row) in packed.iter_mut().enumerate() {
        let mut x = strip_x;
        for (o, slot) in row.iter_mut().enumerate() {
            let sq = layout.cells[p][o];
            if pt.joint[p][o] > 0.0 {
                *slot = Some(sq.translated(x - sq.x_min, 0.0));
                x += sq.width();
            }
        }
        widest = widest.max(x - strip_x);
    }
    // bands reshaped in place, centered on their row
    let banded = |p: usize, o: usize| {
        let seg = mosaic.segments[p][o];
        let band = mosaic.bands[p];
        seg.translated(strip_x, layout.row_center(p) - band.center(Axis::Y))
    };

    let fluct = fluctuation_frame(&pt, &layout, palette);
    let strip = Rect::span(strip_x, strip_x + widest, 0.0, (k + 1) as f64 * s);
    let working = fit_viewport(&layout.bounds().union(&strip));
    let stroke = stroke_width_for(&fluct.viewport);
    let context = fluctuation_context(&pt, &layout, palette, stroke);
    let scene = |cells: Vec<Cell>, motion, guides| CellsScene {
        pt: pt.clone(),
        context: context.clone(),
        cells,
        motion,
        guides,
        palette: palette.clone(),
        stroke,
        viewport: working,
    };

    let to_strip: Vec<Cell> = present
        .iter()
        .map(|&(p, o)| Cell {
            p,
            o,
            from: layout.cells[p][o],
            to: packed[p][o].expect("present cell"),
        })
        .collect();
    let lanes = hull(to_strip.iter().flat_map(|c| [c.from, c.to]));
    let reshape_cells: Vec<Cell> = present
        .iter()
        .map(|&(p, o)| Cell {
            p,
            o,
            from: packed[p][o].expect("present cell"),
            to: banded(p, o),
        })
        .collect();
    let specs = reshape_cells
        .iter()
        .map(|c| Ok(ReshapeSpec::with_piston_axis(c.from, c.to, Axis::X)?.with_staging(Staging::Direct)))
        .collect::<Result<Vec<_>>>()?;
    let band_guides: Vec<Rect> = (0..k)
        .filter(|&p| pt.marginal_pred[p] > 0.0)
        .map(|p| {
            let band = mosaic.bands[p];
            band.translated(strip_x, layout.row_center(p) - band.center(Axis::Y))
        })
        .collect();
    let pile_cells: Vec<Cell> = present
        .iter()
        .map(|&(p, o)| Cell {
            p,
            o,
            from: banded(p, o),
            to: piled.segments[p][o],
        })
        .collect();
    let column = hull(pile_cells.iter().flat_map(|c| [c.from, c.to]));

    let mut final_frame = mosaic_frame(&pt, &piled, palette);
    let mut prims = context.clone();
    prims.extend(final_frame.primitives);
    final_frame.primitives = prims;

    let mut stages = vec![plan_view_change(&fluct, working)?];
    if let (Some(lanes), Some(column)) = (lanes, column) {
        stages.push(Stage::new(
            StageKind::BlockApplication,
            MAIN_WEIGHT,
            scene(
                to_strip,
                Motion::Shift {
                    axis: Axis::X,
                    container: lanes,
                },
                vec![],
            ),
        )?);
        stages.push(Stage::new(
            StageKind::BlockApplication,
            MAIN_WEIGHT,
            scene(reshape_cells, Motion::Reshape(specs), band_guides),
        )?);
        stages.push(Stage::new(
            StageKind::BlockApplication,
            MAIN_WEIGHT,
            scene(
                pile_cells,
                Motion::Shift {
                    axis: Axis::Y,
                    container: column,
                },
                vec![],
            ),
        )?);
    }
    stages.push(plan_view_change(&with_viewport(&final_frame, working), final_frame.viewport)?);

    TransitionScript::new(
        "fluctuation_to_mosaic",
        stages,
        palette.clone(),
        fluct,
        final_frame,
        Conservation::PerLiquid,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::cell_liquid_id;
    use crate::geometry::rect_area;
    use crate::interp::TimeParam;
    use crate::transitions::{evaluate, verify_script};

    fn table1() -> ConfusionMatrix {
        ConfusionMatrix::new(
            vec!["None".into(), "Mild".into(), "Severe".into()],
            vec![vec![1458, 48, 78], vec![205, 102, 144], vec![85, 34, 1666]],
        )
        .unwrap()
    }

    #[test]
    fn table1_script_conserves_and_lands_on_mosaic() {
        let s = plan_fluctuation_to_mosaic(&table1(), &Palette::default()).unwrap();
        assert_eq!(s.stages().len(), 5);
        verify_script(&s, 101, 1e-9).unwrap();
        let pt = probability_table(&table1()).unwrap();
        let id = cell_liquid_id(&pt, 1, 2);
        for k in 0..=40 {
            let f = evaluate(&s, TimeParam::new(k as f64 / 40.0).unwrap());
            let a = f.liquid_areas()[&id];
            assert!((a - 144.0 / 3820.0).abs() < 1e-12 * 1.0 + 1e-9 * a);
        }
        let end = evaluate(&s, TimeParam::END);
        let none_band: Vec<Rect> = end
            .liquid_rects()
            .filter(|(id, _)| id.0.ends_with("|None"))
            .map(|(_, r)| *r)
            .collect();
        for r in &none_band {
            assert!((r.height() - 1584.0 / 3820.0).abs() < 1e-12);
        }
        let widths: Vec<f64> = none_band.iter().map(|r| r.width()).collect();
        for (w, c) in widths.iter().zip([1458.0, 48.0, 78.0]) {
            assert!((w - c / 1584.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reshape_stage_keeps_joint_areas() {
        let s = plan_fluctuation_to_mosaic(&table1(), &Palette::default()).unwrap();
        let pt = probability_table(&table1()).unwrap();
        let reshape = &s.stages()[2];
        for k in 0..=20 {
            let f = reshape.frame_at(k as f64 / 20.0);
            for (id, r) in f.liquid_rects() {
                let (p, o) = (0..3)
                    .flat_map(|p| (0..3).map(move |o| (p, o)))
                    .find(|&(p, o)| &cell_liquid_id(&pt, p, o) == id)
                    .unwrap();
                assert!((rect_area(r) - pt.joint[p][o]).abs() <= 1e-9 * pt.joint[p][o]);
            }
        }
    }

    #[test]
    fn single_class() {
        let cm = ConfusionMatrix::new(vec!["only".into()], vec![vec![7]]).unwrap();
        let s = plan_fluctuation_to_mosaic(&cm, &Palette::default()).unwrap();
        verify_script(&s, 51, 1e-9).unwrap();
        let end = evaluate(&s, TimeParam::END);
        let rects: Vec<_> = end.liquid_rects().collect();
        assert_eq!(rects.len(), 1);
        assert!((rect_area(rects[0].1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_row_and_small_grid() {
        let cm = ConfusionMatrix::new(vec!["a".into(), "b".into()], vec![vec![3, 1], vec![0, 0]]).unwrap();
        let s = plan_fluctuation_to_mosaic(&cm, &Palette::default()).unwrap();
        verify_script(&s, 51, 1e-9).unwrap();
        assert!(plan_fluctuation_to_mosaic_with(&cm, 0.5, &Palette::default()).is_err());
    }
}
