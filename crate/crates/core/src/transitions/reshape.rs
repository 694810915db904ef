use crate::blocks::{classify_reshape, reshape_at, shift_at, ReshapePhase, ReshapeSpec};
use crate::charts::{fit_viewport, stroke_width_for};
use crate::error::Result;
use crate::geometry::{Axis, Frame, Rect, ScenePrimitive};
use crate::interp::EasedTime;
use crate::palette::Palette;

use super::{Conservation, Stage, StageKind, StageScene, TransitionScript, MAIN_WEIGHT};

const LIQUID: &str = "liquid";

struct ReshapeScene {
    spec: ReshapeSpec,
    palette: Palette,
    stroke: f64,
    viewport: Rect,
}

impl StageScene for ReshapeScene {
    fn frame(&self, u: EasedTime) -> Frame {
        let (rect, deco) = reshape_at(&self.spec, u).expect("reshape validated when planned");
        let mut primitives = vec![ScenePrimitive::liquid(rect, self.palette.gray, LIQUID)];
        primitives.extend(deco.primitives(&self.palette, self.stroke));
        Frame {
            primitives,
            viewport: self.viewport,
            tint: 0.0,
        }
    }
}

struct TranslateScene {
    from: Rect,
    axis: Axis,
    offset: f64,
    color: crate::geometry::Color,
    viewport: Rect,
}

impl StageScene for TranslateScene {
    fn frame(&self, u: EasedTime) -> Frame {
        let container = self.from.union(&self.from.translated_along(self.axis, self.offset));
        let rect = shift_at(&self.from, &container, self.axis, self.offset, u)
            .expect("path lies inside its own hull");
        Frame {
            primitives: vec![ScenePrimitive::liquid(rect, self.color, LIQUID)],
            viewport: self.viewport,
            tint: 0.0,
        }
    }
}

/// Reshapes one gray rectangle into another of equal area, one stage per
/// reshape phase.
pub fn plan_reshape(init: Rect, target: Rect, palette: &Palette) -> Result<TransitionScript> {
    let spec = classify_reshape(&init, &target)?;
    let phases = spec.phases();
    let mut bounds = init.union(&target);
    for phase in &phases {
        if let ReshapePhase::Reshape { from, to } = phase {
            bounds = bounds.union(from).union(to);
        }
    }
    let viewport = fit_viewport(&bounds);
    let stroke = stroke_width_for(&viewport);

    let mut stages = Vec::with_capacity(phases.len());
    for phase in phases {
        let stage = match phase {
            ReshapePhase::Translate { from, axis, offset } => Stage::new(
                StageKind::BlockApplication,
                MAIN_WEIGHT,
                TranslateScene {
                    from,
                    axis,
                    offset,
                    color: palette.gray,
                    viewport,
                },
            )?,
            ReshapePhase::Reshape { .. } => Stage::new(
                StageKind::BlockApplication,
                MAIN_WEIGHT,
                ReshapeScene {
                    spec,
                    palette: palette.clone(),
                    stroke,
                    viewport,
                },
            )?,
        };
        stages.push(stage);
    }

    let still = |r: Rect| Frame {
        primitives: vec![ScenePrimitive::liquid(r, palette.gray, LIQUID)],
        viewport,
        tint: 0.0,
    };
    TransitionScript::new(
        format!("reshape {}", spec.case()),
        stages,
        palette.clone(),
        still(init),
        still(target),
        Conservation::PerLiquid,
    )
}
