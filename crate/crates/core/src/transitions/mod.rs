//! Staged transition scripts and their planners.
//!
//! A script is an ordered list of stages. Global time is split among stages
//! in proportion to their weights; each stage eases its own local time and
//! produces a complete frame.

mod confusion;
mod histogram;
mod reshape;
mod stacked;
mod verify;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{rect_area, Frame, Rect, ScenePrimitive};
use crate::interp::{ease, lerp, EasedTime, TimeParam};
use crate::palette::Palette;

pub use confusion::{plan_fluctuation_to_mosaic, plan_fluctuation_to_mosaic_with, DEFAULT_GRID_CELL};
pub use histogram::{
    diffusive_iterates, plan_histogram_data_change, plan_histogram_rebin,
    plan_histogram_rebin_diffusive, plan_proportion_tip, smooth_step, tint_fraction,
    DEFAULT_DIFFUSION, TINT_DEADBAND, TINT_MAX,
};
pub use reshape::plan_reshape;
pub use stacked::{plan_stacked_horizontal_reorder, plan_stacked_vertical_reorder};
pub use verify::{compare_frames, verify_script, VerifyReport, Violation, OCCLUSION_TOLERANCE};

/// Default weight of pan and zoom stages.
pub const VIEW_WEIGHT: f64 = 1.0;
/// Default weight of the main liquid stages.
pub const MAIN_WEIGHT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageKind {
    ViewChange,
    FillEmptyTinted,
    RescaleTinted,
    BlockApplication,
    SegmentTransferSequence,
    LayoutGap,
    Hold,
}

/// Scene of one stage as a function of eased local time.
///
/// Implementations validate their inputs when planned, so producing a frame
/// cannot fail.
pub trait StageScene: Send + Sync {
    fn frame(&self, u: EasedTime) -> Frame;
}

#[derive(Clone)]
pub struct Stage {
    kind: StageKind,
    weight: f64,
    scene: Arc<dyn StageScene>,
    reversed: bool,
}

impl fmt::Debug for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Stage")
            .field("kind", &self.kind)
            .field("weight", &self.weight)
            .field("reversed", &self.reversed)
            .finish()
    }
}

impl Stage {
    pub fn new(kind: StageKind, weight: f64, scene: impl StageScene + 'static) -> Result<Stage> {
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::InvalidConfig(format!("stage weight {weight} must be positive")));
        }
        Ok(Stage {
            kind,
            weight,
            scene: Arc::new(scene),
            reversed: false,
        })
    }

    pub fn kind(&self) -> StageKind {
        self.kind
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    /// The same stage played backwards.
    pub fn reversed(&self) -> Stage {
        Stage {
            reversed: !self.reversed,
            ..self.clone()
        }
    }

    /// Frame at local time `s ∈ [0, 1]` (before easing).
    pub fn frame_at(&self, s: f64) -> Frame {
        let s = s.clamp(0.0, 1.0);
        let s = if self.reversed { 1.0 - s } else { s };
        self.scene.frame(ease(TimeParam::clamped(s)))
    }

    pub fn start_frame(&self) -> Frame {
        self.frame_at(0.0)
    }

    pub fn end_frame(&self) -> Frame {
        self.frame_at(1.0)
    }
}

/// How verification checks area bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conservation {
    /// Every liquid id keeps its summed area.
    PerLiquid,
    /// Total area may leave 1 only while the tint says so.
    TintedTotal,
}

#[derive(Debug, Clone)]
pub struct TransitionScript {
    name: String,
    stages: Vec<Stage>,
    palette: Palette,
    initial: Frame,
    final_frame: Frame,
    conservation: Conservation,
}

impl TransitionScript {
    pub fn new(
        name: impl Into<String>,
        stages: Vec<Stage>,
        palette: Palette,
        initial: Frame,
        final_frame: Frame,
        conservation: Conservation,
    ) -> Result<TransitionScript> {
        if stages.is_empty() {
            return Err(Error::InvalidConfig("a script needs at least one stage".into()));
        }
        Ok(TransitionScript {
            name: name.into(),
            stages,
            palette,
            initial,
            final_frame,
            conservation,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    /// Static layout the script starts from.
    pub fn initial(&self) -> &Frame {
        &self.initial
    }

    /// Static layout the script ends on.
    pub fn final_frame(&self) -> &Frame {
        &self.final_frame
    }

    pub fn conservation(&self) -> Conservation {
        self.conservation
    }

    pub fn total_weight(&self) -> f64 {
        self.stages.iter().map(|s| s.weight).sum()
    }

    /// Stage index and local (uneased) time for global time `t`.
    ///
    /// A time on a boundary belongs to the earlier stage, at its end.
    pub fn locate(&self, t: TimeParam) -> (usize, f64) {
        let target = t.get() * self.total_weight();
        let last = self.stages.len() - 1;
        let mut start = 0.0;
        for (i, stage) in self.stages.iter().enumerate() {
            let end = start + stage.weight;
            if target <= end || i == last {
                let local = if target >= end {
                    1.0
                } else {
                    ((target - start) / stage.weight).clamp(0.0, 1.0)
                };
                return (i, local);
            }
            start = end;
        }
        unreachable!("scripts have at least one stage")
    }

    /// Scales the first non-empty liquid rect of the first non-view stage by
    /// `factor` along y. Only meant to exercise the verifier.
    pub fn corrupted(mut self, factor: f64) -> TransitionScript {
        if let Some(stage) = self
            .stages
            .iter_mut()
            .find(|s| s.kind != StageKind::ViewChange)
        {
            stage.scene = Arc::new(CorruptScene {
                inner: stage.scene.clone(),
                factor,
            });
        }
        self
    }
}

/// Frame of `script` at global time `t`.
pub fn evaluate(script: &TransitionScript, t: TimeParam) -> Frame {
    let (i, local) = script.locate(t);
    script.stages[i].frame_at(local)
}

struct CorruptScene {
    inner: Arc<dyn StageScene>,
    factor: f64,
}

impl StageScene for CorruptScene {
    fn frame(&self, u: EasedTime) -> Frame {
        let mut frame = self.inner.frame(u);
        for p in &mut frame.primitives {
            if let ScenePrimitive::Rect {
                rect,
                liquid: Some(_),
                ..
            } = p
            {
                if rect_area(rect) > 0.0 {
                    rect.y_max = rect.y_min + self.factor * rect.height();
                    break;
                }
            }
        }
        frame
    }
}

/// Fixed scene seen through an interpolated viewport.
struct ViewScene {
    primitives: Vec<ScenePrimitive>,
    tint: f64,
    from: Rect,
    to: Rect,
}

impl StageScene for ViewScene {
    fn frame(&self, u: EasedTime) -> Frame {
        let (a, b) = (&self.from, &self.to);
        Frame {
            primitives: self.primitives.clone(),
            viewport: Rect::span(
                lerp(a.x_min, b.x_min, u),
                lerp(a.x_max, b.x_max, u),
                lerp(a.y_min, b.y_min, u),
                lerp(a.y_max, b.y_max, u),
            ),
            tint: self.tint,
        }
    }
}

fn check_viewport(v: &Rect) -> Result<()> {
    Rect::new(v.x_min, v.x_max, v.y_min, v.y_max)?;
    if !(v.width() > 0.0 && v.height() > 0.0) {
        return Err(Error::InvalidRect(format!("viewport {v} must have positive extent")));
    }
    Ok(())
}

/// Pan and zoom from `scene`'s viewport to `to`; the scene itself stays put.
pub fn plan_view_change(scene: &Frame, to: Rect) -> Result<Stage> {
    check_viewport(&scene.viewport)?;
    check_viewport(&to)?;
    Stage::new(
        StageKind::ViewChange,
        VIEW_WEIGHT,
        ViewScene {
            primitives: scene.primitives.clone(),
            tint: scene.tint,
            from: scene.viewport,
            to,
        },
    )
}

/// Constant frame, used for pauses.
struct HoldScene(Frame);

impl StageScene for HoldScene {
    fn frame(&self, _u: EasedTime) -> Frame {
        self.0.clone()
    }
}

pub fn plan_hold(frame: &Frame, weight: f64) -> Result<Stage> {
    Stage::new(StageKind::Hold, weight, HoldScene(frame.clone()))
}

/// Same frame shown through another viewport.
pub(crate) fn with_viewport(frame: &Frame, viewport: Rect) -> Frame {
    Frame {
        viewport,
        ..frame.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Color;

    fn frame(vp: Rect) -> Frame {
        Frame::new(
            vec![ScenePrimitive::liquid(
                Rect::new(0.0, 1.0, 0.0, 1.0).unwrap(),
                Color::rgb(0.5, 0.5, 0.5),
                "a",
            )],
            vp,
        )
        .unwrap()
    }

    fn script(stages: Vec<Stage>) -> TransitionScript {
        let f = frame(Rect::new(0.0, 2.0, 0.0, 2.0).unwrap());
        TransitionScript::new("t", stages, Palette::default(), f.clone(), f, Conservation::PerLiquid)
            .unwrap()
    }

    #[test]
    fn zoom_out_midpoint() {
        let vp = Rect::new(0.0, 2.0, 0.0, 2.0).unwrap();
        let stage = plan_view_change(&frame(vp), Rect::new(-1.0, 3.0, -1.0, 3.0).unwrap()).unwrap();
        let mid = stage.frame_at(0.5);
        assert_eq!(mid.viewport.width(), 3.0);
        assert_eq!(mid.viewport.height(), 3.0);
        assert_eq!(mid.primitives, frame(vp).primitives);
    }

    #[test]
    fn pan_midpoint() {
        let vp = Rect::new(0.0, 2.0, 0.0, 2.0).unwrap();
        let stage = plan_view_change(&frame(vp), vp.translated(4.0, 0.0)).unwrap();
        assert_eq!(stage.frame_at(0.5).viewport, vp.translated(2.0, 0.0));
    }

    #[test]
    fn identical_viewports_are_static() {
        let vp = Rect::new(0.0, 2.0, 0.0, 2.0).unwrap();
        let stage = plan_view_change(&frame(vp), vp).unwrap();
        for s in [0.0, 0.3, 0.7, 1.0] {
            assert_eq!(stage.frame_at(s), frame(vp));
        }
    }

    #[test]
    fn rejects_flat_viewport() {
        let vp = Rect::new(0.0, 2.0, 0.0, 2.0).unwrap();
        assert!(plan_view_change(&frame(vp), Rect::new(0.0, 0.0, 0.0, 1.0).unwrap()).is_err());
        assert!(Stage::new(StageKind::Hold, 0.0, HoldScene(frame(vp))).is_err());
    }

    #[test]
    fn time_maps_to_stages_by_weight() {
        let vp = Rect::new(0.0, 2.0, 0.0, 2.0).unwrap();
        let a = plan_view_change(&frame(vp), vp.translated(1.0, 0.0)).unwrap();
        let b = plan_hold(&frame(vp), 3.0).unwrap();
        let s = script(vec![a, b]);
        assert_eq!(s.locate(TimeParam::START), (0, 0.0));
        assert_eq!(s.locate(TimeParam::new(0.25).unwrap()), (0, 1.0));
        assert_eq!(s.locate(TimeParam::new(0.625).unwrap()), (1, 0.5));
        assert_eq!(s.locate(TimeParam::END), (1, 1.0));
    }

    #[test]
    fn reversed_stage_plays_backwards() {
        let vp = Rect::new(0.0, 2.0, 0.0, 2.0).unwrap();
        let a = plan_view_change(&frame(vp), vp.translated(1.0, 0.0)).unwrap();
        let r = a.reversed();
        assert_eq!(r.start_frame(), a.end_frame());
        assert_eq!(r.end_frame(), a.start_frame());
        assert!(r.reversed().frame_at(0.3) == a.frame_at(0.3));
    }

    #[test]
    fn empty_script_rejected() {
        let f = frame(Rect::new(0.0, 2.0, 0.0, 2.0).unwrap());
        assert!(TransitionScript::new("t", vec![], Palette::default(), f.clone(), f, Conservation::PerLiquid)
            .is_err());
    }
}
