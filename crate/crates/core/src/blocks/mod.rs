//! The aquanim building blocks.
//!
//! Only [`fill_at`] changes a liquid's area; every other block keeps each
//! liquid's area invariant. Decorations are returned as role-tagged geometry
//! and colored later from a [`Palette`], so the hydraulic hints follow
//! whatever palette the chart uses.

mod fill;
mod reshape;
mod segments;
mod shift;
mod transfer;

pub use fill::{fill_at, FillSpec};
pub use reshape::{
    classify_reshape, reshape_at, ReshapeCase, ReshapePhase, ReshapeSpec, Staging,
    AREA_TOLERANCE,
};
pub use segments::{segments_shift_at, Segment, SegmentStack};
pub use shift::shift_at;
pub use transfer::{transfer_at, TransferContainer, TransferSpec};

use crate::geometry::{Rect, ScenePrimitive};
use crate::palette::Palette;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecorationRole {
    Container,
    Target,
    Reminder,
    Cylinder,
    Piston,
    FreeSurface,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecorationShape {
    Outline(Rect),
    Segment((f64, f64), (f64, f64)),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecorationItem {
    pub role: DecorationRole,
    pub shape: DecorationShape,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Decoration {
    pub items: Vec<DecorationItem>,
}

impl Decoration {
    pub(crate) fn push(&mut self, role: DecorationRole, shape: DecorationShape) {
        self.items.push(DecorationItem { role, shape });
    }

    pub fn has_role(&self, role: DecorationRole) -> bool {
        self.items.iter().any(|i| i.role == role)
    }

    pub fn primitives(&self, palette: &Palette, stroke_width: f64) -> Vec<ScenePrimitive> {
        self.items
            .iter()
            .map(|item| {
                let color = match item.role {
                    DecorationRole::Container => palette.container,
                    DecorationRole::Target => palette.target_line,
                    DecorationRole::Reminder => palette.reminder_line,
                    DecorationRole::Cylinder => palette.cylinder,
                    DecorationRole::Piston => palette.piston,
                    DecorationRole::FreeSurface => palette.free_surface,
                };
                match item.shape {
                    DecorationShape::Outline(r) => {
                        ScenePrimitive::stroked_rect(r, color, stroke_width)
                    }
                    DecorationShape::Segment(a, b) => {
                        ScenePrimitive::line(a, b, color, stroke_width)
                    }
                }
            })
            .collect()
    }
}

/// Segment perpendicular to `axis` at `position`, spanning `across` on the
/// other axis.
pub(crate) fn cross_segment(
    axis: crate::geometry::Axis,
    position: f64,
    across: (f64, f64),
) -> DecorationShape {
    use crate::geometry::Axis;
    match axis {
        Axis::X => DecorationShape::Segment((position, across.0), (position, across.1)),
        Axis::Y => DecorationShape::Segment((across.0, position), (across.1, position)),
    }
}
