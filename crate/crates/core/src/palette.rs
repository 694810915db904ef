//! Named color slots used by blocks and planners.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Color;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Palette {
    pub background: Color,
    /// Default liquid color.
    pub gray: Color,
    /// Bars gaining data.
    pub more: Color,
    /// Bars losing data.
    pub less: Color,
    /// Selected bins in a proportion tip.
    pub selection: Color,
    /// Selected level in a vertical reorder.
    pub segment_selection: Color,
    pub source_contour: Color,
    pub target_contour: Color,
    pub container: Color,
    pub target_line: Color,
    pub reminder_line: Color,
    pub cylinder: Color,
    pub piston: Color,
    pub free_surface: Color,
    pub text: Color,
    pub reference: Color,
    /// Per-class colors for confusion matrices, cycled when exhausted.
    pub classes: Vec<Color>,
    /// Per-level colors for stacked bars without explicit colors.
    pub levels: Vec<Color>,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            background: Color::rgb(1.0, 1.0, 1.0),
            gray: Color::rgb(0.62, 0.62, 0.62),
            more: Color::rgb(0.86, 0.1, 0.1),
            less: Color::rgb(0.12, 0.3, 0.86),
            selection: Color::rgb(0.96, 0.8, 0.1),
            segment_selection: Color::rgb(0.85, 0.1, 0.75),
            source_contour: Color::rgb(0.8, 0.8, 0.8),
            target_contour: Color::rgb(0.3, 0.3, 0.3),
            container: Color::rgb(0.35, 0.35, 0.35),
            target_line: Color::rgb(0.1, 0.1, 0.1),
            reminder_line: Color::rgb(0.5, 0.5, 0.5),
            cylinder: Color::rgb(0.0, 0.0, 0.0),
            piston: Color::rgb(0.86, 0.1, 0.1),
            free_surface: Color::rgb(0.1, 0.65, 0.2),
            text: Color::rgb(0.1, 0.1, 0.1),
            reference: Color::rgb(0.75, 0.75, 0.75),
            classes: vec![
                Color::rgb(0.96, 0.8, 0.1),
                Color::rgb(0.2, 0.45, 0.85),
                Color::rgb(0.85, 0.2, 0.2),
                Color::rgb(0.25, 0.65, 0.3),
                Color::rgb(0.55, 0.3, 0.7),
                Color::rgb(0.95, 0.55, 0.15),
            ],
            levels: vec![
                Color::rgb(0.36, 0.6, 0.8),
                Color::rgb(0.95, 0.6, 0.25),
                Color::rgb(0.45, 0.72, 0.4),
                Color::rgb(0.6, 0.45, 0.7),
                Color::rgb(0.55, 0.55, 0.55),
                Color::rgb(0.8, 0.75, 0.3),
            ],
        }
    }
}

impl Palette {
    pub fn class_color(&self, i: usize) -> Color {
        if self.classes.is_empty() {
            self.gray
        } else {
            self.classes[i % self.classes.len()]
        }
    }

    pub fn level_color(&self, i: usize) -> Color {
        if self.levels.is_empty() {
            self.gray
        } else {
            self.levels[i % self.levels.len()]
        }
    }

    /// Overrides one named slot with a `#RRGGBB[AA]` color.
    pub fn set(&mut self, name: &str, hex: &str) -> Result<()> {
        let c = Color::from_hex(hex)?;
        let slot = match name {
            "background" => &mut self.background,
            "gray" => &mut self.gray,
            "more" => &mut self.more,
            "less" => &mut self.less,
            "selection" => &mut self.selection,
            "segment_selection" => &mut self.segment_selection,
            "source_contour" => &mut self.source_contour,
            "target_contour" => &mut self.target_contour,
            "container" => &mut self.container,
            "target_line" => &mut self.target_line,
            "reminder_line" => &mut self.reminder_line,
            "cylinder" => &mut self.cylinder,
            "piston" => &mut self.piston,
            "free_surface" => &mut self.free_surface,
            "text" => &mut self.text,
            "reference" => &mut self.reference,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown palette slot {other:?}"
                )))
            }
        };
        *slot = c;
        Ok(())
    }
}
