//! Area-preserving animated transitions for statistical charts.
//!
//! Data are liquids: colored areas that keep their size while containers
//! (bars, tiles, bands) change shape around them. Building blocks in
//! [`blocks`] interpolate single rectangles or groups of them; planners in
//! [`transitions`] compose blocks into staged scripts for histograms,
//! stacked bars and confusion matrices; [`render`] samples scripts into
//! SVG or keyframe documents.

pub mod blocks;
pub mod charts;
pub mod error;
pub mod geometry;
pub mod interp;
pub mod palette;
pub mod render;
pub mod transitions;

pub use error::{Error, Result};
pub use geometry::{Axis, Color, Frame, LiquidId, Rect, ScenePrimitive};
pub use interp::{ease, lerp, EasedTime, TimeParam};
pub use palette::Palette;
pub use transitions::{evaluate, TransitionScript};
