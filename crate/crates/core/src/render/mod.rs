//! Sampling scripts into frames and serializing frames.

mod keyframes;
mod number;
mod svg;

pub use keyframes::{emit_keyframes_doc, parse_keyframes_doc, KeyPrimitive, KeyframeFrame, KeyframesDoc, Viewport};
pub use number::format_number;
pub use svg::{emit_animated_svg, emit_svg, PixelMap};

use crate::error::{Error, Result};
use crate::geometry::{Color, Frame};
use crate::interp::TimeParam;
use crate::transitions::{evaluate, TransitionScript};

pub const DEFAULT_PRECISION: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderConfig {
    pub fps: u32,
    /// Seconds.
    pub duration: f64,
    pub width: u32,
    pub height: u32,
    /// Decimal places of serialized coordinates.
    pub precision: usize,
    pub background: Color,
}

impl RenderConfig {
    pub fn new(fps: u32, duration: f64, width: u32, height: u32) -> Result<RenderConfig> {
        let cfg = RenderConfig {
            fps,
            duration,
            width,
            height,
            precision: DEFAULT_PRECISION,
            background: Color::rgb(1.0, 1.0, 1.0),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.fps == 0 || !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "fps {} and duration {} must be positive",
                self.fps, self.duration
            )));
        }
        if f64::from(self.fps) * self.duration < 2.0 - 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "fps x duration = {} leaves fewer than two frames",
                f64::from(self.fps) * self.duration
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidConfig("output size must be positive".into()));
        }
        if self.precision > 15 {
            return Err(Error::InvalidConfig(format!("precision {} above 15", self.precision)));
        }
        Ok(())
    }

    /// Number of sampled frames, `round(fps·duration) + 1`.
    pub fn frame_count(&self) -> usize {
        (f64::from(self.fps) * self.duration).round() as usize + 1
    }
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig::new(30, 2.0, 640, 480).expect("valid defaults")
    }
}

/// Frames at `t = i/(N−1)` for `i = 0..N`.
pub fn sample_frames(script: &TransitionScript, cfg: &RenderConfig) -> Vec<Frame> {
    let n = cfg.frame_count();
    (0..n)
        .map(|i| {
            let t = if i + 1 == n { 1.0 } else { i as f64 / (n - 1) as f64 };
            evaluate(script, TimeParam::clamped(t))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;
    use crate::palette::Palette;
    use crate::transitions::plan_reshape;

    #[test]
    fn frame_counts() {
        assert_eq!(RenderConfig::new(10, 1.0, 100, 100).unwrap().frame_count(), 11);
        assert_eq!(RenderConfig::new(1, 2.0, 100, 100).unwrap().frame_count(), 3);
        assert!(RenderConfig::new(1, 1.0, 100, 100).is_err());
        assert!(RenderConfig::new(0, 1.0, 100, 100).is_err());
        assert!(RenderConfig::new(10, 1.0, 0, 100).is_err());
    }

    #[test]
    fn sampled_endpoints_match_script() {
        let s = plan_reshape(
            Rect::new(0.0, 1.0, 0.0, 4.0).unwrap(),
            Rect::new(0.0, 4.0, 0.0, 1.0).unwrap(),
            &Palette::default(),
        )
        .unwrap();
        let cfg = RenderConfig::new(10, 1.0, 200, 100).unwrap();
        let frames = sample_frames(&s, &cfg);
        assert_eq!(frames.len(), 11);
        assert_eq!(frames[0].liquid_rects().next().unwrap().1, &Rect::new(0.0, 1.0, 0.0, 4.0).unwrap());
        assert_eq!(frames[10].liquid_rects().next().unwrap().1, &Rect::new(0.0, 4.0, 0.0, 1.0).unwrap());
        let mid = frames[5].liquid_rects().next().unwrap().1;
        assert!(mid.max_coordinate_distance(&Rect::new(0.0, 2.5, 0.0, 1.6).unwrap()) < 1e-12);
    }
}
