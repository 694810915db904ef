use std::fmt::Write as _;

use crate::geometry::{Color, Frame, Rect, ScenePrimitive};

use super::{format_number, RenderConfig};

/// Uniform chart-to-pixel mapping: the viewport is scaled to fit the output
/// box, centered, with y pointing down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelMap {
    pub scale: f64,
    pub offset_x: f64,
    pub offset_y: f64,
    viewport: Rect,
}

impl PixelMap {
    pub fn new(viewport: &Rect, width: u32, height: u32) -> PixelMap {
        let (w, h) = (f64::from(width), f64::from(height));
        let scale = (w / viewport.width()).min(h / viewport.height());
        PixelMap {
            scale,
            offset_x: (w - viewport.width() * scale) / 2.0,
            offset_y: (h - viewport.height() * scale) / 2.0,
            viewport: *viewport,
        }
    }

    pub fn x(&self, x: f64) -> f64 {
        self.offset_x + (x - self.viewport.x_min) * self.scale
    }

    pub fn y(&self, y: f64) -> f64 {
        self.offset_y + (self.viewport.y_max - y) * self.scale
    }

    /// Pixel rectangle as `(x, y, w, h)` with `(x, y)` the top-left corner.
    pub fn rect(&self, r: &Rect) -> (f64, f64, f64, f64) {
        (
            self.x(r.x_min),
            self.y(r.y_max),
            r.width() * self.scale,
            r.height() * self.scale,
        )
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn stroke_attrs(stroke: &Color, width: f64, map: &PixelMap, p: usize) -> String {
    if width > 0.0 && stroke.a > 0.0 {
        format!(
            " stroke=\"{}\" stroke-width=\"{}\"",
            stroke.to_hex(),
            format_number(width * map.scale, p)
        )
    } else {
        String::new()
    }
}

fn write_primitives(out: &mut String, frame: &Frame, cfg: &RenderConfig) {
    let map = PixelMap::new(&frame.viewport, cfg.width, cfg.height);
    let p = cfg.precision;
    let n = |v: f64| format_number(v, p);
    let font = f64::from(cfg.width.min(cfg.height)) * 0.035;
    for prim in &frame.primitives {
        match prim {
            ScenePrimitive::Rect {
                rect,
                fill,
                stroke,
                stroke_width,
                ..
            } => {
                let (x, y, w, h) = map.rect(rect);
                let fill = if fill.a > 0.0 { fill.to_hex() } else { "none".to_string() };
                let _ = writeln!(
                    out,
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"{}/>",
                    n(x),
                    n(y),
                    n(w),
                    n(h),
                    fill,
                    stroke_attrs(stroke, *stroke_width, &map, p)
                );
            }
            ScenePrimitive::Line {
                from,
                to,
                stroke,
                stroke_width,
            } => {
                let _ = writeln!(
                    out,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"{}/>",
                    n(map.x(from.0)),
                    n(map.y(from.1)),
                    n(map.x(to.0)),
                    n(map.y(to.1)),
                    stroke_attrs(stroke, *stroke_width, &map, p)
                );
            }
            ScenePrimitive::Label { anchor, text, fill } => {
                let _ = writeln!(
                    out,
                    "<text x=\"{}\" y=\"{}\" fill=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\" dominant-baseline=\"middle\">{}</text>",
                    n(map.x(anchor.0)),
                    n(map.y(anchor.1)),
                    fill.to_hex(),
                    n(font),
                    escape(text)
                );
            }
        }
    }
}

fn open_document(out: &mut String, cfg: &RenderConfig) {
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = cfg.width,
        h = cfg.height
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
        cfg.width,
        cfg.height,
        cfg.background.to_hex()
    );
}

/// One frame as a standalone SVG document.
pub fn emit_svg(frame: &Frame, cfg: &RenderConfig) -> Vec<u8> {
    let mut out = String::new();
    open_document(&mut out, cfg);
    write_primitives(&mut out, frame, cfg);
    out.push_str("</svg>\n");
    out.into_bytes()
}

/// All frames in one SVG; each frame group becomes visible for one frame
/// period and the last one stays.
pub fn emit_animated_svg(frames: &[Frame], cfg: &RenderConfig) -> Vec<u8> {
    let mut out = String::new();
    open_document(&mut out, cfg);
    let period = 1.0 / f64::from(cfg.fps);
    let p = cfg.precision.max(6);
    for (i, frame) in frames.iter().enumerate() {
        out.push_str("<g visibility=\"hidden\">\n");
        let begin = format_number(i as f64 * period, p);
        if i + 1 == frames.len() {
            let _ = writeln!(
                out,
                "<set attributeName=\"visibility\" to=\"visible\" begin=\"{begin}s\" fill=\"freeze\"/>"
            );
        } else {
            let _ = writeln!(
                out,
                "<set attributeName=\"visibility\" to=\"visible\" begin=\"{begin}s\" dur=\"{}s\"/>",
                format_number(period, p)
            );
        }
        write_primitives(&mut out, frame, cfg);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RenderConfig {
        RenderConfig::new(10, 1.0, 200, 100).unwrap()
    }

    fn vp() -> Rect {
        Rect::new(0.0, 4.0, 0.0, 4.0).unwrap()
    }

    #[test]
    fn empty_frame_is_background_only() {
        let svg = String::from_utf8(emit_svg(&Frame::new(vec![], vp()).unwrap(), &cfg())).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<rect").count(), 1);
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn one_filled_rect() {
        let f = Frame::new(
            vec![ScenePrimitive::filled_rect(
                Rect::new(0.0, 2.0, 0.0, 2.0).unwrap(),
                Color::rgba(1.0, 0.0, 0.0, 1.0),
            )],
            vp(),
        )
        .unwrap();
        let svg = String::from_utf8(emit_svg(&f, &cfg())).unwrap();
        // 4x4 viewport letterboxed into 200x100: scale 25, x offset 50
        assert!(svg.contains("<rect x=\"50\" y=\"50\" width=\"50\" height=\"50\" fill=\"#FF0000FF\"/>"));
        assert_eq!(emit_svg(&f, &cfg()), emit_svg(&f, &cfg()));
    }

    #[test]
    fn labels_are_escaped() {
        let f = Frame::new(
            vec![ScenePrimitive::label((1.0, 1.0), "a<b & c", Color::rgb(0.0, 0.0, 0.0))],
            vp(),
        )
        .unwrap();
        let svg = String::from_utf8(emit_svg(&f, &cfg())).unwrap();
        assert!(svg.contains(">a&lt;b &amp; c</text>"));
    }

    #[test]
    fn pixel_map_is_uniform() {
        let m = PixelMap::new(&Rect::new(-1.0, 1.0, 0.0, 4.0).unwrap(), 300, 300);
        assert_eq!(m.scale, 75.0);
        assert_eq!(m.x(-1.0), 75.0);
        assert_eq!(m.y(4.0), 0.0);
        assert_eq!(m.y(0.0), 300.0);
    }

    #[test]
    fn animated_steps_through_frames() {
        let a = Frame::new(vec![], vp()).unwrap();
        let svg = String::from_utf8(emit_animated_svg(&[a.clone(), a.clone(), a], &cfg())).unwrap();
        assert_eq!(svg.matches("<g visibility=\"hidden\">").count(), 3);
        assert!(svg.contains("begin=\"0.1s\" dur=\"0.1s\""));
        assert!(svg.contains("begin=\"0.2s\" fill=\"freeze\""));
    }
}
