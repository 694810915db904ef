//! Keyframe document: a versioned JSON layout written one frame per line
//! so that it can be streamed.
//!
//! Coordinates stay in chart space; each frame carries its viewport so a
//! client can apply the same uniform pixel mapping as the SVG output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Frame, ScenePrimitive};

use super::{format_number, RenderConfig};

pub const KEYFRAMES_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyframesDoc {
    pub version: u32,
    pub fps: u32,
    pub width: u32,
    pub height: u32,
    pub frames: Vec<KeyframeFrame>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyframeFrame {
    pub primitives: Vec<KeyPrimitive>,
    pub viewport: Viewport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KeyPrimitive {
    Rect {
        x: f64,
        y: f64,
        w: f64,
        h: f64,
        fill: String,
        stroke: String,
        stroke_width: f64,
    },
    Line {
        x1: f64,
        y1: f64,
        x2: f64,
        y2: f64,
        stroke: String,
        stroke_width: f64,
    },
    Text {
        x: f64,
        y: f64,
        text: String,
        fill: String,
    },
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn write_frame(out: &mut String, frame: &Frame, p: usize) {
    let n = |v: f64| format_number(v, p);
    out.push_str("{\"primitives\":[");
    for (i, prim) in frame.primitives.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = match prim {
            ScenePrimitive::Rect {
                rect,
                fill,
                stroke,
                stroke_width,
                ..
            } => write!(
                out,
                "{{\"kind\":\"rect\",\"x\":{},\"y\":{},\"w\":{},\"h\":{},\"fill\":\"{}\",\"stroke\":\"{}\",\"stroke_width\":{}}}",
                n(rect.x_min),
                n(rect.y_min),
                n(rect.width()),
                n(rect.height()),
                fill.to_hex(),
                stroke.to_hex(),
                n(*stroke_width)
            ),
            ScenePrimitive::Line {
                from,
                to,
                stroke,
                stroke_width,
            } => write!(
                out,
                "{{\"kind\":\"line\",\"x1\":{},\"y1\":{},\"x2\":{},\"y2\":{},\"stroke\":\"{}\",\"stroke_width\":{}}}",
                n(from.0),
                n(from.1),
                n(to.0),
                n(to.1),
                stroke.to_hex(),
                n(*stroke_width)
            ),
            ScenePrimitive::Label { anchor, text, fill } => write!(
                out,
                "{{\"kind\":\"text\",\"x\":{},\"y\":{},\"text\":{},\"fill\":\"{}\"}}",
                n(anchor.0),
                n(anchor.1),
                json_string(text),
                fill.to_hex()
            ),
        };
    }
    let v = &frame.viewport;
    let _ = write!(
        out,
        "],\"viewport\":{{\"x\":{},\"y\":{},\"w\":{},\"h\":{}}}}}",
        n(v.x_min),
        n(v.y_min),
        n(v.width()),
        n(v.height())
    );
}

/// Serializes frames: a header line, one frame per line, and a closing
/// line, all LF-terminated.
pub fn emit_keyframes_doc(frames: &[Frame], cfg: &RenderConfig) -> Vec<u8> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{{\"version\":{KEYFRAMES_VERSION},\"fps\":{},\"width\":{},\"height\":{},\"frames\":[",
        cfg.fps, cfg.width, cfg.height
    );
    for (i, frame) in frames.iter().enumerate() {
        write_frame(&mut out, frame, cfg.precision);
        if i + 1 < frames.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]}\n");
    out.into_bytes()
}

pub fn parse_keyframes_doc(bytes: &[u8]) -> Result<KeyframesDoc> {
    let doc: KeyframesDoc =
        serde_json::from_slice(bytes).map_err(|e| Error::InvalidDocument(e.to_string()))?;
    if doc.version != KEYFRAMES_VERSION {
        return Err(Error::InvalidDocument(format!("unsupported version {}", doc.version)));
    }
    Ok(doc)
}
