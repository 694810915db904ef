//! Axis-parallel rectangles, colors and the drawable frame vocabulary.
//!
//! Coordinates live in chart space with y growing upward, so liquid levels
//! read as heights. Renderers flip the y axis when mapping to pixels.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used when merging breakpoints of two binnings.
pub const EDGE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    /// Validated constructor: bounds must be finite and ordered.
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Rect> {
        let r = Rect {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        if ![x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidRect(format!("non-finite coordinate in {r}")));
        }
        if x_min > x_max || y_min > y_max {
            return Err(Error::InvalidRect(format!("unordered bounds in {r}")));
        }
        Ok(r)
    }

    /// Internal constructor for bounds already known to be ordered.
    pub(crate) fn span(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Rect {
        debug_assert!(x_min <= x_max && y_min <= y_max, "unordered span");
        Rect {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn low(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.x_min,
            Axis::Y => self.y_min,
        }
    }

    pub fn high(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.x_max,
            Axis::Y => self.y_max,
        }
    }

    pub fn extent(&self, axis: Axis) -> f64 {
        self.high(axis) - self.low(axis)
    }

    pub fn center(&self, axis: Axis) -> f64 {
        (self.low(axis) + self.high(axis)) / 2.0
    }

    /// Builds a rect from its interval along `axis` and along the other axis.
    pub(crate) fn from_intervals(axis: Axis, along: (f64, f64), across: (f64, f64)) -> Rect {
        match axis {
            Axis::X => Rect::span(along.0, along.1, across.0, across.1),
            Axis::Y => Rect::span(across.0, across.1, along.0, along.1),
        }
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Rect {
        Rect::span(
            self.x_min + dx,
            self.x_max + dx,
            self.y_min + dy,
            self.y_max + dy,
        )
    }

    pub fn translated_along(&self, axis: Axis, offset: f64) -> Rect {
        match axis {
            Axis::X => self.translated(offset, 0.0),
            Axis::Y => self.translated(0.0, offset),
        }
    }

    pub fn union(&self, other: &Rect) -> Rect {
        Rect::span(
            self.x_min.min(other.x_min),
            self.x_max.max(other.x_max),
            self.y_min.min(other.y_min),
            self.y_max.max(other.y_max),
        )
    }

    /// True when `inner` lies inside `self`, allowing `tol` slack on each side.
    pub fn contains(&self, inner: &Rect, tol: f64) -> bool {
        inner.x_min >= self.x_min - tol
            && inner.x_max <= self.x_max + tol
            && inner.y_min >= self.y_min - tol
            && inner.y_max <= self.y_max + tol
    }

    /// Grows the rect by `fraction` of its extent on every side.
    pub fn padded(&self, fraction: f64) -> Rect {
        let dx = self.width() * fraction;
        let dy = self.height() * fraction;
        Rect::span(
            self.x_min - dx,
            self.x_max + dx,
            self.y_min - dy,
            self.y_max + dy,
        )
    }

    pub fn corners(&self) -> [f64; 4] {
        [self.x_min, self.x_max, self.y_min, self.y_max]
    }

    pub fn max_coordinate_distance(&self, other: &Rect) -> f64 {
        self.corners()
            .iter()
            .zip(other.corners().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]x[{}, {}]",
            self.x_min, self.x_max, self.y_min, self.y_max
        )
    }
}

pub fn rect_area(r: &Rect) -> f64 {
    r.width() * r.height()
}

/// Area of the intersection of two rectangles; zero for disjoint or
/// edge-touching pairs.
pub fn overlap_area(a: &Rect, b: &Rect) -> f64 {
    let w = a.x_max.min(b.x_max) - a.x_min.max(b.x_min);
    let h = a.y_max.min(b.y_max) - a.y_min.max(b.y_min);
    if w <= 0.0 || h <= 0.0 {
        0.0
    } else {
        w * h
    }
}

fn check_edges(edges: &[f64], name: &str) -> Result<()> {
    if edges.len() < 2 {
        return Err(Error::InvalidEdges(format!(
            "{name} needs at least 2 edges, got {}",
            edges.len()
        )));
    }
    if edges.iter().any(|e| !e.is_finite()) {
        return Err(Error::InvalidEdges(format!("{name} has a non-finite edge")));
    }
    if edges.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidEdges(format!(
            "{name} is not strictly increasing"
        )));
    }
    Ok(())
}

/// Sorted, deduplicated union of two binnings over the same range.
///
/// The result delimits the intersection cells of both binnings. Edges closer
/// than [`EDGE_TOLERANCE`] are merged; the first and last entries are the
/// shared range endpoints taken from `edges_a`.
pub fn partition_intervals(edges_a: &[f64], edges_b: &[f64]) -> Result<Vec<f64>> {
    check_edges(edges_a, "edges_a")?;
    check_edges(edges_b, "edges_b")?;
    let (a_lo, a_hi) = (edges_a[0], edges_a[edges_a.len() - 1]);
    let (b_lo, b_hi) = (edges_b[0], edges_b[edges_b.len() - 1]);
    if (a_lo - b_lo).abs() > EDGE_TOLERANCE || (a_hi - b_hi).abs() > EDGE_TOLERANCE {
        return Err(Error::RangeMismatch {
            a_lo,
            a_hi,
            b_lo,
            b_hi,
        });
    }

    let mut all: Vec<f64> = edges_a.iter().chain(edges_b.iter()).copied().collect();
    all.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::with_capacity(all.len());
    for e in all {
        match merged.last() {
            Some(&last) if e - last <= EDGE_TOLERANCE => {}
            _ => merged.push(e),
        }
    }
    let n = merged.len();
    merged[0] = a_lo;
    merged[n - 1] = a_hi;
    Ok(merged)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Color {
    pub r: f64,
    pub g: f64,
    pub b: f64,
    pub a: f64,
}

impl Color {
    pub const TRANSPARENT: Color = Color::rgba(0.0, 0.0, 0.0, 0.0);

    pub const fn rgba(r: f64, g: f64, b: f64, a: f64) -> Color {
        Color { r, g, b, a }
    }

    pub const fn rgb(r: f64, g: f64, b: f64) -> Color {
        Color::rgba(r, g, b, 1.0)
    }

    pub fn new(r: f64, g: f64, b: f64, a: f64) -> Result<Color> {
        if [r, g, b, a].iter().all(|c| (0.0..=1.0).contains(c)) {
            Ok(Color { r, g, b, a })
        } else {
            Err(Error::InvalidConfig(format!(
                "color channels must lie in [0, 1], got ({r}, {g}, {b}, {a})"
            )))
        }
    }

    /// Parses `#RRGGBB` or `#RRGGBBAA`.
    pub fn from_hex(s: &str) -> Result<Color> {
        let bad = || Error::InvalidConfig(format!("invalid color {s:?}, expected #RRGGBB[AA]"));
        let hex = s.strip_prefix('#').ok_or_else(bad)?;
        if !(hex.len() == 6 || hex.len() == 8) || !hex.is_ascii() {
            return Err(bad());
        }
        let channel = |i: usize| -> Result<f64> {
            u8::from_str_radix(&hex[i..i + 2], 16)
                .map(|v| f64::from(v) / 255.0)
                .map_err(|_| bad())
        };
        let a = if hex.len() == 8 { channel(6)? } else { 1.0 };
        Ok(Color::rgba(channel(0)?, channel(2)?, channel(4)?, a))
    }

    pub fn to_hex(&self) -> String {
        let q = |c: f64| (c.clamp(0.0, 1.0) * 255.0).round() as u8;
        format!(
            "#{:02X}{:02X}{:02X}{:02X}",
            q(self.r),
            q(self.g),
            q(self.b),
            q(self.a)
        )
    }

    /// Channel-wise blend; `f = 0` gives `self`, `f = 1` gives `other`.
    pub fn mix(&self, other: &Color, f: f64) -> Color {
        let m = |a: f64, b: f64| (1.0 - f) * a + f * b;
        Color::rgba(
            m(self.r, other.r),
            m(self.g, other.g),
            m(self.b, other.b),
            m(self.a, other.a),
        )
    }
}

/// Identifier of a liquid: the datum whose area is conserved.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LiquidId(pub String);

impl From<&str> for LiquidId {
    fn from(s: &str) -> Self {
        LiquidId(s.to_string())
    }
}

impl From<String> for LiquidId {
    fn from(s: String) -> Self {
        LiquidId(s)
    }
}

impl fmt::Display for LiquidId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenePrimitive {
    /// Filled and/or stroked rectangle. Liquid rectangles carry the id of the
    /// liquid they hold; containers and decorations carry `None`.
    Rect {
        rect: Rect,
        fill: Color,
        stroke: Color,
        stroke_width: f64,
        liquid: Option<LiquidId>,
    },
    Line {
        from: (f64, f64),
        to: (f64, f64),
        stroke: Color,
        stroke_width: f64,
    },
    Label {
        anchor: (f64, f64),
        text: String,
        fill: Color,
    },
}

impl ScenePrimitive {
    pub fn filled_rect(rect: Rect, fill: Color) -> Self {
        ScenePrimitive::Rect {
            rect,
            fill,
            stroke: Color::TRANSPARENT,
            stroke_width: 0.0,
            liquid: None,
        }
    }

    pub fn stroked_rect(rect: Rect, stroke: Color, stroke_width: f64) -> Self {
        ScenePrimitive::Rect {
            rect,
            fill: Color::TRANSPARENT,
            stroke,
            stroke_width,
            liquid: None,
        }
    }

    pub fn liquid(rect: Rect, fill: Color, id: impl Into<LiquidId>) -> Self {
        ScenePrimitive::Rect {
            rect,
            fill,
            stroke: Color::TRANSPARENT,
            stroke_width: 0.0,
            liquid: Some(id.into()),
        }
    }

    pub fn line(from: (f64, f64), to: (f64, f64), stroke: Color, stroke_width: f64) -> Self {
        ScenePrimitive::Line {
            from,
            to,
            stroke,
            stroke_width,
        }
    }

    pub fn label(anchor: (f64, f64), text: impl Into<String>, fill: Color) -> Self {
        ScenePrimitive::Label {
            anchor,
            text: text.into(),
            fill,
        }
    }

    /// Sets the outline of a rect primitive; no-op on other kinds.
    pub fn with_stroke(mut self, color: Color, width: f64) -> Self {
        if let ScenePrimitive::Rect {
            stroke,
            stroke_width,
            ..
        } = &mut self
        {
            *stroke = color;
            *stroke_width = width;
        }
        self
    }

    pub fn liquid_rect(&self) -> Option<(&LiquidId, &Rect)> {
        match self {
            ScenePrimitive::Rect {
                rect,
                liquid: Some(id),
                ..
            } => Some((id, rect)),
            _ => None,
        }
    }

    /// Chart-space bounding box of the primitive's geometry (anchors for labels).
    pub fn bounds(&self) -> Rect {
        match self {
            ScenePrimitive::Rect { rect, .. } => *rect,
            ScenePrimitive::Line { from, to, .. } => Rect::span(
                from.0.min(to.0),
                from.0.max(to.0),
                from.1.min(to.1),
                from.1.max(to.1),
            ),
            ScenePrimitive::Label { anchor, .. } => {
                Rect::span(anchor.0, anchor.0, anchor.1, anchor.1)
            }
        }
    }
}

/// One drawable state: primitives in draw order seen through a viewport.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub primitives: Vec<ScenePrimitive>,
    pub viewport: Rect,
    /// Blend fraction of the over/under-pressure tint; zero outside
    /// data-change transitions.
    pub tint: f64,
}

impl Frame {
    pub fn new(primitives: Vec<ScenePrimitive>, viewport: Rect) -> Result<Frame> {
        if !(viewport.width() > 0.0 && viewport.height() > 0.0) {
            return Err(Error::InvalidRect(format!(
                "viewport {viewport} must have positive extent"
            )));
        }
        Ok(Frame {
            primitives,
            viewport,
            tint: 0.0,
        })
    }

    pub fn liquid_rects(&self) -> impl Iterator<Item = (&LiquidId, &Rect)> {
        self.primitives.iter().filter_map(ScenePrimitive::liquid_rect)
    }

    /// Summed area per liquid.
    pub fn liquid_areas(&self) -> BTreeMap<LiquidId, f64> {
        let mut out = BTreeMap::new();
        for (id, r) in self.liquid_rects() {
            *out.entry(id.clone()).or_insert(0.0) += rect_area(r);
        }
        out
    }

    pub fn total_liquid_area(&self) -> f64 {
        self.liquid_rects().map(|(_, r)| rect_area(r)).sum()
    }

    /// Bounding box of all non-degenerate liquid rects, if any.
    pub fn liquid_bounds(&self) -> Option<Rect> {
        self.liquid_rects()
            .filter(|(_, r)| rect_area(r) > 0.0)
            .map(|(_, r)| *r)
            .reduce(|a, b| a.union(&b))
    }

    /// Bounding box of every primitive.
    pub fn content_bounds(&self) -> Option<Rect> {
        self.primitives
            .iter()
            .map(ScenePrimitive::bounds)
            .reduce(|a, b| a.union(&b))
    }
}
