use crate::error::{Error, Result};
use crate::geometry::{LiquidId, Rect};
use crate::interp::EasedTime;

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub liquid: LiquidId,
    pub height: f64,
}

impl Segment {
    pub fn new(liquid: impl Into<LiquidId>, height: f64) -> Segment {
        Segment {
            liquid: liquid.into(),
            height,
        }
    }
}

/// Segments stacked bottom to top in one container.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentStack {
    pub width: f64,
    pub segments: Vec<Segment>,
}

impl SegmentStack {
    pub fn new(width: f64, segments: Vec<Segment>) -> Result<SegmentStack> {
        if !(width > 0.0) {
            return Err(Error::InvalidContainer(format!("stack width {width} must be positive")));
        }
        if let Some(s) = segments.iter().find(|s| !(s.height >= 0.0) || !s.height.is_finite()) {
            return Err(Error::InvalidContainer(format!(
                "segment {} has invalid height {}",
                s.liquid, s.height
            )));
        }
        Ok(SegmentStack { width, segments })
    }

    pub fn total_height(&self) -> f64 {
        self.segments.iter().map(|s| s.height).sum()
    }

    pub fn liquid_height(&self, liquid: &LiquidId) -> f64 {
        self.segments
            .iter()
            .filter(|s| &s.liquid == liquid)
            .map(|s| s.height)
            .sum()
    }

    /// Segment rectangles with the stack's bottom-left corner at `(x_min, base)`.
    pub fn rects(&self, x_min: f64, base: f64) -> Vec<(LiquidId, Rect)> {
        let mut y = base;
        self.segments
            .iter()
            .map(|s| {
                let r = Rect::span(x_min, x_min + self.width, y, y + s.height);
                y += s.height;
                (s.liquid.clone(), r)
            })
            .collect()
    }
}

/// Communicating segments: the selected liquid flows into a new bottom
/// segment of height `u·h_sel` while each original selected segment shrinks
/// to `(1 − u)` of its height. Other segments keep their heights and order.
pub fn segments_shift_at(
    stack: &SegmentStack,
    selected: &LiquidId,
    u: EasedTime,
) -> Result<SegmentStack> {
    if !stack.segments.iter().any(|s| &s.liquid == selected) {
        return Err(Error::UnknownLiquid(selected.to_string()));
    }
    let u = u.get();
    let total = stack.liquid_height(selected);

    let mut out: Vec<Segment> = Vec::with_capacity(stack.segments.len() + 1);
    let mut push = |seg: Segment, is_selected: bool| {
        if is_selected {
            if seg.height == 0.0 {
                return;
            }
            if let Some(last) = out.last_mut() {
                if last.liquid == seg.liquid {
                    last.height += seg.height;
                    return;
                }
            }
        }
        out.push(seg);
    };

    push(Segment::new(selected.clone(), u * total), true);
    for s in &stack.segments {
        if &s.liquid == selected {
            push(Segment::new(s.liquid.clone(), (1.0 - u) * s.height), true);
        } else {
            push(s.clone(), false);
        }
    }
    Ok(SegmentStack {
        width: stack.width,
        segments: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: f64) -> EasedTime {
        EasedTime::new(v).unwrap()
    }

    fn abc() -> SegmentStack {
        SegmentStack::new(
            1.0,
            vec![Segment::new("A", 2.0), Segment::new("B", 1.0), Segment::new("C", 3.0)],
        )
        .unwrap()
    }

    fn pairs(s: &SegmentStack) -> Vec<(String, f64)> {
        s.segments.iter().map(|s| (s.liquid.0.clone(), s.height)).collect()
    }

    #[test]
    fn split_at_midpoint() {
        let out = segments_shift_at(&abc(), &"C".into(), u(0.5)).unwrap();
        assert_eq!(
            pairs(&out),
            vec![
                ("C".into(), 1.5),
                ("A".into(), 2.0),
                ("B".into(), 1.0),
                ("C".into(), 1.5)
            ]
        );
        assert_eq!(out.total_height(), 6.0);
    }

    #[test]
    fn endpoints() {
        let start = segments_shift_at(&abc(), &"C".into(), u(0.0)).unwrap();
        assert_eq!(start, abc());
        let end = segments_shift_at(&abc(), &"C".into(), u(1.0)).unwrap();
        assert_eq!(
            pairs(&end),
            vec![("C".into(), 3.0), ("A".into(), 2.0), ("B".into(), 1.0)]
        );
    }

    #[test]
    fn bottom_single_segment_is_fixed_point() {
        for v in [0.0, 0.3, 0.5, 0.9, 1.0] {
            let out = segments_shift_at(&abc(), &"A".into(), u(v)).unwrap();
            assert_eq!(out.segments.len(), 3);
            for (a, b) in out.segments.iter().zip(abc().segments.iter()) {
                assert_eq!(a.liquid, b.liquid);
                assert!((a.height - b.height).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn several_selected_segments() {
        let stack = SegmentStack::new(
            2.0,
            vec![
                Segment::new("A", 1.0),
                Segment::new("S", 1.0),
                Segment::new("B", 1.0),
                Segment::new("S", 3.0),
            ],
        )
        .unwrap();
        let out = segments_shift_at(&stack, &"S".into(), u(0.25)).unwrap();
        assert_eq!(out.segments[0], Segment::new("S", 1.0));
        assert!((out.liquid_height(&"S".into()) - 4.0).abs() < 1e-12);
        assert!((out.total_height() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_liquid() {
        let err = segments_shift_at(&abc(), &"Z".into(), u(0.5)).unwrap_err();
        assert_eq!(err.code(), "UnknownLiquid");
    }

    #[test]
    fn rects_stack_upward() {
        let rects = abc().rects(3.0, 0.5);
        assert_eq!(rects[0].1, Rect::new(3.0, 4.0, 0.5, 2.5).unwrap());
        assert_eq!(rects[2].1, Rect::new(3.0, 4.0, 3.5, 6.5).unwrap());
    }
}
