//! Area-preserving reshape of a single rectangle.
//!
//! Edges on the piston axis ("L" edges) move linearly in eased time; edges on
//! the other axis ("H" edges) are solved from `H(t) = A / L(t)`, so the
//! moving corner rides a hyperbola. With two free edges the rectangle's
//! center along the free axis is interpolated linearly.

use std::fmt;

use super::{cross_segment, Decoration, DecorationRole, DecorationShape};
use crate::error::{Error, Result};
use crate::geometry::{rect_area, Axis, Rect};
use crate::interp::{centered_pair, hyperbolic_extent, lerp, EasedTime, DEGENERACY_TOLERANCE};

/// Relative tolerance for the equal-area precondition.
pub const AREA_TOLERANCE: f64 = 1e-9;

const EDGE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReshapeCase {
    Identity,
    /// Same extents, different position: a rigid translation.
    Translation,
    LH,
    LHH,
    LLH,
    LLHH,
}

impl ReshapeCase {
    pub fn code(self) -> &'static str {
        match self {
            ReshapeCase::Identity => "identity",
            ReshapeCase::Translation => "translation",
            ReshapeCase::LH => "L.H",
            ReshapeCase::LHH => "L.HH",
            ReshapeCase::LLH => "LL.H",
            ReshapeCase::LLHH => "LL.HH",
        }
    }
}

impl fmt::Display for ReshapeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Staging {
    #[default]
    Direct,
    TranslateThenReshape,
    ReshapeThenTranslate,
}

/// One phase of a possibly staged reshape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReshapePhase {
    Translate { from: Rect, axis: Axis, offset: f64 },
    Reshape { from: Rect, to: Rect },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReshapeSpec {
    init: Rect,
    target: Rect,
    piston_axis: Axis,
    case: ReshapeCase,
    staging: Staging,
    area: f64,
    /// Which free-axis edges are solved from the area constraint (low, high).
    free_edges: (bool, bool),
    /// Rigid offset along the free axis handled by a separate translation.
    center_offset: f64,
}

fn moves(a: f64, b: f64) -> bool {
    (a - b).abs() > EDGE_EPS * a.abs().max(b.abs()).max(1.0)
}

fn moving_edges(a: &Rect, b: &Rect, axis: Axis) -> (bool, bool) {
    (
        moves(a.low(axis), b.low(axis)),
        moves(a.high(axis), b.high(axis)),
    )
}

fn count(edges: (bool, bool)) -> usize {
    edges.0 as usize + edges.1 as usize
}

fn check_areas(init: &Rect, target: &Rect) -> Result<f64> {
    let (a, b) = (rect_area(init), rect_area(target));
    if (a - b).abs() > AREA_TOLERANCE * a.max(b) {
        return Err(Error::AreaMismatch { a, b });
    }
    Ok(a)
}

impl ReshapeSpec {
    /// Builds a spec with an explicitly chosen piston axis.
    pub fn with_piston_axis(init: Rect, target: Rect, piston_axis: Axis) -> Result<ReshapeSpec> {
        let area = check_areas(&init, &target)?;
        let free_axis = piston_axis.other();
        let pistons = moving_edges(&init, &target, piston_axis);
        let mut free = moving_edges(&init, &target, free_axis);

        let case = match (count(pistons), count(free)) {
            (0, 0) => ReshapeCase::Identity,
            (_, 0) | (0, _) => ReshapeCase::Translation,
            (1, 1) => ReshapeCase::LH,
            (1, 2) => ReshapeCase::LHH,
            (2, 1) => ReshapeCase::LLH,
            _ => ReshapeCase::LLHH,
        };
        if case == ReshapeCase::Translation && count(pistons) == 1 {
            // Extents differ below the area tolerance; let the high edge absorb it.
            free = (false, true);
        }

        let needs_solve = free.0 || free.1;
        if needs_solve && case != ReshapeCase::Translation {
            let shortest = init.extent(piston_axis).min(target.extent(piston_axis));
            if shortest <= DEGENERACY_TOLERANCE {
                return Err(Error::DegenerateExtent(shortest));
            }
        }

        let staging = if case == ReshapeCase::LLHH {
            Staging::TranslateThenReshape
        } else {
            Staging::Direct
        };
        let mut spec = ReshapeSpec {
            init,
            target,
            piston_axis,
            case,
            staging,
            area,
            free_edges: free,
            center_offset: 0.0,
        };
        spec.center_offset = spec.staging_offset();
        Ok(spec)
    }

    /// Overrides the staging order. Only four-moving-edge reshapes are staged;
    /// other cases stay direct.
    pub fn with_staging(mut self, staging: Staging) -> ReshapeSpec {
        if self.case == ReshapeCase::LLHH {
            self.staging = staging;
            self.center_offset = self.staging_offset();
        }
        self
    }

    fn staging_offset(&self) -> f64 {
        match self.staging {
            Staging::Direct => 0.0,
            _ => {
                let free_axis = self.piston_axis.other();
                self.target.center(free_axis) - self.init.center(free_axis)
            }
        }
    }

    pub fn init(&self) -> Rect {
        self.init
    }

    pub fn target(&self) -> Rect {
        self.target
    }

    pub fn piston_axis(&self) -> Axis {
        self.piston_axis
    }

    pub fn case(&self) -> ReshapeCase {
        self.case
    }

    pub fn staging(&self) -> Staging {
        self.staging
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Start and end rectangles of the reshape phase proper.
    pub fn reshape_endpoints(&self) -> (Rect, Rect) {
        let free_axis = self.piston_axis.other();
        match self.staging {
            Staging::Direct => (self.init, self.target),
            Staging::TranslateThenReshape => (
                self.init.translated_along(free_axis, self.center_offset),
                self.target,
            ),
            Staging::ReshapeThenTranslate => (
                self.init,
                self.target.translated_along(free_axis, -self.center_offset),
            ),
        }
    }

    /// Phases in playing order; zero-length translations are omitted.
    pub fn phases(&self) -> Vec<ReshapePhase> {
        let (from, to) = self.reshape_endpoints();
        let reshape = ReshapePhase::Reshape { from, to };
        let axis = self.piston_axis.other();
        let offset = self.center_offset;
        if offset == 0.0 {
            return vec![reshape];
        }
        match self.staging {
            Staging::Direct => vec![reshape],
            Staging::TranslateThenReshape => vec![
                ReshapePhase::Translate {
                    from: self.init,
                    axis,
                    offset,
                },
                reshape,
            ],
            Staging::ReshapeThenTranslate => vec![
                reshape,
                ReshapePhase::Translate { from: to, axis, offset },
            ],
        }
    }

    fn solve(&self, from: &Rect, to: &Rect, u: EasedTime) -> Result<Rect> {
        if u.get() == 0.0 {
            return Ok(*from);
        }
        if u.get() == 1.0 {
            return Ok(*to);
        }
        let l_axis = self.piston_axis;
        let h_axis = l_axis.other();
        let l1 = lerp(from.low(l_axis), to.low(l_axis), u);
        let l2 = lerp(from.high(l_axis), to.high(l_axis), u);

        let (h_lo, h_hi) = match self.free_edges {
            (false, false) => (
                lerp(from.low(h_axis), to.low(h_axis), u),
                lerp(from.high(h_axis), to.high(h_axis), u),
            ),
            (true, true) => {
                let extent = hyperbolic_extent(self.area, l2 - l1)?;
                centered_pair(from.center(h_axis), to.center(h_axis), extent, u)
            }
            (false, true) => {
                let lo = from.low(h_axis);
                (lo, lo + hyperbolic_extent(self.area, l2 - l1)?)
            }
            (true, false) => {
                let hi = from.high(h_axis);
                (hi - hyperbolic_extent(self.area, l2 - l1)?, hi)
            }
        };
        Ok(Rect::from_intervals(l_axis, (l1, l2), (h_lo, h_hi)))
    }
}

/// Picks the edge roles for an equal-area pair.
///
/// The piston axis is the one leaving the fewest free (hyperbolic) edges,
/// ties going to x. Four moving edges default to translating first.
pub fn classify_reshape(init: &Rect, target: &Rect) -> Result<ReshapeSpec> {
    check_areas(init, target)?;
    let mx = count(moving_edges(init, target, Axis::X));
    let my = count(moving_edges(init, target, Axis::Y));
    // free-edge count is the other axis' moving-edge count
    let piston = if my <= mx { Axis::X } else { Axis::Y };
    ReshapeSpec::with_piston_axis(*init, *target, piston)
}

/// Rectangle and cylinder decoration of the reshape phase at eased time `u`.
///
/// The cylinder is the bounding box of both phase endpoints; moving piston
/// edges are prolonged across it, free surfaces span the current rectangle.
pub fn reshape_at(spec: &ReshapeSpec, u: EasedTime) -> Result<(Rect, Decoration)> {
    let (from, to) = spec.reshape_endpoints();
    let rect = spec.solve(&from, &to, u)?;

    let mut deco = Decoration::default();
    if spec.case == ReshapeCase::Identity {
        return Ok((rect, deco));
    }
    let cylinder = from.union(&to);
    deco.push(DecorationRole::Cylinder, DecorationShape::Outline(cylinder));

    let l_axis = spec.piston_axis;
    let h_axis = l_axis.other();
    let (lo_moves, hi_moves) = moving_edges(&from, &to, l_axis);
    let cyl_across = (cylinder.low(h_axis), cylinder.high(h_axis));
    if lo_moves {
        deco.push(
            DecorationRole::Piston,
            cross_segment(l_axis, rect.low(l_axis), cyl_across),
        );
    }
    if hi_moves {
        deco.push(
            DecorationRole::Piston,
            cross_segment(l_axis, rect.high(l_axis), cyl_across),
        );
    }
    let rect_across = (rect.low(l_axis), rect.high(l_axis));
    if spec.free_edges.0 {
        deco.push(
            DecorationRole::FreeSurface,
            cross_segment(h_axis, rect.low(h_axis), rect_across),
        );
    }
    if spec.free_edges.1 {
        deco.push(
            DecorationRole::FreeSurface,
            cross_segment(h_axis, rect.high(h_axis), rect_across),
        );
    }
    Ok((rect, deco))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x0: f64, x1: f64, y0: f64, y1: f64) -> Rect {
        Rect::new(x0, x1, y0, y1).unwrap()
    }

    fn u(v: f64) -> EasedTime {
        EasedTime::new(v).unwrap()
    }

    #[test]
    fn classify_first_row_case() {
        let spec = classify_reshape(&r(0.0, 1.0, 0.0, 4.0), &r(0.0, 4.0, 0.0, 1.0)).unwrap();
        assert_eq!(spec.case(), ReshapeCase::LH);
        assert_eq!(spec.piston_axis(), Axis::X);
        assert_eq!(spec.staging(), Staging::Direct);
    }

    #[test]
    fn classify_identity() {
        let a = r(0.0, 2.0, 0.0, 2.0);
        let spec = classify_reshape(&a, &a).unwrap();
        assert_eq!(spec.case(), ReshapeCase::Identity);
        let (rect, deco) = reshape_at(&spec, u(0.4)).unwrap();
        assert_eq!(rect, a);
        assert!(deco.items.is_empty());
    }

    #[test]
    fn classify_four_moving_edges() {
        let spec = classify_reshape(&r(0.0, 1.0, 0.0, 4.0), &r(2.0, 6.0, 1.5, 2.5)).unwrap();
        assert_eq!(spec.case(), ReshapeCase::LLHH);
        assert_eq!(spec.staging(), Staging::TranslateThenReshape);
        // centers along y already agree, so no translation phase is needed
        assert_eq!(spec.phases().len(), 1);
    }

    #[test]
    fn three_moving_edges_prefer_single_free_edge() {
        // x: both edges move, y: only the top moves -> LL.H with x pistons
        let spec = classify_reshape(&r(0.0, 2.0, 0.0, 2.0), &r(1.0, 5.0, 0.0, 1.0)).unwrap();
        assert_eq!(spec.case(), ReshapeCase::LLH);
        assert_eq!(spec.piston_axis(), Axis::X);
        // y: both move, x: one moves -> pistons on y
        let spec = classify_reshape(&r(0.0, 2.0, 0.0, 2.0), &r(0.0, 1.0, 1.0, 5.0)).unwrap();
        assert_eq!(spec.case(), ReshapeCase::LLH);
        assert_eq!(spec.piston_axis(), Axis::Y);
    }

    #[test]
    fn translation_case() {
        let spec = classify_reshape(&r(0.0, 1.0, 0.0, 1.0), &r(3.0, 4.0, 0.0, 1.0)).unwrap();
        assert_eq!(spec.case(), ReshapeCase::Translation);
        let (rect, _) = reshape_at(&spec, u(0.5)).unwrap();
        assert_eq!(rect, r(1.5, 2.5, 0.0, 1.0));
    }

    #[test]
    fn area_mismatch_rejected() {
        let err = classify_reshape(&r(0.0, 1.0, 0.0, 4.0), &r(0.0, 4.0, 0.0, 1.1)).unwrap_err();
        assert_eq!(err.code(), "AreaMismatch");
    }

    #[test]
    fn degenerate_piston_rejected() {
        let err = ReshapeSpec::with_piston_axis(r(0.0, 0.0, 0.0, 4.0), r(0.0, 1.0, 0.0, 0.0), Axis::X);
        assert!(err.is_err());
    }

    #[test]
    fn lh_midframe() {
        let spec = classify_reshape(&r(0.0, 1.0, 0.0, 4.0), &r(0.0, 4.0, 0.0, 1.0)).unwrap();
        let (rect, deco) = reshape_at(&spec, u(0.5)).unwrap();
        assert_eq!(rect.x_min, 0.0);
        assert_eq!(rect.x_max, 2.5);
        assert_eq!(rect.y_min, 0.0);
        assert!((rect.y_max - 1.6).abs() < 1e-15);
        assert!((rect_area(&rect) - 4.0).abs() < 1e-12);
        // cylinder is the bounding box of both states
        assert!(deco.items.iter().any(|i| i.role == DecorationRole::Cylinder
            && i.shape == DecorationShape::Outline(r(0.0, 4.0, 0.0, 4.0))));
        // the piston at x = 2.5 spans the whole cylinder height
        assert!(deco.items.iter().any(|i| i.role == DecorationRole::Piston
            && i.shape == DecorationShape::Segment((2.5, 0.0), (2.5, 4.0))));
        assert!(deco.has_role(DecorationRole::FreeSurface));
    }

    #[test]
    fn llhh_midframe() {
        let spec = classify_reshape(&r(0.0, 1.0, 0.0, 4.0), &r(2.0, 6.0, 1.5, 2.5)).unwrap();
        let (rect, _) = reshape_at(&spec, u(0.5)).unwrap();
        assert_eq!((rect.x_min, rect.x_max), (1.0, 3.5));
        assert!((rect.y_min - 1.2).abs() < 1e-15);
        assert!((rect.y_max - 2.8).abs() < 1e-15);
        assert!((rect_area(&rect) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn staged_translation_aligns_centers() {
        let init = r(0.0, 1.0, 0.0, 4.0);
        let target = r(2.0, 6.0, 3.5, 4.5);
        let spec = classify_reshape(&init, &target).unwrap();
        let phases = spec.phases();
        assert_eq!(phases.len(), 2);
        match phases[0] {
            ReshapePhase::Translate { from, axis, offset } => {
                assert_eq!(from, init);
                assert_eq!(axis, Axis::Y);
                assert_eq!(offset, 2.0);
            }
            _ => panic!("expected translation first"),
        }
        let reversed = spec.with_staging(Staging::ReshapeThenTranslate).phases();
        assert!(matches!(reversed[1], ReshapePhase::Translate { .. }));
        let (from, to) = spec.with_staging(Staging::ReshapeThenTranslate).reshape_endpoints();
        assert_eq!(from, init);
        assert_eq!(to, target.translated(0.0, -2.0));
    }

    #[test]
    fn naive_vertex_lerp_does_not_preserve_area() {
        let a = r(0.0, 1.0, 0.0, 4.0);
        let b = r(0.0, 4.0, 0.0, 1.0);
        let m = u(0.5);
        let naive = r(
            lerp(a.x_min, b.x_min, m),
            lerp(a.x_max, b.x_max, m),
            lerp(a.y_min, b.y_min, m),
            lerp(a.y_max, b.y_max, m),
        );
        assert_eq!(rect_area(&naive), 6.25);
    }

    #[test]
    fn endpoints_exact() {
        let a = r(0.3, 1.7, -2.0, 1.1);
        let b = r(-1.0, 0.4, -4.0, -0.9);
        let spec = classify_reshape(&a, &b).unwrap();
        let (from, to) = spec.reshape_endpoints();
        assert_eq!(reshape_at(&spec, u(0.0)).unwrap().0, from);
        assert_eq!(reshape_at(&spec, u(1.0)).unwrap().0, to);
    }
}
