use super::{cross_segment, Decoration, DecorationRole, DecorationShape};
use crate::error::{Error, Result};
use crate::geometry::{Axis, Rect};
use crate::interp::{lerp, EasedTime};

/// Filling or emptying a single container along one axis.
///
/// Levels are measured from the container's low edge along `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FillSpec {
    container: Rect,
    axis: Axis,
    level0: f64,
    level1: f64,
}

impl FillSpec {
    pub fn new(container: Rect, axis: Axis, level0: f64, level1: f64) -> Result<FillSpec> {
        let extent = container.extent(axis);
        for level in [level0, level1] {
            if !(0.0..=extent).contains(&level) {
                return Err(Error::LevelOutOfRange { level, extent });
            }
        }
        Ok(FillSpec {
            container,
            axis,
            level0,
            level1,
        })
    }

    pub fn container(&self) -> Rect {
        self.container
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn levels(&self) -> (f64, f64) {
        (self.level0, self.level1)
    }

    pub fn is_filling(&self) -> bool {
        self.level1 > self.level0
    }

    pub fn is_emptying(&self) -> bool {
        self.level1 < self.level0
    }
}

/// Liquid rectangle and decoration at eased time `u`.
///
/// The decoration always outlines the container. Emptying adds a target line
/// at the final level; filling adds a reminder line at the initial level.
/// This block changes the liquid's area and is only meant as a part of
/// balanced compositions.
pub fn fill_at(spec: &FillSpec, u: EasedTime) -> (Rect, Decoration) {
    let c = spec.container;
    let axis = spec.axis;
    let level = lerp(spec.level0, spec.level1, u);
    let low = c.low(axis);
    let across = (c.low(axis.other()), c.high(axis.other()));
    let liquid = Rect::from_intervals(axis, (low, low + level), across);

    let mut deco = Decoration::default();
    deco.push(DecorationRole::Container, DecorationShape::Outline(c));
    if spec.is_emptying() {
        deco.push(
            DecorationRole::Target,
            cross_segment(axis, low + spec.level1, across),
        );
    } else if spec.is_filling() {
        deco.push(
            DecorationRole::Reminder,
            cross_segment(axis, low + spec.level0, across),
        );
    }
    (liquid, deco)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bar() -> Rect {
        Rect::new(0.0, 1.0, 0.0, 4.0).unwrap()
    }

    fn u(v: f64) -> EasedTime {
        EasedTime::new(v).unwrap()
    }

    #[test]
    fn emptying_midpoint() {
        let spec = FillSpec::new(bar(), Axis::Y, 3.0, 1.0).unwrap();
        let (liquid, deco) = fill_at(&spec, u(0.5));
        assert_eq!(liquid, Rect::new(0.0, 1.0, 0.0, 2.0).unwrap());
        assert!(deco.items.iter().any(|i| i.role == DecorationRole::Target
            && i.shape == DecorationShape::Segment((0.0, 1.0), (1.0, 1.0))));
        assert!(!deco.has_role(DecorationRole::Reminder));
        assert!(deco.has_role(DecorationRole::Container));
    }

    #[test]
    fn emptying_endpoints() {
        let spec = FillSpec::new(bar(), Axis::Y, 3.0, 1.0).unwrap();
        let (l0, d0) = fill_at(&spec, u(0.0));
        assert_eq!(l0.height(), 3.0);
        assert!(d0.has_role(DecorationRole::Target));
        assert_eq!(fill_at(&spec, u(1.0)).0.height(), 1.0);
    }

    #[test]
    fn filling_shows_reminder() {
        let spec = FillSpec::new(bar(), Axis::Y, 1.0, 3.0).unwrap();
        let (_, deco) = fill_at(&spec, u(0.2));
        assert!(deco.has_role(DecorationRole::Reminder));
        assert!(!deco.has_role(DecorationRole::Target));
    }

    #[test]
    fn horizontal_axis() {
        let c = Rect::new(0.0, 4.0, 1.0, 2.0).unwrap();
        let spec = FillSpec::new(c, Axis::X, 0.0, 2.0).unwrap();
        let (liquid, _) = fill_at(&spec, u(0.5));
        assert_eq!(liquid, Rect::new(0.0, 1.0, 1.0, 2.0).unwrap());
    }

    #[test]
    fn rejects_levels_outside_container() {
        assert_eq!(
            FillSpec::new(bar(), Axis::Y, 5.0, 1.0).unwrap_err().code(),
            "LevelOutOfRange"
        );
        assert!(FillSpec::new(bar(), Axis::Y, 1.0, -0.5).is_err());
    }
}
