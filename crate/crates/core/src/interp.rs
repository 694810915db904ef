//! Scalar interpolators driving every block: cubic slow-in/slow-out easing,
//! linear piston motion, hyperbolic free-edge motion and the centered pair.
//!
//! Interpolators take an already eased [`EasedTime`] so that staged scripts
//! can map global time to a stage-local time and ease exactly once.

use crate::error::{Error, Result};

/// Smallest piston extent accepted by [`hyperbolic_extent`].
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// Normalized time in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TimeParam(f64);

impl TimeParam {
    pub const START: TimeParam = TimeParam(0.0);
    pub const END: TimeParam = TimeParam(1.0);

    pub fn new(t: f64) -> Result<TimeParam> {
        if (0.0..=1.0).contains(&t) {
            Ok(TimeParam(t))
        } else {
            Err(Error::DomainError(t))
        }
    }

    /// Clamps into `[0, 1]`; NaN maps to 0.
    pub fn clamped(t: f64) -> TimeParam {
        if t.is_nan() {
            TimeParam(0.0)
        } else {
            TimeParam(t.clamp(0.0, 1.0))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Eased progress in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EasedTime(f64);

impl EasedTime {
    pub const START: EasedTime = EasedTime(0.0);
    pub const END: EasedTime = EasedTime(1.0);

    pub fn new(u: f64) -> Result<EasedTime> {
        if (0.0..=1.0).contains(&u) {
            Ok(EasedTime(u))
        } else {
            Err(Error::DomainError(u))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Cubic slow-in/slow-out: `u(t) = 3t² − 2t³`.
pub fn ease(t: TimeParam) -> EasedTime {
    let t = t.0;
    EasedTime((t * t * (3.0 - 2.0 * t)).clamp(0.0, 1.0))
}

/// `(1 − u)·v0 + u·v1`, exact at both ends.
pub fn lerp(v0: f64, v1: f64, u: EasedTime) -> f64 {
    let u = u.0;
    if u == 0.0 {
        v0
    } else if u == 1.0 {
        v1
    } else {
        (1.0 - u) * v0 + u * v1
    }
}

/// Free extent keeping `area` constant for a piston extent `piston_extent`.
pub fn hyperbolic_extent(area: f64, piston_extent: f64) -> Result<f64> {
    if !(piston_extent > DEGENERACY_TOLERANCE) {
        return Err(Error::DegenerateExtent(piston_extent));
    }
    Ok(area / piston_extent)
}

/// Positions of two free edges with extent `extent` centered on the eased
/// center `lerp(c0, c1, u)`.
pub fn centered_pair(c0: f64, c1: f64, extent: f64, u: EasedTime) -> (f64, f64) {
    let c = lerp(c0, c1, u);
    let half = extent / 2.0;
    (c - half, c + half)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: f64) -> TimeParam {
        TimeParam::new(v).unwrap()
    }

    fn u(v: f64) -> EasedTime {
        EasedTime::new(v).unwrap()
    }

    #[test]
    fn ease_examples() {
        assert_eq!(ease(t(0.0)).get(), 0.0);
        assert_eq!(ease(t(1.0)).get(), 1.0);
        assert_eq!(ease(t(0.5)).get(), 0.5);
        // 3(0.0625) - 2(0.015625)
        assert!((ease(t(0.25)).get() - 0.15625).abs() < 1e-15);
    }

    #[test]
    fn time_domain() {
        assert!(TimeParam::new(-0.01).is_err());
        assert!(TimeParam::new(1.01).is_err());
        assert!(TimeParam::new(f64::NAN).is_err());
        assert_eq!(TimeParam::clamped(3.0).get(), 1.0);
        assert!(EasedTime::new(2.0).is_err());
    }

    #[test]
    fn ease_endpoint_slopes_vanish() {
        let h = 1e-4;
        // one-sided differences at the ends, compared to u'(t) = 6t - 6t²
        let d0 = (ease(t(h)).get() - ease(t(0.0)).get()) / h;
        let d1 = (ease(t(1.0)).get() - ease(t(1.0 - h)).get()) / h;
        assert!(d0.abs() <= 1e-3, "{d0}");
        assert!(d1.abs() <= 1e-3, "{d1}");
        let mid = (ease(t(0.5 + h)).get() - ease(t(0.5 - h)).get()) / (2.0 * h);
        assert!((mid - 1.5).abs() < 1e-6);
    }

    #[test]
    fn lerp_examples() {
        assert_eq!(lerp(1.0, 4.0, u(0.5)), 2.5);
        assert_eq!(lerp(7.0, 7.0, u(0.37)), 7.0);
        assert_eq!(lerp(0.0, 10.0, u(1.0)), 10.0);
    }

    #[test]
    fn hyperbolic_examples() {
        assert!((hyperbolic_extent(4.0, 2.5).unwrap() - 1.6).abs() < 1e-15);
        assert_eq!(hyperbolic_extent(4.0, 1.0).unwrap(), 4.0);
        assert_eq!(hyperbolic_extent(4.0, 4.0).unwrap(), 1.0);
        assert_eq!(
            hyperbolic_extent(4.0, 1e-13).unwrap_err().code(),
            "DegenerateExtent"
        );
        assert!(hyperbolic_extent(4.0, 0.0).is_err());
    }

    #[test]
    fn centered_pair_examples() {
        let (lo, hi) = centered_pair(2.0, 2.0, 1.6, u(0.5));
        assert!((lo - 1.2).abs() < 1e-15 && (hi - 2.8).abs() < 1e-15);
        assert_eq!(centered_pair(0.0, 0.0, 4.0, u(0.3)), (-2.0, 2.0));
        assert_eq!(centered_pair(2.0, 2.0, 4.0, u(0.0)), (0.0, 4.0));
    }
}
