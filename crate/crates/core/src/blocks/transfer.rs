use crate::error::{Error, Result};
use crate::interp::{lerp, EasedTime};

use super::AREA_TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferContainer {
    pub width: f64,
    pub level0: f64,
    pub level1: f64,
}

/// Containers linked by hidden pipes. Level changes balance out:
/// `Σ wₖ·δₖ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferSpec {
    containers: Vec<TransferContainer>,
    area: f64,
}

impl TransferSpec {
    pub fn new(containers: Vec<TransferContainer>) -> Result<TransferSpec> {
        if containers.is_empty() {
            return Err(Error::InvalidContainer("a transfer needs at least one container".into()));
        }
        for (k, c) in containers.iter().enumerate() {
            if !(c.width > 0.0 && c.width.is_finite()) {
                return Err(Error::InvalidContainer(format!(
                    "container {k} has non-positive width {}",
                    c.width
                )));
            }
            if !(c.level0 >= 0.0 && c.level1 >= 0.0) || !c.level0.is_finite() || !c.level1.is_finite() {
                return Err(Error::InvalidContainer(format!(
                    "container {k} has a negative or non-finite level"
                )));
            }
        }
        let a0: f64 = containers.iter().map(|c| c.width * c.level0).sum();
        let a1: f64 = containers.iter().map(|c| c.width * c.level1).sum();
        if (a0 - a1).abs() > AREA_TOLERANCE * a0.max(a1) {
            return Err(Error::AreaMismatch { a: a0, b: a1 });
        }
        Ok(TransferSpec {
            containers,
            area: a0,
        })
    }

    pub fn containers(&self) -> &[TransferContainer] {
        &self.containers
    }

    pub fn total_area(&self) -> f64 {
        self.area
    }
}

/// Levels at eased time `u`, each linearly interpolated.
pub fn transfer_at(spec: &TransferSpec, u: EasedTime) -> Vec<f64> {
    spec.containers
        .iter()
        .map(|c| lerp(c.level0, c.level1, u))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(width: f64, level0: f64, level1: f64) -> TransferContainer {
        TransferContainer {
            width,
            level0,
            level1,
        }
    }

    fn u(v: f64) -> EasedTime {
        EasedTime::new(v).unwrap()
    }

    fn weighted(spec: &TransferSpec, levels: &[f64]) -> f64 {
        spec.containers()
            .iter()
            .zip(levels)
            .map(|(c, l)| c.width * l)
            .sum()
    }

    #[test]
    fn three_containers_midpoint() {
        let spec = TransferSpec::new(vec![c(1.0, 3.0, 1.0), c(2.0, 1.0, 2.0), c(1.0, 1.0, 1.0)]).unwrap();
        let levels = transfer_at(&spec, u(0.5));
        assert_eq!(levels, vec![2.0, 1.5, 1.0]);
        assert_eq!(weighted(&spec, &levels), 6.0);
        assert_eq!(spec.total_area(), 6.0);
    }

    #[test]
    fn two_containers_midpoint() {
        let spec = TransferSpec::new(vec![c(1.0, 4.0, 1.0), c(1.0, 0.0, 3.0)]).unwrap();
        let levels = transfer_at(&spec, u(0.5));
        assert_eq!(levels, vec![2.5, 1.5]);
        assert_eq!(weighted(&spec, &levels), 4.0);
        assert_eq!(transfer_at(&spec, u(0.0)), vec![4.0, 0.0]);
    }

    #[test]
    fn rejects_unbalanced_and_invalid() {
        let err = TransferSpec::new(vec![c(1.0, 4.0, 1.0), c(1.0, 0.0, 2.0)]).unwrap_err();
        assert_eq!(err.code(), "AreaMismatch");
        assert!(TransferSpec::new(vec![c(0.0, 1.0, 1.0)]).is_err());
        assert!(TransferSpec::new(vec![c(1.0, -1.0, -1.0)]).is_err());
        assert!(TransferSpec::new(vec![]).is_err());
    }
}
