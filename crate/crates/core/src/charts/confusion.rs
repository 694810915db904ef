//! Confusion matrices read as contingency tables: the joint, marginal and
//! conditional probabilities, and the two product-plot layouts that share
//! cell areas through Bayes' rule.

use crate::error::{Error, Result};
use crate::geometry::{LiquidId, Rect};

/// Square count matrix; rows are predicted classes, columns observed ones.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfusionMatrix {
    labels: Vec<String>,
    counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn new(labels: Vec<String>, counts: Vec<Vec<u64>>) -> Result<ConfusionMatrix> {
        let k = labels.len();
        if k == 0 {
            return Err(Error::InvalidChart("a confusion matrix needs at least one class".into()));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::InvalidChart(format!("duplicate class label {a:?}")));
            }
        }
        if counts.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                actual: counts.len(),
            });
        }
        if let Some(row) = counts.iter().find(|r| r.len() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                actual: row.len(),
            });
        }
        let m = ConfusionMatrix { labels, counts };
        if m.total() == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(m)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn class_count(&self) -> usize {
        self.labels.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

/// All probabilities are indexed `[predicted][observed]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable {
    pub labels: Vec<String>,
    pub joint: Vec<Vec<f64>>,
    pub marginal_pred: Vec<f64>,
    pub marginal_obs: Vec<f64>,
    /// `p(observed | predicted)`; each row sums to one.
    pub cond_obs_given_pred: Vec<Vec<f64>>,
    /// `p(predicted | observed)`; each column sums to one.
    pub cond_pred_given_obs: Vec<Vec<f64>>,
}

impl ProbabilityTable {
    pub fn class_count(&self) -> usize {
        self.labels.len()
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub fn probability_table(cm: &ConfusionMatrix) -> Result<ProbabilityTable> {
    let k = cm.class_count();
    let total = cm.total();
    if total == 0 {
        return Err(Error::EmptyMatrix);
    }
    let c = &cm.counts;
    let row_sums: Vec<u64> = c.iter().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<u64> = (0..k).map(|o| c.iter().map(|r| r[o]).sum()).collect();

    let grid = |f: &dyn Fn(usize, usize) -> f64| -> Vec<Vec<f64>> {
        (0..k).map(|p| (0..k).map(|o| f(p, o)).collect()).collect()
    };
    Ok(ProbabilityTable {
        labels: cm.labels.clone(),
        joint: grid(&|p, o| ratio(c[p][o], total)),
        marginal_pred: row_sums.iter().map(|&s| ratio(s, total)).collect(),
        marginal_obs: col_sums.iter().map(|&s| ratio(s, total)).collect(),
        cond_obs_given_pred: grid(&|p, o| ratio(c[p][o], row_sums[p])),
        cond_pred_given_obs: grid(&|p, o| ratio(c[p][o], col_sums[o])),
    })
}

pub fn cell_liquid_id(pt: &ProbabilityTable, predicted: usize, observed: usize) -> LiquidId {
    LiquidId(format!(
        "{}|{}",
        pt.labels[observed], pt.labels[predicted]
    ))
}

/// Fluctuation diagram in unit-square scale: a cell square of side
/// `√joint` is centered in each grid slot, so its area is the joint
/// probability.
///
/// Predicted classes run top to bottom, observed classes left to right.
/// Row marginals sit in a right margin column, column marginals in a
/// bottom margin row, and the unit reference square at the bottom right.
#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationLayout {
    pub cell_size: f64,
    /// `[predicted][observed]`; zero-joint cells are zero-size squares.
    pub cells: Vec<Vec<Rect>>,
    pub row_margins: Vec<Rect>,
    pub col_margins: Vec<Rect>,
    pub reference: Rect,
    /// Inner frame around the K×K grid.
    pub grid: Rect,
}

impl FluctuationLayout {
    /// Center of the slot in row `p` (or the bottom margin when `p == K`).
    pub fn row_center(&self, p: usize) -> f64 {
        let k = (self.grid.width() / self.cell_size).round() as usize;
        (k - p) as f64 * self.cell_size + self.cell_size / 2.0
    }

    pub fn column_center(&self, o: usize) -> f64 {
        o as f64 * self.cell_size + self.cell_size / 2.0
    }

    pub fn bounds(&self) -> Rect {
        let k = self.cells.len() as f64;
        Rect::span(0.0, (k + 1.0) * self.cell_size, 0.0, (k + 1.0) * self.cell_size)
    }
}

fn centered_square(cx: f64, cy: f64, side: f64) -> Rect {
    let h = side / 2.0;
    Rect::span(cx - h, cx + h, cy - h, cy + h)
}

pub fn fluctuation_layout(pt: &ProbabilityTable, grid_cell_size: f64) -> FluctuationLayout {
    let k = pt.class_count();
    let s = grid_cell_size;
    let mut layout = FluctuationLayout {
        cell_size: s,
        cells: Vec::with_capacity(k),
        row_margins: Vec::with_capacity(k),
        col_margins: Vec::with_capacity(k),
        reference: Rect::span(0.0, 0.0, 0.0, 0.0),
        grid: Rect::span(0.0, k as f64 * s, s, (k + 1) as f64 * s),
    };
    let margin_x = k as f64 * s + s / 2.0;
    for p in 0..k {
        let cy = layout.row_center(p);
        let row = (0..k)
            .map(|o| centered_square(layout.column_center(o), cy, pt.joint[p][o].sqrt()))
            .collect();
        layout.cells.push(row);
        layout
            .row_margins
            .push(centered_square(margin_x, cy, pt.marginal_pred[p].sqrt()));
    }
    let bottom = layout.row_center(k);
    for o in 0..k {
        layout.col_margins.push(centered_square(
            layout.column_center(o),
            bottom,
            pt.marginal_obs[o].sqrt(),
        ));
    }
    layout.reference = centered_square(margin_x, bottom, 1.0);
    layout
}

/// Mosaic plot in the unit square `[0, 1]²`: one horizontal band per
/// predicted class (top to bottom) with height `p(pred)`, split left to right
/// into segments of width `p(obs | pred)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MosaicLayout {
    pub bands: Vec<Rect>,
    /// `[predicted][observed]`.
    pub segments: Vec<Vec<Rect>>,
}

impl MosaicLayout {
    pub fn translated(&self, dx: f64, dy: f64) -> MosaicLayout {
        MosaicLayout {
            bands: self.bands.iter().map(|b| b.translated(dx, dy)).collect(),
            segments: self
                .segments
                .iter()
                .map(|row| row.iter().map(|r| r.translated(dx, dy)).collect())
                .collect(),
        }
    }
}

pub fn mosaic_layout(pt: &ProbabilityTable) -> MosaicLayout {
    let k = pt.class_count();
    let mut bands = Vec::with_capacity(k);
    let mut segments = Vec::with_capacity(k);
    let mut top = 1.0;
    for p in 0..k {
        let bottom = if p + 1 == k { 0.0 } else { top - pt.marginal_pred[p] };
        let bottom = bottom.min(top);
        bands.push(Rect::span(0.0, 1.0, bottom, top));
        let mut x = 0.0;
        let row = (0..k)
            .map(|o| {
                let w = pt.cond_obs_given_pred[p][o];
                let r = Rect::span(x, x + w, bottom, top);
                x += w;
                r
            })
            .collect();
        segments.push(row);
        top = bottom;
    }
    MosaicLayout { bands, segments }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rect_area;

    fn table1() -> ConfusionMatrix {
        ConfusionMatrix::new(
            vec!["None".into(), "Mild".into(), "Severe".into()],
            vec![vec![1458, 48, 78], vec![205, 102, 144], vec![85, 34, 1666]],
        )
        .unwrap()
    }

    #[test]
    fn table1_probabilities() {
        let cm = table1();
        assert_eq!(cm.total(), 3820);
        let pt = probability_table(&cm).unwrap();
        assert!((pt.joint[0][0] - 1458.0 / 3820.0).abs() < 1e-15);
        assert!((pt.joint[0][0] - 0.381675).abs() < 1e-6);
        let expect = [1584.0 / 3820.0, 451.0 / 3820.0, 1785.0 / 3820.0];
        for (a, b) in pt.marginal_pred.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((pt.marginal_pred[0] - 0.414660).abs() < 1e-6);
        assert!((pt.marginal_pred[1] - 0.118063).abs() < 1e-6);
        assert!((pt.marginal_pred[2] - 0.467277).abs() < 1e-6);
        let mild = [205.0 / 451.0, 102.0 / 451.0, 144.0 / 451.0];
        for (a, b) in pt.cond_obs_given_pred[1].iter().zip(mild) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((pt.cond_obs_given_pred[1][0] - 0.454545).abs() < 1e-6);
        assert!((pt.cond_obs_given_pred[1][1] - 0.226164).abs() < 1e-6);
        assert!((pt.cond_obs_given_pred[1][2] - 0.319290).abs() < 1e-6);
    }

    #[test]
    fn table1_invariants() {
        let pt = probability_table(&table1()).unwrap();
        let sum: f64 = pt.joint.iter().flatten().sum();
        assert!((sum - 1.0).abs() < 1e-12);
        for p in 0..3 {
            let row: f64 = pt.cond_obs_given_pred[p].iter().sum();
            assert!((row - 1.0).abs() < 1e-12);
            for o in 0..3 {
                let bayes = pt.cond_obs_given_pred[p][o] * pt.marginal_pred[p];
                assert!((bayes - pt.joint[p][o]).abs() < 1e-12);
                let bayes = pt.cond_pred_given_obs[p][o] * pt.marginal_obs[o];
                assert!((bayes - pt.joint[p][o]).abs() < 1e-12);
            }
        }
        for o in 0..3 {
            let col: f64 = (0..3).map(|p| pt.cond_pred_given_obs[p][o]).sum();
            assert!((col - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_two_by_two() {
        let cm = ConfusionMatrix::new(vec!["a".into(), "b".into()], vec![vec![1, 1], vec![1, 1]]).unwrap();
        let pt = probability_table(&cm).unwrap();
        assert!(pt.joint.iter().flatten().all(|&j| j == 0.25));
        assert!(pt.cond_obs_given_pred.iter().flatten().all(|&c| c == 0.5));
        assert!(pt.cond_pred_given_obs.iter().flatten().all(|&c| c == 0.5));
        let m = mosaic_layout(&pt);
        for r in m.segments.iter().flatten() {
            assert_eq!((r.width(), r.height()), (0.5, 0.5));
        }
    }

    #[test]
    fn zero_marginal_row() {
        let cm = ConfusionMatrix::new(vec!["a".into(), "b".into()], vec![vec![3, 1], vec![0, 0]]).unwrap();
        let pt = probability_table(&cm).unwrap();
        assert_eq!(pt.cond_obs_given_pred[1], vec![0.0, 0.0]);
        let m = mosaic_layout(&pt);
        assert_eq!(m.bands[1].height(), 0.0);
        assert_eq!(rect_area(&m.segments[1][0]), 0.0);
    }

    #[test]
    fn empty_and_malformed() {
        let err = ConfusionMatrix::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(err.unwrap_err().code(), "EmptyMatrix");
        assert!(ConfusionMatrix::new(vec!["a".into(), "b".into()], vec![vec![1, 0]]).is_err());
        assert!(ConfusionMatrix::new(vec!["a".into(), "a".into()], vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn fluctuation_geometry() {
        let pt = probability_table(&table1()).unwrap();
        let f = fluctuation_layout(&pt, 1.2);
        let side = f.cells[0][0].width();
        assert!((side - (1458.0f64 / 3820.0).sqrt()).abs() < 1e-15);
        assert!((side - 0.617799).abs() < 1e-6);
        assert!((rect_area(&f.reference) - 1.0).abs() < 1e-15);
        // predicted class 0 is the top row
        assert!(f.cells[0][0].y_min > f.cells[1][0].y_max);
        for p in 0..3 {
            for o in 0..3 {
                assert!((rect_area(&f.cells[p][o]) - pt.joint[p][o]).abs() < 1e-12);
                assert!(f.grid.contains(&f.cells[p][o], 0.0));
            }
            assert!((rect_area(&f.row_margins[p]) - pt.marginal_pred[p]).abs() < 1e-12);
        }
        let zero = ConfusionMatrix::new(vec!["a".into(), "b".into()], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let fz = fluctuation_layout(&probability_table(&zero).unwrap(), 1.0);
        assert_eq!(rect_area(&fz.cells[0][1]), 0.0);
    }

    #[test]
    fn mosaic_matches_fluctuation_areas() {
        let pt = probability_table(&table1()).unwrap();
        let f = fluctuation_layout(&pt, 1.0);
        let m = mosaic_layout(&pt);
        for p in 0..3 {
            for o in 0..3 {
                assert!((rect_area(&f.cells[p][o]) - rect_area(&m.segments[p][o])).abs() < 1e-12);
            }
        }
        let heights: Vec<f64> = m.bands.iter().map(|b| b.height()).collect();
        assert!((heights[1] - 451.0 / 3820.0).abs() < 1e-12);
        let total: f64 = m.bands.iter().map(rect_area).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
