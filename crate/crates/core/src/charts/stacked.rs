use crate::blocks::{Segment, SegmentStack};
use crate::error::{Error, Result};
use crate::geometry::{Color, LiquidId, Rect};

#[derive(Debug, Clone, PartialEq)]
pub struct StackedLevel {
    pub label: String,
    pub color: Color,
}

/// Vertical stacked bars on a categorical axis.
///
/// `heights[c][l]` is the height of level `l` in category `c`; levels stack
/// bottom to top in `levels` order.
#[derive(Debug, Clone, PartialEq)]
pub struct StackedBarChart {
    categories: Vec<String>,
    levels: Vec<StackedLevel>,
    heights: Vec<Vec<f64>>,
    bar_width: f64,
    gap: f64,
}

fn check_unique(labels: &[&str], what: &str) -> Result<()> {
    for (i, a) in labels.iter().enumerate() {
        if labels[..i].contains(a) {
            return Err(Error::InvalidChart(format!("duplicate {what} label {a:?}")));
        }
    }
    Ok(())
}

impl StackedBarChart {
    pub fn new(
        categories: Vec<String>,
        levels: Vec<StackedLevel>,
        heights: Vec<Vec<f64>>,
        bar_width: f64,
        gap: f64,
    ) -> Result<StackedBarChart> {
        if categories.is_empty() || levels.is_empty() {
            return Err(Error::InvalidChart("need at least one category and one level".into()));
        }
        check_unique(&categories.iter().map(String::as_str).collect::<Vec<_>>(), "category")?;
        check_unique(&levels.iter().map(|l| l.label.as_str()).collect::<Vec<_>>(), "level")?;
        if heights.len() != categories.len() {
            return Err(Error::DimensionMismatch {
                expected: categories.len(),
                actual: heights.len(),
            });
        }
        for row in &heights {
            if row.len() != levels.len() {
                return Err(Error::DimensionMismatch {
                    expected: levels.len(),
                    actual: row.len(),
                });
            }
            if row.iter().any(|h| !(h.is_finite() && *h >= 0.0)) {
                return Err(Error::InvalidChart("heights must be finite and non-negative".into()));
            }
        }
        if !(bar_width > 0.0 && gap >= 0.0) {
            return Err(Error::InvalidChart(format!(
                "bar width {bar_width} must be positive and gap {gap} non-negative"
            )));
        }
        Ok(StackedBarChart {
            categories,
            levels,
            heights,
            bar_width,
            gap,
        })
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn levels(&self) -> &[StackedLevel] {
        &self.levels
    }

    pub fn heights(&self) -> &[Vec<f64>] {
        &self.heights
    }

    pub fn bar_width(&self) -> f64 {
        self.bar_width
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn category_index(&self, label: &str) -> Result<usize> {
        self.categories
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| Error::UnknownCategory(label.to_string()))
    }

    pub fn level_index(&self, label: &str) -> Result<usize> {
        self.levels
            .iter()
            .position(|l| l.label == label)
            .ok_or_else(|| Error::UnknownLevel(label.to_string()))
    }

    /// Left edge of the bar in slot `slot`.
    pub fn slot_x(&self, slot: usize) -> f64 {
        self.gap + slot as f64 * (self.bar_width + self.gap)
    }

    pub fn liquid_id(&self, category: usize, level: usize) -> LiquidId {
        liquid_id(&self.categories[category], &self.levels[level].label)
    }

    pub fn bar_total(&self, category: usize) -> f64 {
        self.heights[category].iter().sum()
    }

    pub fn max_total(&self) -> f64 {
        (0..self.categories.len())
            .map(|c| self.bar_total(c))
            .fold(0.0, f64::max)
    }

    /// Segments of one bar, bottom to top.
    pub fn stack(&self, category: usize) -> SegmentStack {
        SegmentStack {
            width: self.bar_width,
            segments: self
                .levels
                .iter()
                .enumerate()
                .map(|(l, _)| Segment::new(self.liquid_id(category, l), self.heights[category][l]))
                .collect(),
        }
    }

    /// Liquid rects of the static layout, bars in category order.
    pub fn segment_rects(&self) -> Vec<(LiquidId, usize, Rect)> {
        let mut out = Vec::new();
        for c in 0..self.categories.len() {
            let x = self.slot_x(c);
            let mut y = 0.0;
            for (l, h) in self.heights[c].iter().enumerate() {
                out.push((self.liquid_id(c, l), l, Rect::span(x, x + self.bar_width, y, y + h)));
                y += h;
            }
        }
        out
    }

    /// Total width of `slots` bar slots including the outer gaps.
    pub fn slots_width(&self, slots: usize) -> f64 {
        self.gap + slots as f64 * (self.bar_width + self.gap)
    }

    /// Same chart with `level` moved to the bottom of every bar.
    pub fn with_level_first(&self, level: &str) -> Result<StackedBarChart> {
        let l = self.level_index(level)?;
        let mut order: Vec<usize> = vec![l];
        order.extend((0..self.levels.len()).filter(|&i| i != l));
        let mut out = self.clone();
        out.levels = order.iter().map(|&i| self.levels[i].clone()).collect();
        out.heights = self
            .heights
            .iter()
            .map(|row| order.iter().map(|&i| row[i]).collect())
            .collect();
        Ok(out)
    }

    /// Same chart with `category` moved to index `target` of the category order.
    pub fn with_category_moved(&self, category: &str, target: usize) -> Result<StackedBarChart> {
        let from = self.category_index(category)?;
        if target >= self.categories.len() {
            return Err(Error::InvalidPosition(format!(
                "target {target} outside 0..{}",
                self.categories.len()
            )));
        }
        let mut out = self.clone();
        let cat = out.categories.remove(from);
        let row = out.heights.remove(from);
        out.categories.insert(target, cat);
        out.heights.insert(target, row);
        Ok(out)
    }
}

pub fn liquid_id(category: &str, level: &str) -> LiquidId {
    LiquidId(format!("{category}/{level}"))
}
