use crate::error::{Error, Result};
use crate::geometry::Rect;

/// Tolerance on the unit total area of a histogram.
pub const HISTOGRAM_AREA_TOLERANCE: f64 = 1e-9;

/// Equal-width histogram whose bar areas sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    edges: Vec<f64>,
    densities: Vec<f64>,
}

pub(crate) fn equal_edges(lo: f64, hi: f64, bins: usize) -> Vec<f64> {
    let span = hi - lo;
    let mut edges: Vec<f64> = (0..=bins).map(|i| lo + span * i as f64 / bins as f64).collect();
    edges[bins] = hi;
    edges
}

fn check_range(lo: f64, hi: f64, bins: usize) -> Result<()> {
    if bins == 0 {
        return Err(Error::InvalidHistogram("bin count must be at least 1".into()));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidHistogram(format!("invalid range [{lo}, {hi}]")));
    }
    Ok(())
}

impl Histogram {
    pub fn new(edges: Vec<f64>, densities: Vec<f64>) -> Result<Histogram> {
        if edges.len() != densities.len() + 1 || densities.is_empty() {
            return Err(Error::InvalidHistogram(format!(
                "{} edges cannot delimit {} bins",
                edges.len(),
                densities.len()
            )));
        }
        if edges.iter().any(|e| !e.is_finite()) || edges.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidHistogram("edges must be finite and strictly increasing".into()));
        }
        let width = (edges[edges.len() - 1] - edges[0]) / densities.len() as f64;
        if edges
            .windows(2)
            .any(|w| ((w[1] - w[0]) - width).abs() > 1e-9 * width.max(1.0))
        {
            return Err(Error::InvalidHistogram("bins must have equal widths".into()));
        }
        if densities.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::InvalidHistogram("densities must be finite and non-negative".into()));
        }
        let h = Histogram { edges, densities };
        let area = h.area();
        if (area - 1.0).abs() > HISTOGRAM_AREA_TOLERANCE {
            return Err(Error::InvalidHistogram(format!(
                "total area is {area}, expected 1"
            )));
        }
        Ok(h)
    }

    /// Normalizes non-negative per-bin counts over `[lo, hi]`.
    pub fn from_counts(counts: &[f64], lo: f64, hi: f64) -> Result<Histogram> {
        check_range(lo, hi, counts.len())?;
        if counts.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::InvalidHistogram("counts must be finite and non-negative".into()));
        }
        let total: f64 = counts.iter().sum();
        if total <= 0.0 {
            return Err(Error::EmptyData);
        }
        let edges = equal_edges(lo, hi, counts.len());
        let width = (hi - lo) / counts.len() as f64;
        let densities = counts.iter().map(|c| c / (total * width)).collect();
        Histogram::new(edges, densities)
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    pub fn bin_count(&self) -> usize {
        self.densities.len()
    }

    pub fn range(&self) -> (f64, f64) {
        (self.edges[0], self.edges[self.edges.len() - 1])
    }

    pub fn bin_width(&self, i: usize) -> f64 {
        self.edges[i + 1] - self.edges[i]
    }

    pub fn area(&self) -> f64 {
        self.densities
            .iter()
            .enumerate()
            .map(|(i, d)| d * self.bin_width(i))
            .sum()
    }

    pub fn max_density(&self) -> f64 {
        self.densities.iter().copied().fold(0.0, f64::max)
    }

    pub fn bar_rects(&self) -> Vec<Rect> {
        self.densities
            .iter()
            .enumerate()
            .map(|(i, d)| Rect::span(self.edges[i], self.edges[i + 1], 0.0, *d))
            .collect()
    }
}

/// Bins `values` into `bin_count` equal-width bins over `range`.
///
/// Bins are half-open `[eᵢ, eᵢ₊₁)` except the last, which also takes the
/// upper range bound.
pub fn histogram_from_samples(values: &[f64], bin_count: usize, range: (f64, f64)) -> Result<Histogram> {
    let (lo, hi) = range;
    check_range(lo, hi, bin_count)?;
    if values.is_empty() {
        return Err(Error::EmptyData);
    }
    let edges = equal_edges(lo, hi, bin_count);
    let width = (hi - lo) / bin_count as f64;
    let mut counts = vec![0.0; bin_count];
    for &v in values {
        if !(v >= lo && v <= hi) {
            return Err(Error::ValueOutOfRange { value: v, lo, hi });
        }
        counts[bin_index(&edges, width, v)] += 1.0;
    }
    Histogram::from_counts(&counts, lo, hi)
}

pub(crate) fn bin_index(edges: &[f64], width: f64, v: f64) -> usize {
    let n = edges.len() - 1;
    let mut i = (((v - edges[0]) / width).floor().max(0.0) as usize).min(n - 1);
    // the division can land one bin off next to an edge
    if i > 0 && v < edges[i] {
        i -= 1;
    }
    if i < n - 1 && v >= edges[i + 1] {
        i += 1;
    }
    i
}
