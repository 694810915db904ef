//! Runtime checks of the liquid bookkeeping of a script.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::geometry::{overlap_area, rect_area, Frame, LiquidId, Rect};
use crate::interp::TimeParam;

use super::{evaluate, Conservation, TransitionScript, TINT_DEADBAND};

/// Largest overlap allowed between rects of distinct liquids.
pub const OCCLUSION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub samples: usize,
    /// Largest relative drift of a liquid area from its initial value.
    pub max_area_drift: f64,
    /// Largest overlap seen between distinct liquids.
    pub max_overlap: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("liquid {liquid} has area {actual} at t={t}, expected {expected}")]
    AreaDrift {
        t: f64,
        liquid: LiquidId,
        expected: f64,
        actual: f64,
    },
    #[error("total area {area} and tint {tint} disagree at t={t}")]
    TintMismatch { t: f64, area: f64, tint: f64 },
    #[error("liquids {a} and {b} overlap by {overlap} at t={t}")]
    Overlap {
        t: f64,
        a: LiquidId,
        b: LiquidId,
        overlap: f64,
    },
    #[error("frame at t={t} differs from the static layout: {detail}")]
    Endpoint {
        t: f64,
        liquid: Option<LiquidId>,
        detail: String,
    },
    #[error("stages {stage} and {next} do not join: {detail}", next = stage + 1)]
    Discontinuity {
        stage: usize,
        /// Global time of the boundary.
        t: f64,
        liquid: Option<LiquidId>,
        detail: String,
    },
}

impl Violation {
    pub fn t(&self) -> f64 {
        match self {
            Violation::AreaDrift { t, .. }
            | Violation::TintMismatch { t, .. }
            | Violation::Overlap { t, .. }
            | Violation::Endpoint { t, .. }
            | Violation::Discontinuity { t, .. } => *t,
        }
    }

    pub fn liquid(&self) -> Option<&LiquidId> {
        match self {
            Violation::AreaDrift { liquid, .. } => Some(liquid),
            Violation::Overlap { a, .. } => Some(a),
            Violation::Endpoint { liquid, .. } | Violation::Discontinuity { liquid, .. } => liquid.as_ref(),
            Violation::TintMismatch { .. } => None,
        }
    }
}

/// Area and bounding box of every liquid, ignoring zero-area rects.
fn signature(frame: &Frame) -> BTreeMap<LiquidId, (f64, Option<Rect>)> {
    let mut out: BTreeMap<LiquidId, (f64, Option<Rect>)> = BTreeMap::new();
    for (id, r) in frame.liquid_rects() {
        let a = rect_area(r);
        let entry = out.entry(id.clone()).or_insert((0.0, None));
        entry.0 += a;
        if a > 0.0 {
            entry.1 = Some(entry.1.map_or(*r, |b| b.union(r)));
        }
    }
    out
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn rects_close(a: &Rect, b: &Rect, tol: f64) -> bool {
    a.corners()
        .iter()
        .zip(b.corners().iter())
        .all(|(x, y)| close(*x, *y, tol))
}

/// First difference between two frames in viewport or per-liquid area and
/// extent, within `tol`.
pub fn compare_frames(a: &Frame, b: &Frame, tol: f64) -> Option<(Option<LiquidId>, String)> {
    if !rects_close(&a.viewport, &b.viewport, tol) {
        return Some((None, format!("viewport {} vs {}", a.viewport, b.viewport)));
    }
    let (sa, sb) = (signature(a), signature(b));
    let ids: BTreeSet<&LiquidId> = sa.keys().chain(sb.keys()).collect();
    for id in ids {
        let (aa, ba) = sa.get(id).copied().unwrap_or((0.0, None));
        let (ab, bb) = sb.get(id).copied().unwrap_or((0.0, None));
        if !close(aa, ab, tol) {
            return Some((Some(id.clone()), format!("area {aa} vs {ab}")));
        }
        let same_extent = match (ba, bb) {
            (None, None) => true,
            (Some(x), Some(y)) => rects_close(&x, &y, tol),
            _ => false,
        };
        if !same_extent {
            let show = |r: Option<Rect>| r.map_or("nothing".to_string(), |r| r.to_string());
            return Some((Some(id.clone()), format!("extent {} vs {}", show(ba), show(bb))));
        }
    }
    None
}

fn check_overlaps(frame: &Frame, t: f64, max_overlap: &mut f64) -> Result<(), Violation> {
    let rects: Vec<(&LiquidId, &Rect)> = frame.liquid_rects().filter(|(_, r)| rect_area(r) > 0.0).collect();
    for (i, (ia, ra)) in rects.iter().enumerate() {
        for (ib, rb) in &rects[i + 1..] {
            if ia == ib {
                continue;
            }
            let overlap = overlap_area(ra, rb);
            *max_overlap = max_overlap.max(overlap);
            if overlap > OCCLUSION_TOLERANCE {
                return Err(Violation::Overlap {
                    t,
                    a: (*ia).clone(),
                    b: (*ib).clone(),
                    overlap,
                });
            }
        }
    }
    Ok(())
}

/// Samples `script` at `samples` uniform times and checks area
/// conservation (or the tint rule), occlusion-freedom, endpoint fidelity
/// and continuity between stages. Returns the first violation found.
pub fn verify_script(script: &TransitionScript, samples: usize, tol: f64) -> Result<VerifyReport, Violation> {
    let samples = samples.max(2);
    let mut report = VerifyReport {
        samples,
        max_area_drift: 0.0,
        max_overlap: 0.0,
    };

    for (t, expected) in [(0.0, script.initial()), (1.0, script.final_frame())] {
        let frame = evaluate(script, TimeParam::clamped(t));
        if let Some((liquid, detail)) = compare_frames(&frame, expected, tol) {
            return Err(Violation::Endpoint { t, liquid, detail });
        }
    }

    let total = script.total_weight();
    let mut start = 0.0;
    for (k, pair) in script.stages().windows(2).enumerate() {
        start += pair[0].weight();
        if let Some((liquid, detail)) = compare_frames(&pair[0].end_frame(), &pair[1].start_frame(), tol) {
            return Err(Violation::Discontinuity {
                stage: k,
                t: start / total,
                liquid,
                detail,
            });
        }
    }

    let reference = evaluate(script, TimeParam::START).liquid_areas();
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let frame = evaluate(script, TimeParam::clamped(t));
        match script.conservation() {
            Conservation::PerLiquid => {
                let areas = frame.liquid_areas();
                let ids: BTreeSet<&LiquidId> = areas.keys().chain(reference.keys()).collect();
                for id in ids {
                    let expected = reference.get(id).copied().unwrap_or(0.0);
                    let actual = areas.get(id).copied().unwrap_or(0.0);
                    let drift = (actual - expected).abs() / expected.abs().max(1e-300);
                    if expected != actual {
                        report.max_area_drift = report.max_area_drift.max(drift);
                    }
                    if (actual - expected).abs() > tol * expected.abs().max(1e-12) {
                        return Err(Violation::AreaDrift {
                            t,
                            liquid: id.clone(),
                            expected,
                            actual,
                        });
                    }
                }
            }
            Conservation::TintedTotal => {
                let area = frame.total_liquid_area();
                let off = (area - 1.0).abs() > TINT_DEADBAND;
                if off != (frame.tint != 0.0) {
                    return Err(Violation::TintMismatch {
                        t,
                        area,
                        tint: frame.tint,
                    });
                }
                report.max_area_drift = report.max_area_drift.max((area - 1.0).abs());
            }
        }
        check_overlaps(&frame, t, &mut report.max_overlap)?;
    }
    Ok(report)
}
