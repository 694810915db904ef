use crate::error::{Error, Result};
use crate::geometry::{Axis, Rect};
use crate::interp::{lerp, EasedTime};

const CONTAINMENT_SLACK: f64 = 1e-12;

/// Translates `liquid` by `lerp(0, offset, u)` along `axis` inside a fixed
/// container.
///
/// The path is a straight segment, so checking both ends covers every
/// intermediate position. Escaping is an error, never a clamp.
pub fn shift_at(
    liquid: &Rect,
    container: &Rect,
    axis: Axis,
    offset: f64,
    u: EasedTime,
) -> Result<Rect> {
    let end = liquid.translated_along(axis, offset);
    if !container.contains(liquid, CONTAINMENT_SLACK) {
        return Err(Error::EscapesContainer(format!(
            "{liquid} is not inside {container} at the start"
        )));
    }
    if !container.contains(&end, CONTAINMENT_SLACK) {
        return Err(Error::EscapesContainer(format!(
            "{end} is not inside {container} after offset {offset}"
        )));
    }
    Ok(liquid.translated_along(axis, lerp(0.0, offset, u)))
}
