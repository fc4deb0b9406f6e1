//! Deliberately broken maps, one per check, used as negative controls.

use crate::constructions::{MapRule, PiecewiseMap};
use crate::error::{Error, Result};
use crate::model::PieceFamily;
use crate::scalar::Scalar;

/// `x ↦ map(x) / 2`: no longer fixes the retract.
pub fn halved<T: Scalar>(map: &PiecewiseMap<T>) -> PiecewiseMap<T> {
    let rule = MapRule::Scaled { factor: T::of(0.5), inner: Box::new(map.rule().clone()) };
    map.clone().with_rule(rule).with_label(format!("halved {}", map.label()))
}

/// Same map, with the first `len` witness pieces listed in decreasing order.
pub fn shrinking_witness<T: Scalar>(map: &PiecewiseMap<T>, len: usize) -> Result<PiecewiseMap<T>> {
    let pieces = (0..len.max(2)).rev().map(|k| map.piece(k)).collect();
    let witness = PieceFamily::explicit(pieces, false)?;
    Ok(map.clone().with_witness(witness).with_label(format!("{} with shrinking witness", map.label())))
}

/// The identity in place of the map, keeping its domain and cover.
pub fn identity_in_place<T: Scalar>(map: &PiecewiseMap<T>) -> PiecewiseMap<T> {
    map.clone().with_rule(MapRule::Identity).with_label(format!("identity in place of {}", map.label()))
}

/// Adds `height` to coordinate `axis` of the output wherever `x[axis] >= threshold`.
pub fn with_jump<T: Scalar>(map: &PiecewiseMap<T>, axis: usize, threshold: T, height: T) -> Result<PiecewiseMap<T>> {
    if axis >= map.dim() {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range for dimension {}", map.dim())));
    }
    let rule = MapRule::Jump { axis, threshold, height, inner: Box::new(map.rule().clone()) };
    Ok(map.clone().with_rule(rule).with_label(format!("{} with a jump", map.label())))
}
