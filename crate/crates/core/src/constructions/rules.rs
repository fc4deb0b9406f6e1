use crate::error::{Error, Result};
use crate::model::{NormKind, Region, SetDescriptor, Vector};
use crate::scalar::Scalar;

/// Maps that are continuous on their whole declared domain by construction.
/// These are the only admissible off-`A` branches `g` of a glued retraction.
#[derive(Debug, Clone, PartialEq)]
pub enum ContinuousMapRule<T> {
    Constant { value: Vector<T> },
    /// `x ↦ min(max(x, lo), hi)` on `R`.
    Clamp1D { lo: T, hi: T },
    /// `x ↦ x / ‖x‖`, defined off the origin.
    RadialProjection { norm: NormKind<T> },
}

impl<T: Scalar> ContinuousMapRule<T> {
    pub fn clamp(lo: T, hi: T) -> Result<Self> {
        SetDescriptor::interval(lo, hi)?;
        Ok(Self::Clamp1D { lo, hi })
    }

    pub fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        match self {
            Self::Constant { value } => {
                if value.dim() != x.dim() {
                    return Err(Error::DimensionMismatch { expected: value.dim(), found: x.dim() });
                }
                Ok(value.clone())
            }
            Self::Clamp1D { lo, hi } => {
                if x.dim() != 1 {
                    return Err(Error::DimensionMismatch { expected: 1, found: x.dim() });
                }
                Ok(Vector::from_raw(vec![x[0].max(*lo).min(*hi)]))
            }
            Self::RadialProjection { norm } => radial(*norm, x).ok_or(Error::OutsideDomain),
        }
    }

    /// Whether the rule is defined (and continuous) at every point of `set` in `R^dim`.
    pub fn defined_on(&self, set: &SetDescriptor<T>, dim: usize) -> Result<bool> {
        match self {
            Self::Constant { value } => Ok(value.dim() == dim),
            Self::Clamp1D { .. } => Ok(dim == 1),
            Self::RadialProjection { .. } => Ok(!set.contains_exact(&Vector::zeros(dim))?),
        }
    }

    /// Global Lipschitz constant, when one exists.
    pub fn lipschitz(&self) -> Option<T> {
        match self {
            Self::Constant { .. } => Some(T::zero()),
            Self::Clamp1D { .. } => Some(T::one()),
            Self::RadialProjection { .. } => None,
        }
    }
}

pub(crate) fn radial<T: Scalar>(norm: NormKind<T>, x: &Vector<T>) -> Option<Vector<T>> {
    let r = norm.norm(x);
    if r.is_zero() {
        return None;
    }
    Some(Vector::from_raw(x.coords().iter().map(|&c| c / r).collect()))
}

/// Closed-form evaluation rule of a [`super::PiecewiseMap`].
#[derive(Debug, Clone, PartialEq)]
pub enum MapRule<T> {
    Identity,
    /// `x ↦ x - E(x)` on `R`.
    FractionalPart,
    /// `x ↦ x / ‖x‖`, undefined at the origin.
    RadialProjection { norm: NormKind<T> },
    /// `x ↦ x / ‖x‖` off the origin, `anchor` at the origin.
    SphereRetraction { norm: NormKind<T>, anchor: Vector<T> },
    /// `x ↦ (1 - E(‖x‖)/‖x‖) x`, with the origin fixed.
    OpenBallRetraction { norm: NormKind<T> },
    /// `inner` on `inside`, `outside` elsewhere.
    Glue { inside: Region<T>, inner: Box<MapRule<T>>, outside: ContinuousMapRule<T> },
    /// `x ↦ factor · inner(x)`. Corruption used by negative controls.
    Scaled { factor: T, inner: Box<MapRule<T>> },
    /// `inner(x) + height · e_axis` where `x_axis >= threshold`. Corruption used by negative controls.
    Jump { axis: usize, threshold: T, height: T, inner: Box<MapRule<T>> },
}

impl<T: Scalar> MapRule<T> {
    pub fn apply(&self, x: &Vector<T>) -> Result<Vector<T>> {
        match self {
            Self::Identity => Ok(x.clone()),
            Self::FractionalPart => {
                if x.dim() != 1 {
                    return Err(Error::DimensionMismatch { expected: 1, found: x.dim() });
                }
                Ok(Vector::from_raw(vec![crate::model::frac(x[0])]))
            }
            Self::RadialProjection { norm } => radial(*norm, x).ok_or(Error::OutsideDomain),
            Self::SphereRetraction { norm, anchor } => Ok(radial(*norm, x).unwrap_or_else(|| anchor.clone())),
            Self::OpenBallRetraction { norm } => {
                let r = norm.norm(x);
                if r.is_zero() {
                    return Ok(x.clone());
                }
                // (r - E(r)) is exact for r >= 1, so this form avoids cancellation in 1 - E(r)/r
                let scale = (r - r.floor()) / r;
                Ok(Vector::from_raw(x.coords().iter().map(|&c| c * scale).collect()))
            }
            Self::Glue { inside, inner, outside } => {
                if inside.contains_exact(x)? {
                    inner.apply(x)
                } else {
                    outside.apply(x)
                }
            }
            Self::Scaled { factor, inner } => {
                let y = inner.apply(x)?;
                y.scaled(*factor).ok_or_else(|| Error::NonFinite(factor.to_string()))
            }
            Self::Jump { axis, threshold, height, inner } => {
                let y = inner.apply(x)?;
                if x[*axis] >= *threshold {
                    let mut c = Vec::from(y);
                    c[*axis] = c[*axis] + *height;
                    Ok(Vector::from_raw(c))
                } else {
                    Ok(y)
                }
            }
        }
    }
}
