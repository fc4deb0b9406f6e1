//! Piecewise continuous retractions in finite-dimensional normed spaces.
//!
//! Every retraction is built as a [`PiecewiseMap`]: a closed-form map together
//! with an increasing sequence of closed sets covering its domain, on each of
//! which the map is continuous. The [`verification`] module samples each
//! property such a map is claimed to have and reports pass/fail.
//!
//! The core is generic over the scalar type ([`Scalar`], implemented for `f32`
//! and `f64`); the `*64` aliases below fix it to `f64`.

pub mod constructions;
pub mod error;
pub mod function_ops;
pub mod model;
pub mod sampling;
mod scalar;
pub mod verification;

pub use constructions::{
    build, constant_extension, extend_retraction, fractional_part_retraction, glue_retraction, identity_retraction,
    open_ball_retraction, radial_projection, sphere_retraction, Ambient, BuildOptions, ConstructionId,
    ContinuousMapRule, PiecewiseMap, SphereWitness,
};
pub use error::{Error, Result};
pub use function_ops::{extension_operator, sup_norm_estimate, FieldExpr, ScalarField};
pub use model::{entier, frac, norm, NormKind, PieceFamily, Region, SetDescriptor, Tolerance, Vector};
pub use sampling::{SampleStrategy, Sampler};
pub use scalar::Scalar;

pub type Vector64 = Vector<f64>;
pub type Vector32 = Vector<f32>;
pub type NormKind64 = NormKind<f64>;
pub type SetDescriptor64 = SetDescriptor<f64>;
pub type PieceFamily64 = PieceFamily<f64>;
pub type Region64 = Region<f64>;
pub type Tolerance64 = Tolerance<f64>;
pub type PiecewiseMap64 = PiecewiseMap<f64>;
pub type PiecewiseMap32 = PiecewiseMap<f32>;
pub type ScalarField64 = ScalarField<f64>;
pub type Sampler64 = Sampler<f64>;
