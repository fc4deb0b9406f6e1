//! Scalar fields on a retract and the composition extension operator.

mod field;
mod operator;

pub use field::{FieldExpr, ScalarField};
pub use operator::{extension_operator, sup_norm_estimate};
