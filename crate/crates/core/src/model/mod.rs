//! Points, norms, the entier function, closed-set descriptors and increasing
//! piece families.

mod family;
mod norm;
mod set;
mod vector;

pub use family::PieceFamily;
pub use norm::{entier, frac, norm, NormKind, Tolerance};
pub use set::{Region, SetDescriptor};
pub use vector::Vector;
