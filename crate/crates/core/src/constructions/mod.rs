//! Factories producing each retraction as a witnessed [`PiecewiseMap`].

mod builders;
mod map;
mod registry;
mod rules;

pub use builders::{
    constant_extension, extend_retraction, fractional_part_retraction, glue_retraction, identity_retraction,
    open_ball_retraction, radial_projection, sphere_retraction, Ambient, SphereWitness,
};
pub use map::{ConstructionId, LipschitzDecl, PiecewiseMap, CODOMAIN_PIECE};
pub use registry::{build, BuildOptions};
pub use rules::{ContinuousMapRule, MapRule};
