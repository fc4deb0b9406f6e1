use super::builders::{
    constant_extension, extend_retraction, fractional_part_retraction, glue_retraction, open_ball_retraction,
    radial_projection, sphere_retraction, Ambient, SphereWitness,
};
use super::map::{ConstructionId, PiecewiseMap};
use super::rules::ContinuousMapRule;
use crate::error::{Error, Result};
use crate::model::{NormKind, PieceFamily, SetDescriptor, Tolerance, Vector};
use crate::scalar::Scalar;

/// Parameters for building a registered construction by id.
#[derive(Debug, Clone)]
pub struct BuildOptions<T> {
    /// `None` picks the construction's natural dimension (1 on the real line, 2 otherwise).
    pub dim: Option<usize>,
    pub norm: NormKind<T>,
    pub ambient: Ambient,
    /// Point of the unit sphere used at the origin; defaults to `e_1`.
    pub anchor: Option<Vector<T>>,
    pub allow_low_dim: bool,
    pub paper_witness: bool,
    pub tolerance: Tolerance<T>,
}

impl<T: Scalar> Default for BuildOptions<T> {
    fn default() -> Self {
        Self {
            dim: None,
            norm: NormKind::euclidean(),
            ambient: Ambient::Space,
            anchor: None,
            allow_low_dim: false,
            paper_witness: false,
            tolerance: Tolerance::default(),
        }
    }
}

impl ConstructionId {
    pub fn default_dim(self) -> usize {
        match self {
            Self::Fractional | Self::Glue => 1,
            _ => 2,
        }
    }
}

/// Builds the construction registered under `id`.
///
/// `glue` is the retraction of `R` onto `[0, 1]` by clamping; `extend` and
/// `const-extend` rebuild the sphere retraction by extending the radial
/// projection across the origin.
pub fn build<T: Scalar>(id: ConstructionId, opts: &BuildOptions<T>) -> Result<PiecewiseMap<T>> {
    let dim = opts.dim.unwrap_or(id.default_dim());
    if opts.paper_witness && id != ConstructionId::Sphere {
        return Err(Error::InvalidArgument("the literal witness only applies to the sphere construction".into()));
    }
    let line_only = |what: &str| -> Result<()> {
        if dim != 1 {
            return Err(Error::InvalidArgument(format!("{what} lives on the real line; dimension must be 1, got {dim}")));
        }
        Ok(())
    };
    let anchor = || -> Result<Vector<T>> {
        let a = match &opts.anchor {
            Some(a) => a.clone(),
            None => {
                let e = Vector::basis(dim, 0);
                e.scaled(opts.norm.norm(&e).recip()).expect("unit vector")
            }
        };
        Ok(a)
    };
    let map = match id {
        ConstructionId::Fractional => {
            line_only("the fractional-part retraction")?;
            fractional_part_retraction()
        }
        ConstructionId::Glue => {
            line_only("the glued retraction onto [0, 1]")?;
            let a = PieceFamily::Constant { set: SetDescriptor::interval(T::zero(), T::one())? };
            let complement = a.complement_family().expect("interval complement");
            glue_retraction(a, complement, ContinuousMapRule::clamp(T::zero(), T::one())?)?
        }
        ConstructionId::Extend | ConstructionId::ConstExtend => {
            let inner = radial_projection(dim, opts.norm, opts.ambient)?;
            let u_pieces = inner.witness().clone();
            if id == ConstructionId::Extend {
                extend_retraction(u_pieces, inner, ContinuousMapRule::Constant { value: anchor()? })?
            } else {
                constant_extension(u_pieces, inner, anchor()?)?
            }
        }
        ConstructionId::Sphere => {
            let witness = if opts.paper_witness { SphereWitness::Literal } else { SphereWitness::Augmented };
            sphere_retraction(dim, opts.norm, anchor()?, opts.ambient, witness)?
        }
        ConstructionId::OpenBall => open_ball_retraction(dim, opts.norm, opts.allow_low_dim)?,
    };
    Ok(map.with_tolerance(opts.tolerance))
}
