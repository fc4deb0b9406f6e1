use super::map::{landmarks_of, LipschitzDecl, PiecewiseMap, CODOMAIN_PIECE};
use super::rules::{ContinuousMapRule, MapRule};
use crate::error::{Error, Result};
use crate::model::{NormKind, PieceFamily, Region, SetDescriptor, Tolerance, Vector};
use crate::sampling::Sampler;
use crate::scalar::Scalar;

/// Seed for the sampled precondition checks run by the constructors.
const PRECONDITION_SEED: u64 = 0x5_eed0_f91e;
const PRECONDITION_SAMPLES: usize = 256;
const PRECONDITION_PIECES: [usize; 3] = [1, 8, 64];
/// Pieces scanned when checking that `g` is defined on the complement.
const DEFINED_ON_PIECES: usize = 64;

/// Whether the ambient space is all of `R^d` or its closed unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ambient {
    #[default]
    Space,
    UnitBall,
}

impl Ambient {
    fn outer<T: Scalar>(self) -> Option<T> {
        match self {
            Self::Space => None,
            Self::UnitBall => Some(T::one()),
        }
    }
}

/// Which cover accompanies the sphere retraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SphereWitness {
    /// `{0} ∪ {‖x‖ >= 1/n}`: covers the whole domain.
    #[default]
    Augmented,
    /// `{‖x‖ >= 1/n}` alone, which never covers the origin.
    Literal,
}

/// `x ↦ x - E(x)`, a piecewise continuous retraction of `R` onto `[0, 1)`.
pub fn fractional_part_retraction<T: Scalar>() -> PiecewiseMap<T> {
    let target_pieces = PieceFamily::HalfOpenInterval { lo: T::zero(), hi: T::one() };
    let landmarks = (-3..=3)
        .flat_map(|k| [k as f64, k as f64 + 0.5])
        .map(|t| Vector::from_raw(vec![T::of(t)]))
        .collect();
    PiecewiseMap {
        label: "fractional".into(),
        dim: 1,
        norm: NormKind::Max,
        domain: Region::full_space(),
        sample_window: SetDescriptor::Interval { lo: T::of(-5.0), hi: T::of(5.0) },
        target: target_pieces.union_region(),
        target_pieces,
        rule: MapRule::FractionalPart,
        witness: PieceFamily::UnitIntervals,
        lipschitz: LipschitzDecl::Constant(T::one()),
        landmarks,
        tolerance: Tolerance::default(),
    }
}

/// The identity on `A = ⋃ a_pieces`, viewed as a retraction of `A` onto itself.
pub fn identity_retraction<T: Scalar>(a_pieces: PieceFamily<T>, dim: usize, norm: NormKind<T>) -> Result<PiecewiseMap<T>> {
    check_family_dim(&a_pieces, dim)?;
    let window = a_pieces.piece(CODOMAIN_PIECE);
    Ok(PiecewiseMap {
        label: "identity".into(),
        dim,
        norm,
        domain: a_pieces.union_region(),
        landmarks: landmarks_of(&a_pieces.piece(1), dim),
        sample_window: window,
        target: a_pieces.union_region(),
        target_pieces: a_pieces.clone(),
        rule: MapRule::Identity,
        witness: a_pieces,
        lipschitz: LipschitzDecl::Constant(T::one()),
        tolerance: Tolerance::default(),
    })
}

/// `x ↦ x / ‖x‖` on the punctured ambient space, with the cover `{‖x‖ >= 1/n}`.
pub fn radial_projection<T: Scalar>(dim: usize, norm: NormKind<T>, ambient: Ambient) -> Result<PiecewiseMap<T>> {
    if dim == 0 {
        return Err(Error::EmptyVector);
    }
    let outer = ambient.outer();
    let witness = PieceFamily::ShrinkingHole { norm, dim, outer, include_origin: false };
    Ok(PiecewiseMap {
        label: "radial".into(),
        dim,
        norm,
        domain: witness.union_region(),
        sample_window: SetDescriptor::NormBand { norm, lo: T::zero(), hi: outer },
        target: Region::closed(SetDescriptor::unit_sphere(norm)),
        target_pieces: PieceFamily::Constant { set: SetDescriptor::unit_sphere(norm) },
        rule: MapRule::RadialProjection { norm },
        landmarks: landmarks_of(&witness.piece(1), dim),
        witness,
        lipschitz: LipschitzDecl::PerIndex { slope: T::of(2.0) },
        tolerance: Tolerance::default(),
    })
}

/// Identity on `A`, `g` on `X \ A`, with cover `H_n = F_n ∪ G_n`.
pub fn glue_retraction<T: Scalar>(
    a_pieces: PieceFamily<T>,
    complement_pieces: PieceFamily<T>,
    g: ContinuousMapRule<T>,
) -> Result<PiecewiseMap<T>> {
    let dim = a_pieces
        .dim()
        .or_else(|| complement_pieces.dim())
        .ok_or_else(|| Error::InvalidArgument("cannot infer the ambient dimension from the pieces".into()))?;
    check_family_dim(&a_pieces, dim)?;
    check_family_dim(&complement_pieces, dim)?;
    let tol = Tolerance::<T>::default();
    let a = a_pieces.union_region();
    let outside = complement_pieces.union_region();

    check_defined_on(&g, &complement_pieces, dim)?;
    for n in PRECONDITION_PIECES {
        for x in precondition_samples(&a_pieces.piece(n), dim)? {
            if outside.contains_slack(&x, -tol.membership_tol)? {
                return Err(Error::InvalidArgument("A-pieces and complement pieces overlap".into()));
            }
        }
        check_g_lands_in(&g, &complement_pieces.piece(n), dim, &a, &tol)?;
    }

    let norm = NormKind::Max;
    let mut landmarks = landmarks_of(&a_pieces.piece(1), dim);
    landmarks.extend(landmarks_of(&complement_pieces.piece(1), dim));
    let window = SetDescriptor::union(vec![a_pieces.piece(CODOMAIN_PIECE), complement_pieces.piece(4)]);
    let lipschitz = LipschitzDecl::Max(vec![
        LipschitzDecl::Constant(T::one()),
        g.lipschitz().map_or(LipschitzDecl::Unknown, LipschitzDecl::Constant),
    ]);
    Ok(PiecewiseMap {
        label: "glue".into(),
        dim,
        norm,
        domain: Region::Union { members: vec![a.clone(), outside] },
        sample_window: window,
        target: a.clone(),
        target_pieces: a_pieces.clone(),
        rule: MapRule::Glue { inside: a, inner: Box::new(MapRule::Identity), outside: g },
        witness: PieceFamily::Union { members: vec![a_pieces, complement_pieces] },
        lipschitz,
        landmarks,
        tolerance: tol,
    })
}

/// Extends a retraction `inner: U → A` to the whole ambient space by `g` off `U`.
/// The complement's closed decomposition is derived from `u_pieces`.
pub fn extend_retraction<T: Scalar>(
    u_pieces: PieceFamily<T>,
    inner: PiecewiseMap<T>,
    g: ContinuousMapRule<T>,
) -> Result<PiecewiseMap<T>> {
    let dim = inner.dim;
    check_family_dim(&u_pieces, dim)?;
    let complement = u_pieces.complement_family().ok_or_else(|| {
        Error::Unsupported("no closed-form decomposition of the complement of this family".into())
    })?;
    let tol = inner.tolerance;
    let u = u_pieces.union_region();
    let a = inner.target.clone();

    for x in precondition_samples(&inner.codomain_sample_set(), dim)? {
        if !u.contains(&x, &tol)? {
            return Err(Error::InvalidArgument("the retract A must lie inside U".into()));
        }
    }
    check_defined_on(&g, &complement, dim)?;
    for n in PRECONDITION_PIECES {
        check_g_lands_in(&g, &complement.piece(n), dim, &a, &tol)?;
    }

    let mut landmarks = inner.landmarks.clone();
    landmarks.extend(landmarks_of(&complement.piece(1), dim));
    landmarks.dedup();
    let window = SetDescriptor::union(vec![inner.sample_window.clone(), complement.piece(4)]);
    let lipschitz = LipschitzDecl::Max(vec![
        inner.lipschitz.clone(),
        g.lipschitz().map_or(LipschitzDecl::Unknown, LipschitzDecl::Constant),
    ]);
    Ok(PiecewiseMap {
        label: "extend".into(),
        dim,
        norm: inner.norm,
        domain: Region::Union { members: vec![u.clone(), complement.union_region()] },
        sample_window: window,
        target: a,
        target_pieces: inner.target_pieces,
        rule: MapRule::Glue { inside: u, inner: Box::new(inner.rule), outside: g },
        witness: PieceFamily::Union { members: vec![inner.witness, complement] },
        lipschitz,
        landmarks,
        tolerance: tol,
    })
}

/// [`extend_retraction`] with the constant map `a0` off `U`; `a0` must lie in `A`.
pub fn constant_extension<T: Scalar>(
    u_pieces: PieceFamily<T>,
    inner: PiecewiseMap<T>,
    a0: Vector<T>,
) -> Result<PiecewiseMap<T>> {
    if a0.dim() != inner.dim {
        return Err(Error::DimensionMismatch { expected: inner.dim, found: a0.dim() });
    }
    if !inner.target.contains(&a0, &inner.tolerance)? {
        return Err(Error::InvalidArgument("a0 must lie in the retract A".into()));
    }
    let mut map = extend_retraction(u_pieces, inner, ContinuousMapRule::Constant { value: a0.clone() })?;
    map.label = "const-extend".into();
    map.landmarks.push(a0);
    Ok(map)
}

/// `x ↦ x / ‖x‖` off the origin and `anchor` at the origin: a piecewise
/// continuous retraction of the ambient space onto its unit sphere.
pub fn sphere_retraction<T: Scalar>(
    dim: usize,
    norm: NormKind<T>,
    anchor: Vector<T>,
    ambient: Ambient,
    witness: SphereWitness,
) -> Result<PiecewiseMap<T>> {
    if dim == 0 {
        return Err(Error::EmptyVector);
    }
    if anchor.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: anchor.dim() });
    }
    let tol = Tolerance::default();
    let r = norm.norm(&anchor);
    if (r - T::one()).abs() > tol.identity_tol {
        return Err(Error::NotOnSphere(r.to_string()));
    }
    let outer = ambient.outer();
    let include_origin = witness == SphereWitness::Augmented;
    let origin = Vector::zeros(dim);
    let mut landmarks = vec![origin, anchor.clone()];
    landmarks.extend(anchor.scaled(T::of(-1.0)));
    Ok(PiecewiseMap {
        label: "sphere".into(),
        dim,
        norm,
        domain: Region::closed(SetDescriptor::NormBand { norm, lo: T::zero(), hi: outer }),
        sample_window: SetDescriptor::NormBand { norm, lo: T::zero(), hi: outer },
        target: Region::closed(SetDescriptor::unit_sphere(norm)),
        target_pieces: PieceFamily::Constant { set: SetDescriptor::unit_sphere(norm) },
        rule: MapRule::SphereRetraction { norm, anchor },
        witness: PieceFamily::ShrinkingHole { norm, dim, outer, include_origin },
        lipschitz: LipschitzDecl::PerIndex { slope: T::of(2.0) },
        landmarks,
        tolerance: tol,
    })
}

/// `x ↦ (1 - E(‖x‖)/‖x‖) x` with `0 ↦ 0`: a piecewise continuous retraction
/// of `R^d` onto the open unit ball. Requires `dim >= 2` unless `allow_low_dim`.
pub fn open_ball_retraction<T: Scalar>(dim: usize, norm: NormKind<T>, allow_low_dim: bool) -> Result<PiecewiseMap<T>> {
    if dim == 0 {
        return Err(Error::EmptyVector);
    }
    if dim < 2 && !allow_low_dim {
        return Err(Error::LowDimension(dim));
    }
    let target_pieces = PieceFamily::OpenBall { norm, radius: T::one() };
    // x - k x/‖x‖ is 1-Lipschitz on each Euclidean shell; in a general norm the
    // radial term contributes 2k/k, giving 3.
    let shell_lipschitz = if norm == NormKind::euclidean() { T::one() } else { T::of(3.0) };
    let e = Vector::basis(dim, 0);
    let e = e.scaled(norm.norm(&e).recip()).expect("unit vector");
    let landmarks = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
        .into_iter()
        .filter_map(|r| e.scaled(T::of(r)))
        .collect();
    Ok(PiecewiseMap {
        label: "open-ball".into(),
        dim,
        norm,
        domain: Region::full_space(),
        sample_window: SetDescriptor::closed_ball(norm, T::of(5.0)),
        target: target_pieces.union_region(),
        target_pieces,
        rule: MapRule::OpenBallRetraction { norm },
        witness: PieceFamily::UnitShells { norm },
        lipschitz: LipschitzDecl::Constant(shell_lipschitz),
        landmarks,
        tolerance: Tolerance::default(),
    })
}

fn check_family_dim<T: Scalar>(family: &PieceFamily<T>, dim: usize) -> Result<()> {
    match family.dim() {
        Some(d) if d != dim => Err(Error::DimensionMismatch { expected: dim, found: d }),
        _ => Ok(()),
    }
}

fn check_defined_on<T: Scalar>(g: &ContinuousMapRule<T>, complement: &PieceFamily<T>, dim: usize) -> Result<()> {
    for n in 0..=DEFINED_ON_PIECES {
        if !g.defined_on(&complement.piece(n), dim)? {
            return Err(Error::InvalidArgument(format!(
                "g is not defined on complement piece {n}"
            )));
        }
    }
    Ok(())
}

fn check_g_lands_in<T: Scalar>(
    g: &ContinuousMapRule<T>,
    piece: &SetDescriptor<T>,
    dim: usize,
    a: &Region<T>,
    tol: &Tolerance<T>,
) -> Result<()> {
    for x in precondition_samples(piece, dim)? {
        if !a.contains(&g.apply(&x)?, tol)? {
            return Err(Error::InvalidArgument("g maps a complement point outside A".into()));
        }
    }
    Ok(())
}

fn precondition_samples<T: Scalar>(set: &SetDescriptor<T>, dim: usize) -> Result<Vec<Vector<T>>> {
    let mut pts = landmarks_of(set, dim);
    pts.retain(|p| set.contains_exact(p).unwrap_or(false));
    pts.extend(Sampler::new(PRECONDITION_SEED, dim, set.clone())?.points(PRECONDITION_SAMPLES)?);
    Ok(pts)
}
