use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rules::MapRule;
use crate::error::{Error, Result};
use crate::model::{NormKind, PieceFamily, Region, SetDescriptor, Tolerance, Vector};
use crate::scalar::Scalar;

/// Piece index used to draw codomain samples from an exhausting family.
pub const CODOMAIN_PIECE: usize = 1 << 20;

/// Stable string ids of the registered constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionId {
    Fractional,
    Glue,
    Extend,
    ConstExtend,
    Sphere,
    OpenBall,
}

impl ConstructionId {
    pub const ALL: [Self; 6] =
        [Self::Fractional, Self::Glue, Self::Extend, Self::ConstExtend, Self::Sphere, Self::OpenBall];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fractional => "fractional",
            Self::Glue => "glue",
            Self::Extend => "extend",
            Self::ConstExtend => "const-extend",
            Self::Sphere => "sphere",
            Self::OpenBall => "open-ball",
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown construction {s:?}")))
    }
}

/// Declared Lipschitz bound of a map restricted to each closed member of witness piece `n`.
#[derive(Debug, Clone, PartialEq)]
pub enum LipschitzDecl<T> {
    Unknown,
    Constant(T),
    /// `slope * max(n, 1)`.
    PerIndex { slope: T },
    Max(Vec<LipschitzDecl<T>>),
}

impl<T: Scalar> LipschitzDecl<T> {
    pub fn at(&self, n: usize) -> Option<T> {
        match self {
            Self::Unknown => None,
            Self::Constant(c) => Some(*c),
            Self::PerIndex { slope } => Some(*slope * T::from_usize_lossy(n.max(1))),
            Self::Max(parts) => parts
                .iter()
                .try_fold(T::zero(), |acc, p| p.at(n).map(|v| acc.max(v))),
        }
    }
}

/// A total map on its domain together with the increasing closed cover that
/// certifies its piecewise continuity.
#[derive(Debug, Clone)]
pub struct PiecewiseMap<T> {
    pub(crate) label: String,
    pub(crate) dim: usize,
    pub(crate) norm: NormKind<T>,
    pub(crate) domain: Region<T>,
    pub(crate) sample_window: SetDescriptor<T>,
    pub(crate) target: Region<T>,
    pub(crate) target_pieces: PieceFamily<T>,
    pub(crate) rule: MapRule<T>,
    pub(crate) witness: PieceFamily<T>,
    pub(crate) lipschitz: LipschitzDecl<T>,
    pub(crate) landmarks: Vec<Vector<T>>,
    pub(crate) tolerance: Tolerance<T>,
}

impl<T: Scalar> PiecewiseMap<T> {
    pub fn evaluate(&self, x: &Vector<T>) -> Result<Vector<T>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        if !self.domain.contains(x, &self.tolerance)? {
            return Err(Error::OutsideDomain);
        }
        self.rule.apply(x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> NormKind<T> {
        self.norm
    }

    pub fn domain(&self) -> &Region<T> {
        &self.domain
    }

    /// Closed set that domain samples are drawn from (intersected with the domain).
    pub fn sample_window(&self) -> &SetDescriptor<T> {
        &self.sample_window
    }

    /// The retract `A`, with exact membership.
    pub fn codomain_target(&self) -> &Region<T> {
        &self.target
    }

    /// Closed pieces exhausting the retract `A`.
    pub fn target_pieces(&self) -> &PieceFamily<T> {
        &self.target_pieces
    }

    /// Closed set that codomain samples are drawn from.
    pub fn codomain_sample_set(&self) -> SetDescriptor<T> {
        self.target_pieces.piece(CODOMAIN_PIECE)
    }

    pub fn rule(&self) -> &MapRule<T> {
        &self.rule
    }

    pub fn witness(&self) -> &PieceFamily<T> {
        &self.witness
    }

    pub fn piece(&self, n: usize) -> SetDescriptor<T> {
        self.witness.piece(n)
    }

    pub fn piece_lipschitz(&self, n: usize) -> Option<T> {
        self.lipschitz.at(n)
    }

    pub fn lipschitz_decl(&self) -> &LipschitzDecl<T> {
        &self.lipschitz
    }

    /// Points where the defining formula switches branches; every check includes them.
    pub fn landmarks(&self) -> &[Vector<T>] {
        &self.landmarks
    }

    pub fn tolerance(&self) -> &Tolerance<T> {
        &self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance<T>) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_witness(mut self, witness: PieceFamily<T>) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_rule(mut self, rule: MapRule<T>) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Boundary points of the leaves of `set`: interval endpoints, singleton
/// points, and the origin plus axis points at band radii.
pub(crate) fn landmarks_of<T: Scalar>(set: &SetDescriptor<T>, dim: usize) -> Vec<Vector<T>> {
    let mut out = Vec::new();
    for leaf in set.leaves() {
        match &leaf {
            SetDescriptor::Interval { lo, hi } => {
                out.push(Vector::from_raw(vec![*lo]));
                out.push(Vector::from_raw(vec![*hi]));
            }
            SetDescriptor::Singleton { point } => out.push(point.clone()),
            SetDescriptor::NormBand { norm, lo, hi } => {
                let e = Vector::basis(dim, 0);
                let on_axis = |r: T| e.scaled(r / norm.norm(&e));
                out.extend(on_axis(*lo));
                out.extend(hi.and_then(on_axis));
            }
            SetDescriptor::Translate { .. } | SetDescriptor::FiniteUnion { .. } => {}
        }
    }
    out.dedup();
    out
}
