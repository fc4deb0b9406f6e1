use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{NormKind, Region, SetDescriptor, Tolerance, Vector};
use crate::scalar::Scalar;

/// An increasing sequence `n ↦ X_n` of nonempty closed sets, indexed from 0.
///
/// Each variant is a closed-form rule; the union of all pieces is available as a
/// [`Region`] via [`PieceFamily::union_region`], and most variants know the
/// smallest piece index containing a given point ([`PieceFamily::index_for`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", bound = "T: Scalar")]
pub enum PieceFamily<T> {
    /// `X_n = set` for every `n`.
    Constant { set: SetDescriptor<T> },
    /// `X_n = {1/max(n,1) <= ‖x‖ <= outer}`, plus the origin when `include_origin`.
    ShrinkingHole { norm: NormKind<T>, dim: usize, outer: Option<T>, include_origin: bool },
    /// `X_n = ⋃_{k=0..=n} {k <= ‖x‖ <= k + 1 - 1/(n+1)}`.
    UnitShells { norm: NormKind<T> },
    /// `X_n = ⋃_{|k|<=n} [k, k + 1 - 1/(n+1)]` in `R`.
    UnitIntervals,
    /// `X_n = [lo, hi - (hi - lo)/(n+1)]`, exhausting `[lo, hi)`.
    HalfOpenInterval { lo: T, hi: T },
    /// `X_n = {‖x‖ <= radius (1 - 1/(n+1))}`, exhausting the open ball.
    OpenBall { norm: NormKind<T>, radius: T },
    /// `X_n = [lo - (n+1), lo - 1/(n+1)] ∪ [hi + 1/(n+1), hi + n + 1]`, exhausting `R \ [lo, hi]`.
    IntervalComplement { lo: T, hi: T },
    /// `X_n = ⋃_i members[i](n)`.
    Union { members: Vec<PieceFamily<T>> },
    /// `X_n = pieces[min(n, len - 1)]`; monotonicity is only declared, not guaranteed.
    Explicit { pieces: Vec<SetDescriptor<T>>, declared_monotone: bool },
}

impl<T: Scalar> PieceFamily<T> {
    pub fn piece(&self, n: usize) -> SetDescriptor<T> {
        let one = T::one();
        let inv = |m: usize| one / T::from_usize_lossy(m);
        match self {
            Self::Constant { set } => set.clone(),
            Self::ShrinkingHole { norm, dim, outer, include_origin } => {
                let mut lo = inv(n.max(1));
                if let Some(o) = outer {
                    lo = lo.min(*o);
                }
                let band = SetDescriptor::NormBand { norm: *norm, lo, hi: *outer };
                if *include_origin {
                    SetDescriptor::union(vec![SetDescriptor::singleton(Vector::zeros(*dim)), band])
                } else {
                    band
                }
            }
            Self::UnitShells { norm } => {
                let cut = one - inv(n + 1);
                let members = (0..=n)
                    .map(|k| {
                        let k = T::from_usize_lossy(k);
                        SetDescriptor::NormBand { norm: *norm, lo: k, hi: Some(k + cut) }
                    })
                    .collect();
                SetDescriptor::union(members)
            }
            Self::UnitIntervals => {
                let cut = one - inv(n + 1);
                let m = n as i64;
                let members = (-m..=m)
                    .map(|k| {
                        let k = T::of(k as f64);
                        SetDescriptor::Interval { lo: k, hi: k + cut }
                    })
                    .collect();
                SetDescriptor::union(members)
            }
            Self::HalfOpenInterval { lo, hi } => {
                SetDescriptor::Interval { lo: *lo, hi: *hi - (*hi - *lo) * inv(n + 1) }
            }
            Self::OpenBall { norm, radius } => {
                SetDescriptor::closed_ball(*norm, *radius * (one - inv(n + 1)))
            }
            Self::IntervalComplement { lo, hi } => {
                let reach = T::from_usize_lossy(n + 1);
                let gap = inv(n + 1);
                SetDescriptor::union(vec![
                    SetDescriptor::Interval { lo: *lo - reach, hi: *lo - gap },
                    SetDescriptor::Interval { lo: *hi + gap, hi: *hi + reach },
                ])
            }
            Self::Union { members } => SetDescriptor::union(members.iter().map(|m| m.piece(n)).collect()),
            Self::Explicit { pieces, .. } => pieces[n.min(pieces.len() - 1)].clone(),
        }
    }

    /// Explicit families are checked for emptiness; the closed-form families are valid by construction.
    pub fn explicit(pieces: Vec<SetDescriptor<T>>, declared_monotone: bool) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidArgument("explicit family needs at least one piece".into()));
        }
        for p in &pieces {
            p.validate()?;
            if p.is_empty() {
                return Err(Error::InvalidArgument("witness pieces must be nonempty".into()));
            }
        }
        Ok(Self::Explicit { pieces, declared_monotone })
    }

    pub fn declared_monotone(&self) -> bool {
        match self {
            Self::Explicit { declared_monotone, .. } => *declared_monotone,
            Self::Union { members } => members.iter().all(Self::declared_monotone),
            _ => true,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Self::Constant { set } => set.dim(),
            Self::ShrinkingHole { dim, .. } => Some(*dim),
            Self::UnitShells { .. } => None,
            Self::UnitIntervals | Self::HalfOpenInterval { .. } | Self::IntervalComplement { .. } => Some(1),
            Self::OpenBall { .. } => None,
            Self::Union { members } => members.iter().find_map(Self::dim),
            Self::Explicit { pieces, .. } => pieces.iter().find_map(SetDescriptor::dim),
        }
    }

    /// The union of all pieces, as an exact-membership region.
    pub fn union_region(&self) -> Region<T> {
        match self {
            Self::Constant { set } => Region::closed(set.clone()),
            Self::ShrinkingHole { norm, dim, outer, include_origin } => {
                let ball = Region::closed(SetDescriptor::NormBand { norm: *norm, lo: T::zero(), hi: *outer });
                if *include_origin {
                    ball
                } else {
                    let origin = Region::closed(SetDescriptor::singleton(Vector::zeros(*dim)));
                    Region::Intersection { members: vec![ball, Region::complement_of(origin)] }
                }
            }
            Self::UnitShells { norm } => {
                Region::closed(SetDescriptor::NormBand { norm: *norm, lo: T::zero(), hi: None })
            }
            Self::UnitIntervals => Region::full_space(),
            Self::HalfOpenInterval { lo, hi } => Region::Intersection {
                members: vec![
                    Region::closed(SetDescriptor::Interval { lo: *lo, hi: *hi }),
                    Region::complement_of(Region::closed(SetDescriptor::singleton(Vector::from_raw(vec![*hi])))),
                ],
            },
            Self::OpenBall { norm, radius } => Region::complement_of(Region::closed(SetDescriptor::NormBand {
                norm: *norm,
                lo: *radius,
                hi: None,
            })),
            Self::IntervalComplement { lo, hi } => {
                Region::complement_of(Region::closed(SetDescriptor::Interval { lo: *lo, hi: *hi }))
            }
            Self::Union { members } => Region::Union { members: members.iter().map(Self::union_region).collect() },
            Self::Explicit { pieces, .. } => Region::closed(pieces[pieces.len() - 1].clone()),
        }
    }

    /// A closed decomposition of the complement of this family's union, where one
    /// is known in closed form. For [`PieceFamily::ShrinkingHole`] the complement is
    /// taken inside the ambient `{‖x‖ <= outer}`.
    pub fn complement_family(&self) -> Option<Self> {
        match self {
            Self::ShrinkingHole { dim, include_origin: false, .. } => {
                Some(Self::Constant { set: SetDescriptor::singleton(Vector::zeros(*dim)) })
            }
            Self::Constant { set: SetDescriptor::Interval { lo, hi } } => {
                Some(Self::IntervalComplement { lo: *lo, hi: *hi })
            }
            Self::IntervalComplement { lo, hi } => Some(Self::Constant { set: SetDescriptor::Interval { lo: *lo, hi: *hi } }),
            Self::OpenBall { norm, radius } => {
                Some(Self::Constant { set: SetDescriptor::NormBand { norm: *norm, lo: *radius, hi: None } })
            }
            _ => None,
        }
    }

    /// Membership of `x` in piece `n` with signed boundary slack, without
    /// materializing pieces that are unions of many shells or intervals.
    pub fn piece_contains_slack(&self, n: usize, x: &Vector<T>, slack: T) -> Result<bool> {
        let cut = T::one() - T::one() / T::from_usize_lossy(n + 1);
        let near = |t: T, lo_k: i64, hi_k: i64| -> bool {
            let k0 = t.floor().to_i64().unwrap_or(i64::MAX - 1);
            (k0.saturating_sub(1)..=k0.saturating_add(1))
                .filter(|k| (lo_k..=hi_k).contains(k))
                .any(|k| {
                    let k = T::of(k as f64);
                    k - slack <= t && t <= k + cut + slack
                })
        };
        match self {
            Self::UnitShells { norm } => Ok(near(norm.norm(x), 0, n as i64)),
            Self::UnitIntervals => {
                check_dim(1, x)?;
                Ok(near(x[0], -(n as i64), n as i64))
            }
            Self::Union { members } => {
                for m in members {
                    if m.piece_contains_slack(n, x, slack)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            _ => self.piece(n).contains_slack(x, slack),
        }
    }

    pub fn piece_contains(&self, n: usize, x: &Vector<T>, tol: &Tolerance<T>) -> Result<bool> {
        self.piece_contains_slack(n, x, tol.membership_tol)
    }

    /// Smallest index `n` whose piece is predicted to contain `x`, from the
    /// family's closed-form index formula. `None` means `x` is outside every piece.
    pub fn index_for(&self, x: &Vector<T>, tol: &Tolerance<T>) -> Result<Option<usize>> {
        let Some(mut n) = self.index_formula(x, tol)? else {
            return Ok(None);
        };
        // the closed-form index can land one step off when 1/(1 - f) rounds across an integer
        if !self.piece_contains_slack(n, x, T::zero())? && self.piece_contains_slack(n + 1, x, T::zero())? {
            n += 1;
        }
        while n > 0 && self.piece_contains_slack(n - 1, x, T::zero())? {
            n -= 1;
        }
        Ok(Some(n))
    }

    fn index_formula(&self, x: &Vector<T>, tol: &Tolerance<T>) -> Result<Option<usize>> {
        let one = T::one();
        Ok(match self {
            Self::Constant { set } => set.contains(x, tol)?.then_some(0),
            Self::ShrinkingHole { norm, dim, outer, include_origin } => {
                check_dim(*dim, x)?;
                let r = norm.norm(x);
                if r.is_zero() {
                    include_origin.then_some(0)
                } else if outer.is_some_and(|o| r > o + tol.membership_tol) {
                    None
                } else {
                    ceil_index(r.recip()).map(|n| n.max(1))
                }
            }
            Self::UnitShells { norm } => {
                let r = norm.norm(x);
                let k = r.floor();
                let f = r - k;
                let m = ceil_index(one / (one - f)).map(|c| c.saturating_sub(1));
                m.zip(k.to_usize()).map(|(m, k)| m.max(k))
            }
            Self::UnitIntervals => {
                check_dim(1, x)?;
                let t = x[0];
                let k = t.floor();
                let f = t - k;
                let m = ceil_index(one / (one - f)).map(|c| c.saturating_sub(1));
                m.zip(k.abs().to_usize()).map(|(m, k)| m.max(k))
            }
            Self::HalfOpenInterval { lo, hi } => {
                check_dim(1, x)?;
                let t = x[0];
                if t < *lo - tol.membership_tol || t >= *hi {
                    None
                } else {
                    ceil_index((*hi - *lo) / (*hi - t)).map(|c| c.saturating_sub(1))
                }
            }
            Self::OpenBall { norm, radius } => {
                let r = norm.norm(x);
                if r >= *radius {
                    None
                } else {
                    ceil_index(*radius / (*radius - r)).map(|c| c.saturating_sub(1))
                }
            }
            Self::IntervalComplement { lo, hi } => {
                check_dim(1, x)?;
                let t = x[0];
                let gap = if t < *lo {
                    *lo - t
                } else if t > *hi {
                    t - *hi
                } else {
                    return Ok(None);
                };
                ceil_index(gap.max(gap.recip())).map(|c| c.saturating_sub(1))
            }
            Self::Union { members } => {
                let mut best: Option<usize> = None;
                for m in members {
                    if let Some(i) = m.index_formula(x, tol)? {
                        best = Some(best.map_or(i, |b| b.min(i)));
                    }
                }
                best
            }
            Self::Explicit { pieces, .. } => {
                let mut found = None;
                for (i, p) in pieces.iter().enumerate() {
                    if p.contains(x, tol)? {
                        found = Some(i);
                        break;
                    }
                }
                found
            }
        })
    }
}

fn check_dim<T: Scalar>(dim: usize, x: &Vector<T>) -> Result<()> {
    if x.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: x.dim() });
    }
    Ok(())
}

fn ceil_index<T: Scalar>(v: T) -> Option<usize> {
    if !v.is_finite() {
        return None;
    }
    v.ceil().to_usize()
}
