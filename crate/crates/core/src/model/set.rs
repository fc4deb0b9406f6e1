use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{NormKind, Tolerance, Vector};
use crate::scalar::Scalar;

/// A closed subset of `R^d`, closed by construction: every variant is a closed
/// primitive or a closure-preserving combination of closed sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", bound = "T: Scalar")]
pub enum SetDescriptor<T> {
    /// `[lo, hi]` in `R`.
    Interval { lo: T, hi: T },
    /// `{x : lo <= ‖x‖ <= hi}`; `hi = None` means unbounded.
    NormBand { norm: NormKind<T>, lo: T, hi: Option<T> },
    Singleton { point: Vector<T> },
    FiniteUnion { members: Vec<SetDescriptor<T>> },
    Translate { base: Box<SetDescriptor<T>>, offset: Vector<T> },
}

impl<T: Scalar> SetDescriptor<T> {
    pub fn interval(lo: T, hi: T) -> Result<Self> {
        check_bounds(lo, Some(hi))?;
        Ok(Self::Interval { lo, hi })
    }

    pub fn band(norm: NormKind<T>, lo: T, hi: Option<T>) -> Result<Self> {
        if lo < T::zero() {
            return Err(Error::InvalidArgument(format!("band lower radius {lo} is negative")));
        }
        check_bounds(lo, hi)?;
        Ok(Self::NormBand { norm, lo, hi })
    }

    /// `{x : ‖x‖ = 1}`.
    pub fn unit_sphere(norm: NormKind<T>) -> Self {
        Self::NormBand { norm, lo: T::one(), hi: Some(T::one()) }
    }

    /// `{x : ‖x‖ <= radius}`.
    pub fn closed_ball(norm: NormKind<T>, radius: T) -> Self {
        Self::NormBand { norm, lo: T::zero(), hi: Some(radius) }
    }

    pub fn full_space() -> Self {
        Self::NormBand { norm: NormKind::Max, lo: T::zero(), hi: None }
    }

    pub fn singleton(point: Vector<T>) -> Self {
        Self::Singleton { point }
    }

    pub fn union(members: Vec<Self>) -> Self {
        Self::FiniteUnion { members }
    }

    pub fn translate(base: Self, offset: Vector<T>) -> Self {
        Self::Translate { base: Box::new(base), offset }
    }

    /// Checks the bounds invariants and dimension consistency of the whole tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Interval { lo, hi } => check_bounds(*lo, Some(*hi)),
            Self::NormBand { lo, hi, .. } => {
                if *lo < T::zero() {
                    return Err(Error::InvalidArgument(format!("band lower radius {lo} is negative")));
                }
                check_bounds(*lo, *hi)
            }
            Self::Singleton { .. } => Ok(()),
            Self::FiniteUnion { members } => {
                members.iter().try_for_each(Self::validate)?;
                let mut dims = members.iter().filter_map(Self::dim);
                if let Some(d) = dims.next() {
                    if let Some(other) = dims.find(|&e| e != d) {
                        return Err(Error::DimensionMismatch { expected: d, found: other });
                    }
                }
                Ok(())
            }
            Self::Translate { base, offset } => {
                base.validate()?;
                match base.dim() {
                    Some(d) if d != offset.dim() => {
                        Err(Error::DimensionMismatch { expected: offset.dim(), found: d })
                    }
                    _ => Ok(()),
                }
            }
        }
    }

    /// Dimension the set is pinned to, if any. Norm bands live in every dimension.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Self::Interval { .. } => Some(1),
            Self::NormBand { .. } => None,
            Self::Singleton { point } => Some(point.dim()),
            Self::FiniteUnion { members } => members.iter().find_map(Self::dim),
            Self::Translate { offset, .. } => Some(offset.dim()),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Self::Interval { lo, hi } => lo > hi,
            Self::NormBand { lo, hi, .. } => hi.is_some_and(|h| *lo > h),
            Self::Singleton { .. } => false,
            Self::FiniteUnion { members } => members.iter().all(Self::is_empty),
            Self::Translate { base, .. } => base.is_empty(),
        }
    }

    /// Membership up to `tol.membership_tol` of slack on every boundary comparison.
    pub fn contains(&self, x: &Vector<T>, tol: &Tolerance<T>) -> Result<bool> {
        self.contains_slack(x, tol.membership_tol)
    }

    /// Membership with exact boundary comparisons.
    pub fn contains_exact(&self, x: &Vector<T>) -> Result<bool> {
        self.contains_slack(x, T::zero())
    }

    /// Membership with signed slack: positive slack grows the set outward,
    /// negative slack shrinks it toward its interior.
    pub fn contains_slack(&self, x: &Vector<T>, slack: T) -> Result<bool> {
        if let Some(d) = self.dim() {
            if d != x.dim() {
                return Err(Error::DimensionMismatch { expected: d, found: x.dim() });
            }
        }
        Ok(self.contains_unchecked(x, slack))
    }

    fn contains_unchecked(&self, x: &Vector<T>, slack: T) -> bool {
        match self {
            Self::Interval { lo, hi } => {
                let t = x[0];
                *lo - slack <= t && t <= *hi + slack
            }
            Self::NormBand { norm, lo, hi } => {
                let r = norm.norm(x);
                // lo = 0 is not a boundary of the band, so shrinking leaves it alone
                let lower = if lo.is_zero() { T::zero() } else { *lo - slack };
                r >= lower && hi.is_none_or(|h| r <= h + slack)
            }
            Self::Singleton { point } => {
                let dist = x
                    .coords()
                    .iter()
                    .zip(point.coords())
                    .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()));
                dist <= slack
            }
            Self::FiniteUnion { members } => members.iter().any(|m| m.contains_unchecked(x, slack)),
            Self::Translate { base, offset } => base.contains_unchecked(&(x - offset), slack),
        }
    }

    /// Bound on `‖x‖_∞` over the set, or `None` when unbounded.
    pub fn linf_radius(&self) -> Option<T> {
        match self {
            Self::Interval { lo, hi } => Some(lo.abs().max(hi.abs())),
            Self::NormBand { hi, .. } => *hi,
            Self::Singleton { point } => Some(max_abs(point)),
            Self::FiniteUnion { members } => members
                .iter()
                .filter(|m| !m.is_empty())
                .try_fold(T::zero(), |acc, m| m.linf_radius().map(|r| acc.max(r))),
            Self::Translate { base, offset } => base.linf_radius().map(|r| r + max_abs(offset)),
        }
    }

    /// Flattens nested unions (and translated unions) into their non-union members.
    pub fn leaves(&self) -> Vec<Self> {
        match self {
            Self::FiniteUnion { members } => members.iter().flat_map(Self::leaves).collect(),
            Self::Translate { base, offset } => base
                .leaves()
                .into_iter()
                .map(|leaf| Self::translate(leaf, offset.clone()))
                .collect(),
            other => vec![other.clone()],
        }
    }
}

fn check_bounds<T: Scalar>(lo: T, hi: Option<T>) -> Result<()> {
    let bad = !lo.is_finite() || hi.is_some_and(|h| !h.is_finite() || lo > h);
    if bad {
        return Err(Error::InvalidBounds {
            lo: lo.to_string(),
            hi: hi.map_or_else(|| "inf".to_string(), |h| h.to_string()),
        });
    }
    Ok(())
}

fn max_abs<T: Scalar>(v: &Vector<T>) -> T {
    v.coords().iter().fold(T::zero(), |acc, c| acc.max(c.abs()))
}

/// A subset of `R^d` that need not be closed, built from closed descriptors by
/// complement, union and intersection. Used for exact branch selection in maps
/// (`x ∈ A`, `x ∈ U`) where the set itself is only F-sigma.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "region", bound = "T: Scalar")]
pub enum Region<T> {
    Closed { set: SetDescriptor<T> },
    Complement { of: Box<Region<T>> },
    Union { members: Vec<Region<T>> },
    Intersection { members: Vec<Region<T>> },
}

impl<T: Scalar> Region<T> {
    pub fn closed(set: SetDescriptor<T>) -> Self {
        Self::Closed { set }
    }

    pub fn full_space() -> Self {
        Self::closed(SetDescriptor::full_space())
    }

    pub fn complement_of(region: Self) -> Self {
        Self::Complement { of: Box::new(region) }
    }

    pub fn contains(&self, x: &Vector<T>, tol: &Tolerance<T>) -> Result<bool> {
        self.contains_slack(x, tol.membership_tol)
    }

    pub fn contains_exact(&self, x: &Vector<T>) -> Result<bool> {
        self.contains_slack(x, T::zero())
    }

    pub fn contains_slack(&self, x: &Vector<T>, slack: T) -> Result<bool> {
        match self {
            Self::Closed { set } => set.contains_slack(x, slack),
            Self::Complement { of } => Ok(!of.contains_slack(x, -slack)?),
            Self::Union { members } => {
                for m in members {
                    if m.contains_slack(x, slack)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Self::Intersection { members } => {
                for m in members {
                    if !m.contains_slack(x, slack)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Self::Closed { set } => set.dim(),
            Self::Complement { of } => of.dim(),
            Self::Union { members } | Self::Intersection { members } => members.iter().find_map(Self::dim),
        }
    }

    /// Bound on `‖x‖_∞` over the region, or `None` when it may be unbounded.
    pub fn linf_radius(&self) -> Option<T> {
        match self {
            Self::Closed { set } => set.linf_radius(),
            // the complement of {‖x‖ >= lo} is the open ball of radius lo
            Self::Complement { of } => match of.as_ref() {
                Self::Closed { set: SetDescriptor::NormBand { lo, hi: None, .. } } => Some(*lo),
                _ => None,
            },
            Self::Union { members } => members
                .iter()
                .try_fold(T::zero(), |acc, m| m.linf_radius().map(|r| acc.max(r))),
            Self::Intersection { members } => members
                .iter()
                .filter_map(Self::linf_radius)
                .fold(None, |acc: Option<T>, r| Some(acc.map_or(r, |a| a.min(r)))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_f64(c).unwrap()
    }

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn open_ball_region_is_bounded() {
        let outside = Region::closed(SetDescriptor::band(NormKind::p(1.0).unwrap(), 1.0, None).unwrap());
        assert_eq!(Region::complement_of(outside).linf_radius(), Some(1.0));
        let gap = Region::closed(SetDescriptor::interval(0.0, 1.0).unwrap());
        assert_eq!(Region::complement_of(gap).linf_radius(), None);
    }

    #[test]
    fn membership_examples() {
        let band = SetDescriptor::band(NormKind::euclidean(), 1.0, Some(2.0)).unwrap();
        assert!(band.contains(&v(&[1.5, 0.0]), &tol()).unwrap());
        assert!(!band.contains(&v(&[0.5, 0.0]), &tol()).unwrap());
        let origin = SetDescriptor::singleton(Vector::zeros(2));
        assert!(origin.contains(&v(&[0.0, 0.0]), &tol()).unwrap());
        assert!(!origin.contains(&v(&[1e-6, 0.0]), &tol()).unwrap());
    }

    #[test]
    fn boundary_slack() {
        let band = SetDescriptor::band(NormKind::euclidean(), 1.0, Some(2.0)).unwrap();
        assert!(band.contains(&v(&[2.0 + 5e-10, 0.0]), &tol()).unwrap());
        assert!(!band.contains_exact(&v(&[2.0 + 5e-10, 0.0])).unwrap());
        assert!(!band.contains(&v(&[2.0 + 2e-9, 0.0]), &tol()).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let i = SetDescriptor::interval(0.0, 1.0).unwrap();
        assert_eq!(
            i.contains(&v(&[0.5, 0.5]), &tol()),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        );
    }

    #[test]
    fn invalid_bounds_rejected() {
        assert!(SetDescriptor::interval(2.0, 1.0).is_err());
        assert!(SetDescriptor::band(NormKind::Max, 3.0, Some(1.0)).is_err());
        assert!(SetDescriptor::band(NormKind::Max, -1.0, None).is_err());
        assert!(SetDescriptor::interval(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn translate_and_union() {
        let s = SetDescriptor::translate(SetDescriptor::interval(0.0, 1.0).unwrap(), v(&[5.0]));
        assert!(s.contains_exact(&v(&[5.5])).unwrap());
        assert!(!s.contains_exact(&v(&[0.5])).unwrap());
        let u = SetDescriptor::union(vec![s.clone(), SetDescriptor::singleton(v(&[0.0]))]);
        assert!(u.contains_exact(&v(&[0.0])).unwrap());
        assert_eq!(u.leaves().len(), 2);
        assert_eq!(u.linf_radius(), Some(6.0));
    }

    #[test]
    fn regions_with_complements() {
        // [0, 1) as [0, 1] minus {1}
        let half_open = Region::Intersection {
            members: vec![
                Region::closed(SetDescriptor::interval(0.0, 1.0).unwrap()),
                Region::complement_of(Region::closed(SetDescriptor::singleton(v(&[1.0])))),
            ],
        };
        assert!(half_open.contains_exact(&v(&[0.0])).unwrap());
        assert!(half_open.contains_exact(&v(&[0.999])).unwrap());
        assert!(!half_open.contains_exact(&v(&[1.0])).unwrap());
        // with slack, points near the removed endpoint count as members
        assert!(half_open.contains(&v(&[1.0]), &tol()).unwrap());

        let open_ball = Region::complement_of(Region::closed(
            SetDescriptor::band(NormKind::euclidean(), 1.0, None).unwrap(),
        ));
        assert!(open_ball.contains_exact(&v(&[0.0, 0.0])).unwrap());
        assert!(!open_ball.contains_exact(&v(&[0.6, 0.8])).unwrap());
        assert!(open_ball.contains(&v(&[0.6, 0.8]), &tol()).unwrap());
    }

    #[test]
    fn json_shape() {
        let s = SetDescriptor::union(vec![
            SetDescriptor::singleton(Vector::zeros(2)),
            SetDescriptor::band(NormKind::euclidean(), 0.5, None).unwrap(),
        ]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"variant":"FiniteUnion","members":[{"variant":"Singleton","point":[0.0,0.0]},{"variant":"NormBand","norm":"p:2","lo":0.5,"hi":null}]}"#
        );
        let back: SetDescriptor<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
