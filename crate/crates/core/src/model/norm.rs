use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::Vector;
use crate::scalar::Scalar;

/// Which norm the ambient space `R^d` carries.
///
/// Serialized as the string `"p:<value>"` or `"max"`; `"p:inf"` parses to [`NormKind::Max`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormKind<T> {
    P(T),
    Max,
}

impl<T: Scalar> NormKind<T> {
    pub fn p(p: T) -> Result<Self> {
        if p.is_nan() || p < T::one() {
            return Err(Error::InvalidNorm(format!("p must be >= 1, got {p}")));
        }
        Ok(if p.is_infinite() { Self::Max } else { Self::P(p) })
    }

    pub fn euclidean() -> Self {
        Self::P(T::of(2.0))
    }

    pub fn norm(&self, x: &Vector<T>) -> T {
        let c = x.coords();
        match *self {
            Self::Max => max_abs(c),
            Self::P(p) if p == T::one() => c.iter().fold(T::zero(), |acc, v| acc + v.abs()),
            Self::P(p) if p == T::of(2.0) => {
                let direct = c.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt();
                if direct.is_finite() {
                    direct
                } else {
                    scaled_p_norm(c, p)
                }
            }
            Self::P(p) => scaled_p_norm(c, p),
        }
    }

    pub fn distance(&self, x: &Vector<T>, y: &Vector<T>) -> T {
        self.norm(&(x - y))
    }
}

/// `‖x‖` under `kind`. Vectors are finite by construction, so this never fails.
pub fn norm<T: Scalar>(x: &Vector<T>, kind: NormKind<T>) -> T {
    kind.norm(x)
}

fn max_abs<T: Scalar>(c: &[T]) -> T {
    c.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
}

fn scaled_p_norm<T: Scalar>(c: &[T], p: T) -> T {
    let m = max_abs(c);
    if m.is_zero() {
        return T::zero();
    }
    let sum = c.iter().fold(T::zero(), |acc, v| acc + (v.abs() / m).powf(p));
    m * sum.powf(p.recip())
}

impl<T: Scalar> fmt::Display for NormKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::P(p) => write!(f, "p:{p}"),
            Self::Max => f.write_str("max"),
        }
    }
}

impl<T: Scalar> FromStr for NormKind<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "max" {
            return Ok(Self::Max);
        }
        let value = s
            .strip_prefix("p:")
            .ok_or_else(|| Error::InvalidNorm(format!("expected \"p:<value>\" or \"max\", got {s:?}")))?;
        let p: f64 = match value {
            "inf" | "infinity" => f64::INFINITY,
            v => v.parse().map_err(|_| Error::InvalidNorm(format!("bad p value {v:?}")))?,
        };
        Self::p(T::of(p))
    }
}

impl<T: Scalar> Serialize for NormKind<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for NormKind<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Entier: the greatest integer not exceeding `t` (floor, also for negative `t`).
pub fn entier<T: Scalar>(t: T) -> Result<i64> {
    if !t.is_finite() {
        return Err(Error::NonFinite(t.to_string()));
    }
    t.floor().to_i64().ok_or_else(|| Error::IntegerOverflow(t.to_string()))
}

/// `t - E(t)`, always in `[0, 1)` for finite `t`.
pub fn frac<T: Scalar>(t: T) -> T {
    let f = t - t.floor();
    // t - floor(t) rounds up to 1 for tiny negative t
    if f >= T::one() {
        T::one() - T::epsilon()
    } else {
        f
    }
}

/// Tolerances used by membership tests and pointwise identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Tolerance<T> {
    pub membership_tol: T,
    pub identity_tol: T,
}

impl<T: Scalar> Tolerance<T> {
    pub fn new(membership_tol: T, identity_tol: T) -> Result<Self> {
        let ok = |v: T| v.is_finite() && v > T::zero();
        if !ok(membership_tol) || !ok(identity_tol) {
            return Err(Error::InvalidTolerance);
        }
        Ok(Self { membership_tol, identity_tol })
    }
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Self { membership_tol: T::of(1e-9), identity_tol: T::of(1e-12) }
    }
}
