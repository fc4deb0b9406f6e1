use std::fmt;
use std::sync::Arc;

use crate::constructions::PiecewiseMap;
use crate::error::{Error, Result};
use crate::model::{PieceFamily, Region, Tolerance, Vector};
use crate::scalar::Scalar;

/// Closed-form real-valued expression in the coordinates of a point.
#[derive(Debug, Clone)]
pub enum FieldExpr<T> {
    Const(T),
    Coord(usize),
    Sin(usize),
    Cos(usize),
    /// `coef * Π x_i^{exponents[i]}`.
    Monomial { coef: T, exponents: Vec<u32> },
    Scale(T, Box<FieldExpr<T>>),
    Sum(Vec<FieldExpr<T>>),
    Product(Vec<FieldExpr<T>>),
    /// `inner ∘ map`.
    Compose { map: Arc<PiecewiseMap<T>>, inner: Box<FieldExpr<T>> },
}

impl<T: Scalar> FieldExpr<T> {
    pub fn eval(&self, x: &Vector<T>) -> Result<T> {
        let coord = |i: usize| -> Result<T> {
            x.coords()
                .get(i)
                .copied()
                .ok_or(Error::DimensionMismatch { expected: i + 1, found: x.dim() })
        };
        Ok(match self {
            Self::Const(c) => *c,
            Self::Coord(i) => coord(*i)?,
            Self::Sin(i) => coord(*i)?.sin(),
            Self::Cos(i) => coord(*i)?.cos(),
            Self::Monomial { coef, exponents } => {
                let mut acc = *coef;
                for (i, &e) in exponents.iter().enumerate() {
                    if e > 0 {
                        acc = acc * coord(i)?.powi(e as i32);
                    }
                }
                acc
            }
            Self::Scale(s, inner) => *s * inner.eval(x)?,
            Self::Sum(terms) => terms.iter().try_fold(T::zero(), |acc, t| t.eval(x).map(|v| acc + v))?,
            Self::Product(factors) => factors.iter().try_fold(T::one(), |acc, f| f.eval(x).map(|v| acc * v))?,
            Self::Compose { map, inner } => inner.eval(&map.evaluate(x)?)?,
        })
    }

    /// Smallest dimension the expression can be evaluated in.
    pub fn min_dim(&self) -> usize {
        match self {
            Self::Const(_) => 1,
            Self::Coord(i) | Self::Sin(i) | Self::Cos(i) => i + 1,
            Self::Monomial { exponents, .. } => exponents.iter().rposition(|&e| e > 0).map_or(1, |i| i + 1),
            Self::Scale(_, inner) => inner.min_dim(),
            Self::Sum(ts) | Self::Product(ts) => ts.iter().map(Self::min_dim).max().unwrap_or(1),
            Self::Compose { map, .. } => map.dim(),
        }
    }

    /// Bound on `|f|` given a bound `radius` on `‖x‖_∞` over the domain.
    pub fn bound(&self, radius: Option<T>) -> Option<T> {
        match self {
            Self::Const(c) => Some(c.abs()),
            Self::Coord(_) => radius,
            Self::Sin(_) | Self::Cos(_) => Some(T::one()),
            Self::Monomial { coef, exponents } => {
                let degree: u32 = exponents.iter().sum();
                if degree == 0 {
                    Some(coef.abs())
                } else {
                    radius.map(|r| coef.abs() * r.powi(degree as i32))
                }
            }
            Self::Scale(s, inner) => inner.bound(radius).map(|b| s.abs() * b),
            Self::Sum(ts) => ts.iter().try_fold(T::zero(), |acc, t| t.bound(radius).map(|b| acc + b)),
            Self::Product(fs) => fs.iter().try_fold(T::one(), |acc, f| f.bound(radius).map(|b| acc * b)),
            Self::Compose { map, inner } => inner.bound(map.codomain_target().linf_radius()),
        }
    }

    /// Lipschitz constant with respect to `‖·‖_∞` (hence every p-norm) given a
    /// bound `radius` on `‖x‖_∞`. Composed expressions have none globally.
    pub fn lipschitz(&self, radius: Option<T>) -> Option<T> {
        match self {
            Self::Const(_) => Some(T::zero()),
            Self::Coord(_) | Self::Sin(_) | Self::Cos(_) => Some(T::one()),
            Self::Monomial { coef, exponents } => {
                let degree: u32 = exponents.iter().sum();
                match degree {
                    0 => Some(T::zero()),
                    1 => Some(coef.abs()),
                    d => radius.map(|r| coef.abs() * T::of(d as f64) * r.powi(d as i32 - 1)),
                }
            }
            Self::Scale(s, inner) => inner.lipschitz(radius).map(|l| s.abs() * l),
            Self::Sum(ts) => ts.iter().try_fold(T::zero(), |acc, t| t.lipschitz(radius).map(|l| acc + l)),
            Self::Product(fs) => {
                let mut total = T::zero();
                for (i, f) in fs.iter().enumerate() {
                    let mut term = f.lipschitz(radius)?;
                    for (j, g) in fs.iter().enumerate() {
                        if i != j {
                            term = term * g.bound(radius)?;
                        }
                    }
                    total = total + term;
                }
                Some(total)
            }
            Self::Compose { .. } => None,
        }
    }

    /// Parses the catalog syntax: `+`-separated terms, each an optional numeric
    /// coefficient followed by `*`-separated atoms `const:c`, `coord:i`,
    /// `sin:i`, `cos:i` or `poly:c:e0:e1:...` (the monomial `c x0^e0 x1^e1 ...`).
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::ParseField(s.to_string());
        let mut terms = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let mut coef: Option<T> = None;
            let mut atoms = Vec::new();
            for (k, tok) in term.split('*').map(str::trim).enumerate() {
                if k == 0 {
                    if let Ok(c) = tok.parse::<f64>() {
                        coef = Some(T::of(c));
                        continue;
                    }
                }
                atoms.push(parse_atom(tok).ok_or_else(bad)?);
            }
            let body = match atoms.len() {
                0 => FieldExpr::Const(coef.take().ok_or_else(bad)?),
                1 => atoms.pop().expect("one atom"),
                _ => FieldExpr::Product(atoms),
            };
            terms.push(match coef {
                Some(c) => FieldExpr::Scale(c, Box::new(body)),
                None => body,
            });
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { FieldExpr::Sum(terms) })
    }
}

fn parse_atom<T: Scalar>(tok: &str) -> Option<FieldExpr<T>> {
    let (kind, arg) = tok.split_once(':')?;
    let index = || arg.parse::<usize>().ok();
    match kind {
        "const" => arg.parse::<f64>().ok().filter(|c| c.is_finite()).map(|c| FieldExpr::Const(T::of(c))),
        "coord" => index().map(FieldExpr::Coord),
        "sin" => index().map(FieldExpr::Sin),
        "cos" => index().map(FieldExpr::Cos),
        "poly" => {
            let mut parts = arg.split(':');
            let coef = parts.next()?.parse::<f64>().ok().filter(|c| c.is_finite())?;
            let exponents = parts.map(|e| e.parse::<u32>().ok()).collect::<Option<Vec<_>>>()?;
            Some(FieldExpr::Monomial { coef: T::of(coef), exponents })
        }
        _ => None,
    }
}

impl<T: Scalar> fmt::Display for FieldExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Const(c) => write!(f, "const:{c}"),
            Self::Coord(i) => write!(f, "coord:{i}"),
            Self::Sin(i) => write!(f, "sin:{i}"),
            Self::Cos(i) => write!(f, "cos:{i}"),
            Self::Monomial { coef, exponents } => {
                write!(f, "poly:{coef}")?;
                exponents.iter().try_for_each(|e| write!(f, ":{e}"))
            }
            Self::Scale(s, inner) => write!(f, "{s}*{inner}"),
            Self::Sum(ts) => join(f, ts, "+"),
            Self::Product(fs) => join(f, fs, "*"),
            Self::Compose { map, inner } => write!(f, "({inner})∘{}", map.label()),
        }
    }
}

fn join<T: Scalar>(f: &mut fmt::Formatter<'_>, items: &[FieldExpr<T>], sep: &str) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A real-valued function on a described domain, with its declared bound and
/// Lipschitz data. Fields produced by the extension operator also carry the
/// witness cover of the map they were composed with.
#[derive(Debug, Clone)]
pub struct ScalarField<T> {
    pub(crate) dim: usize,
    pub(crate) domain: Region<T>,
    pub(crate) expr: FieldExpr<T>,
    pub(crate) bound: Option<T>,
    pub(crate) lipschitz: Option<T>,
    pub(crate) witness: Option<PieceFamily<T>>,
    pub(crate) source_map: Option<Arc<PiecewiseMap<T>>>,
    pub(crate) inner_lipschitz: Option<T>,
    pub(crate) tolerance: Tolerance<T>,
}

impl<T: Scalar> ScalarField<T> {
    pub fn new(expr: FieldExpr<T>, domain: Region<T>, dim: usize) -> Result<Self> {
        if expr.min_dim() > dim {
            return Err(Error::DimensionMismatch { expected: dim, found: expr.min_dim() });
        }
        if let Some(d) = domain.dim() {
            if d != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: d });
            }
        }
        let radius = domain.linf_radius();
        Ok(Self {
            dim,
            bound: expr.bound(radius),
            lipschitz: expr.lipschitz(radius),
            domain,
            expr,
            witness: None,
            source_map: None,
            inner_lipschitz: None,
            tolerance: Tolerance::default(),
        })
    }

    pub fn parse(s: &str, domain: Region<T>, dim: usize) -> Result<Self> {
        Self::new(FieldExpr::parse(s)?, domain, dim)
    }

    pub fn evaluate(&self, x: &Vector<T>) -> Result<T> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        if !self.domain.contains(x, &self.tolerance)? {
            return Err(Error::OutsideDomain);
        }
        self.expr.eval(x)
    }

    /// `alpha * self + beta * other`, both fields living on the same domain.
    pub fn linear_combination(&self, alpha: T, other: &Self, beta: T) -> Result<Self> {
        if self.dim != other.dim || self.domain != other.domain {
            return Err(Error::DomainMismatch("linear combination of fields on different domains".into()));
        }
        let expr = FieldExpr::Sum(vec![
            FieldExpr::Scale(alpha, Box::new(self.expr.clone())),
            FieldExpr::Scale(beta, Box::new(other.expr.clone())),
        ]);
        let mut out = Self::new(expr, self.domain.clone(), self.dim)?;
        let same_map = match (&self.source_map, &other.source_map) {
            (Some(a), Some(b)) => Arc::ptr_eq(a, b).then(|| a.clone()),
            (None, None) => None,
            _ => return Err(Error::Unsupported("mixing composed and plain fields".into())),
        };
        if let Some(map) = same_map {
            out.bound = self.bound.zip(other.bound).map(|(a, b)| alpha.abs() * a + beta.abs() * b);
            out.witness = Some(map.witness().clone());
            out.inner_lipschitz = self
                .inner_lipschitz
                .zip(other.inner_lipschitz)
                .map(|(a, b)| alpha.abs() * a + beta.abs() * b);
            out.source_map = Some(map);
        } else if self.source_map.is_some() {
            return Err(Error::Unsupported("combining fields composed with different maps".into()));
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> &Region<T> {
        &self.domain
    }

    pub fn expr(&self) -> &FieldExpr<T> {
        &self.expr
    }

    pub fn is_bounded(&self) -> bool {
        self.bound.is_some()
    }

    /// Declared bound `M` with `|f| <= M` on the domain.
    pub fn bound(&self) -> Option<T> {
        self.bound
    }

    /// Declared global Lipschitz constant (w.r.t. `‖·‖_∞`), if any.
    pub fn lipschitz(&self) -> Option<T> {
        self.lipschitz
    }

    pub fn witness(&self) -> Option<&PieceFamily<T>> {
        self.witness.as_ref()
    }

    /// Lipschitz bound on witness piece `n`: `L_f · L_φ(n)` for composed fields,
    /// the global constant otherwise.
    pub fn piece_lipschitz(&self, n: usize) -> Option<T> {
        match &self.source_map {
            Some(map) => self.inner_lipschitz.zip(map.piece_lipschitz(n)).map(|(a, b)| a * b),
            None => self.lipschitz,
        }
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance<T>) -> Self {
        self.tolerance = tolerance;
        self
    }
}
