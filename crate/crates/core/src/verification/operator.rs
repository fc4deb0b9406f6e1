use std::sync::Arc;

use rayon::prelude::*;

use super::checks::continuity_tally;
use super::report::{CheckReport, Tally};
use crate::constructions::PiecewiseMap;
use crate::error::{Error, Result};
use crate::function_ops::{extension_operator, FieldExpr, ScalarField};
use crate::model::Vector;
use crate::sampling::Sampler;
use crate::scalar::Scalar;

/// Coefficients used in the linearity check.
pub const LINEARITY_COEFFICIENTS: (f64, f64) = (2.0, -3.0);

/// The operator whose properties are checked. Only [`OperatorUnderTest::Composition`]
/// is the extension operator; the others are negative controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorUnderTest {
    /// `f ↦ f ∘ φ`.
    Composition,
    /// `f ↦ f ∘ φ + c`.
    Shifted(f64),
    /// `f ↦ -(f ∘ φ)`.
    Negated,
}

impl OperatorUnderTest {
    fn apply<T: Scalar>(self, composed: &ScalarField<T>, x: &Vector<T>) -> Result<f64> {
        let v = composed.evaluate(x)?.to_f64_lossy();
        Ok(match self {
            Self::Composition => v,
            Self::Shifted(c) => v + c,
            Self::Negated => -v,
        })
    }
}

type SamplePair<T> = (Vec<Vector<T>>, Vec<Vector<T>>);

/// Samples shared by the operator checks: points of `A` and of the domain of `φ`.
fn operator_points<T: Scalar>(
    phi: &PiecewiseMap<T>,
    sampler_a: &Sampler<T>,
    sampler_x: &Sampler<T>,
    n: usize,
) -> Result<SamplePair<T>> {
    if n == 0 {
        return Err(Error::EmptySampler);
    }
    for s in [sampler_a, sampler_x] {
        if s.dim() != phi.dim() {
            return Err(Error::DimensionMismatch { expected: phi.dim(), found: s.dim() });
        }
    }
    let target = phi.codomain_target();
    let domain = phi.domain();
    let a: Vec<_> = sampler_a.points(n)?.into_iter().filter(|p| {
        target.contains(p, phi.tolerance()).unwrap_or(false) && domain.contains_exact(p).unwrap_or(false)
    }).collect();
    let x: Vec<_> = sampler_x.points(n)?.into_iter().filter(|p| domain.contains_exact(p).unwrap_or(false)).collect();
    if a.is_empty() || x.is_empty() {
        return Err(Error::EmptySampler);
    }
    Ok((a, x))
}

/// Linearity, positivity, extension and isometry of `f ↦ f ∘ φ` on `fields`.
pub fn check_operator_properties<T: Scalar>(
    phi: &Arc<PiecewiseMap<T>>,
    fields: &[ScalarField<T>],
    sampler_a: &Sampler<T>,
    sampler_x: &Sampler<T>,
    n: usize,
    tol: f64,
) -> Result<Vec<CheckReport>> {
    check_operator_properties_with(OperatorUnderTest::Composition, phi, fields, sampler_a, sampler_x, n, tol)
}

/// [`check_operator_properties`] for an arbitrary operator from the catalog.
///
/// * linearity: `|T(αf + βg)(x) - αT(f)(x) - βT(g)(x)|`, relative to
///   `max(1, |αT(f)(x)| + |βT(g)(x)|)`, for every ordered pair of fields;
/// * positivity: `-T(h)(x)` where positive, for `h` each field that is
///   nonnegative on the `A`-samples and each bounded field shifted by its bound;
/// * extension: `|T(f)(a) - f(a)|` relative to `max(1, |f(a)|)`;
/// * isometry: for bounded `f`, the gap between `max |T(f)|` over the
///   `X`-samples together with the `A`-samples, and `max |f|` over the
///   `A`-samples together with `φ` of the `X`-samples; an `X`-sample mapped
///   outside `A` counts as a gap of 1.
#[allow(clippy::too_many_arguments)]
pub fn check_operator_properties_with<T: Scalar>(
    op: OperatorUnderTest,
    phi: &Arc<PiecewiseMap<T>>,
    fields: &[ScalarField<T>],
    sampler_a: &Sampler<T>,
    sampler_x: &Sampler<T>,
    n: usize,
    tol: f64,
) -> Result<Vec<CheckReport>> {
    if fields.is_empty() {
        return Err(Error::InvalidArgument("the operator suite needs at least one field".into()));
    }
    let (a_pts, x_pts) = operator_points(phi, sampler_a, sampler_x, n)?;
    let composed: Vec<ScalarField<T>> = fields.iter().map(|f| extension_operator(phi, f)).collect::<Result<_>>()?;
    Ok(vec![
        linearity(op, phi, fields, &composed, &x_pts, tol)?,
        positivity(op, phi, fields, &a_pts, &x_pts)?,
        extension(op, fields, &composed, &a_pts, tol)?,
        isometry(op, phi, fields, &composed, &a_pts, &x_pts, tol)?,
    ])
}

fn linearity<T: Scalar>(
    op: OperatorUnderTest,
    phi: &Arc<PiecewiseMap<T>>,
    fields: &[ScalarField<T>],
    composed: &[ScalarField<T>],
    x_pts: &[Vector<T>],
    tol: f64,
) -> Result<CheckReport> {
    let (alpha, beta) = LINEARITY_COEFFICIENTS;
    let mut tally = Tally::new("operator_linearity", tol);
    for i in 0..fields.len() {
        for j in 0..fields.len() {
            if i == j && fields.len() > 1 {
                continue;
            }
            let combo = fields[i].linear_combination(T::of(alpha), &fields[j], T::of(beta))?;
            let t_combo = extension_operator(phi, &combo)?;
            let gaps: Vec<f64> = x_pts
                .par_iter()
                .map(|x| {
                    let lhs = op.apply(&t_combo, x)?;
                    let (tf, tg) = (alpha * op.apply(&composed[i], x)?, beta * op.apply(&composed[j], x)?);
                    Ok((lhs - (tf + tg)).abs() / (tf.abs() + tg.abs()).max(1.0))
                })
                .collect::<Result<_>>()?;
            for (x, g) in x_pts.iter().zip(gaps) {
                tally.record(x, g);
            }
        }
    }
    Ok(tally.finish())
}

fn positivity<T: Scalar>(
    op: OperatorUnderTest,
    phi: &Arc<PiecewiseMap<T>>,
    fields: &[ScalarField<T>],
    a_pts: &[Vector<T>],
    x_pts: &[Vector<T>],
) -> Result<CheckReport> {
    let mut candidates = Vec::new();
    for f in fields {
        let nonneg = a_pts.iter().try_fold(true, |ok, a| Ok::<_, Error>(ok && f.evaluate(a)? >= T::zero()))?;
        if nonneg {
            candidates.push(f.clone());
        }
        if let Some(b) = f.bound() {
            let shift = ScalarField::new(FieldExpr::Const(b), f.domain().clone(), f.dim())?;
            candidates.push(f.linear_combination(T::one(), &shift, T::one())?);
        }
    }
    let mut tally = Tally::new("operator_positivity", 0.0);
    for h in &candidates {
        let th = extension_operator(phi, h)?;
        let values: Vec<f64> = x_pts.par_iter().map(|x| op.apply(&th, x)).collect::<Result<_>>()?;
        for (x, v) in x_pts.iter().zip(values) {
            tally.record(x, (-v).max(0.0));
        }
    }
    Ok(tally.finish())
}

fn extension<T: Scalar>(
    op: OperatorUnderTest,
    fields: &[ScalarField<T>],
    composed: &[ScalarField<T>],
    a_pts: &[Vector<T>],
    tol: f64,
) -> Result<CheckReport> {
    let mut tally = Tally::new("operator_extension", tol);
    for (f, tf) in fields.iter().zip(composed) {
        let gaps: Vec<f64> = a_pts
            .par_iter()
            .map(|a| {
                let want = f.evaluate(a)?.to_f64_lossy();
                Ok((op.apply(tf, a)? - want).abs() / want.abs().max(1.0))
            })
            .collect::<Result<_>>()?;
        for (a, g) in a_pts.iter().zip(gaps) {
            tally.record(a, g);
        }
    }
    Ok(tally.finish())
}

fn isometry<T: Scalar>(
    op: OperatorUnderTest,
    phi: &Arc<PiecewiseMap<T>>,
    fields: &[ScalarField<T>],
    composed: &[ScalarField<T>],
    a_pts: &[Vector<T>],
    x_pts: &[Vector<T>],
    tol: f64,
) -> Result<CheckReport> {
    let target = phi.codomain_target();
    let tolerance = phi.tolerance();
    let images: Vec<Vector<T>> = x_pts.par_iter().map(|x| phi.evaluate(x)).collect::<Result<_>>()?;
    let mut tally = Tally::new("operator_isometry", tol);
    for (x, y) in x_pts.iter().zip(&images) {
        let outside = !target.contains(y, tolerance)?;
        tally.record(x, if outside { 1.0 } else { 0.0 });
    }
    for (f, tf) in fields.iter().zip(composed) {
        if !f.is_bounded() {
            continue;
        }
        let mut sup_x = 0.0_f64;
        let mut arg = &x_pts[0];
        for p in x_pts.iter().chain(a_pts) {
            let v = op.apply(tf, p)?.abs();
            if v > sup_x {
                sup_x = v;
                arg = p;
            }
        }
        let mut sup_a = 0.0_f64;
        for p in a_pts.iter().chain(&images) {
            if target.contains(p, tolerance)? {
                sup_a = sup_a.max(f.evaluate(p)?.to_f64_lossy().abs());
            }
        }
        // one comparison of two suprema, each over the X- and A-samples
        tally.add_samples(x_pts.len() + a_pts.len() - 1);
        tally.record(arg, (sup_x - sup_a).abs());
    }
    Ok(tally.finish())
}

/// For pairs in piece `n` of `φ`'s cover, `|T(f)(x) - T(f)(y)| <= L_f · L_φ(n) · ‖x - y‖ · tol_factor`.
#[allow(clippy::too_many_arguments)]
pub fn check_composition_continuity<T: Scalar>(
    phi: &Arc<PiecewiseMap<T>>,
    f: &ScalarField<T>,
    n: usize,
    seed: u64,
    pairs: usize,
    delta: f64,
    tol_factor: f64,
) -> Result<CheckReport> {
    let tf = extension_operator(phi, f)?;
    let bound = tf
        .piece_lipschitz(n)
        .ok_or_else(|| Error::InvalidArgument(format!("no Lipschitz bound for {} on piece {n}", f.expr())))?;
    continuity_tally(
        format!("composition_continuity[f={},n={n}]", f.expr()),
        &phi.piece(n),
        phi.dim(),
        phi.norm(),
        seed,
        pairs,
        delta,
        bound.to_f64_lossy() * tol_factor,
        |x, y| Ok((tf.evaluate(x)? - tf.evaluate(y)?).abs().to_f64_lossy()),
    )
}
