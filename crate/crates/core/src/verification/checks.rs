use rayon::prelude::*;

use super::pairs::leaf_pairs;
use super::report::{CheckReport, Tally};
use crate::constructions::PiecewiseMap;
use crate::error::{Error, Result};
use crate::model::{NormKind, Region, SetDescriptor, Vector};
use crate::sampling::{derive_seed, Sampler};
use crate::scalar::Scalar;

/// Points drawn from each piece when checking `piece(n) ⊆ piece(n + 1)`.
pub const MONOTONE_SAMPLES: usize = 1000;
/// Pair scale used by the Lipschitz oracle.
pub const ORACLE_DELTA: f64 = 0.01;
/// Fewer valid pairs than this (or than requested, if smaller) is inconclusive.
const MIN_PAIRS: usize = 16;

/// Landmarks of `map` lying exactly in `region`, followed by the first `n`
/// sampler points lying in it up to `slack`. Sampled points must also lie
/// exactly in the map's domain.
fn probe_points<T: Scalar>(
    map: &PiecewiseMap<T>,
    sampler: &Sampler<T>,
    n: usize,
    region: &Region<T>,
    slack: T,
) -> Result<Vec<Vector<T>>> {
    if n == 0 {
        return Err(Error::EmptySampler);
    }
    if sampler.dim() != map.dim() {
        return Err(Error::DimensionMismatch { expected: map.dim(), found: sampler.dim() });
    }
    let mut pts: Vec<Vector<T>> =
        map.landmarks().iter().filter(|p| region.contains_exact(p).unwrap_or(false)).cloned().collect();
    let domain = map.domain();
    pts.extend(sampler.points(n)?.into_iter().filter(|p| {
        region.contains_slack(p, slack).unwrap_or(false) && domain.contains_exact(p).unwrap_or(false)
    }));
    Ok(pts)
}

fn par_eval<T: Scalar, U: Send>(
    pts: &[Vector<T>],
    f: impl Fn(&Vector<T>) -> Result<U> + Sync,
) -> Result<Vec<U>> {
    pts.par_iter().map(&f).collect()
}

/// `max ‖map(a) - a‖` over samples of the retract; `tol` is the pass threshold.
pub fn check_retraction_identity<T: Scalar>(
    map: &PiecewiseMap<T>,
    sampler: &Sampler<T>,
    n: usize,
    tol: f64,
) -> Result<CheckReport> {
    let slack = map.tolerance().membership_tol;
    let pts = probe_points(map, sampler, n, map.codomain_target(), slack)?;
    if pts.is_empty() {
        return Err(Error::EmptySampler);
    }
    let norm = map.norm();
    let gaps = par_eval(&pts, |a| Ok(norm.distance(&map.evaluate(a)?, a).to_f64_lossy()))?;
    let mut tally = Tally::new("retraction_identity", tol);
    for (a, g) in pts.iter().zip(gaps) {
        tally.record(a, g);
    }
    Ok(tally.finish())
}

/// Each domain sample must lie in the piece its index formula predicts, and
/// `piece(n) ⊆ piece(n + 1)` must hold on [`MONOTONE_SAMPLES`] points of each
/// piece for `n = 1..=max_index`. The violation is the number of failures.
pub fn check_cover<T: Scalar>(
    map: &PiecewiseMap<T>,
    sampler: &Sampler<T>,
    n: usize,
    max_index: usize,
) -> Result<CheckReport> {
    if max_index < 1 {
        return Err(Error::InvalidArgument("max_index must be at least 1".into()));
    }
    let witness = map.witness();
    let tol = *map.tolerance();
    let pts = probe_points(map, sampler, n, map.domain(), T::zero())?;
    let covered = par_eval(&pts, |x| match witness.index_for(x, &tol)? {
        Some(i) => witness.piece_contains(i, x, &tol),
        None => Ok(false),
    })?;
    let mut tally = Tally::new("cover", 0.0);
    for (x, ok) in pts.iter().zip(covered) {
        tally.count(x, !ok);
    }
    for k in 1..=max_index {
        let piece = witness.piece(k);
        let samples = Sampler::new(derive_seed(sampler.seed(), k as u64), map.dim(), piece)?.points(MONOTONE_SAMPLES)?;
        let nested = par_eval(&samples, |p| witness.piece_contains(k + 1, p, &tol))?;
        for (p, ok) in samples.iter().zip(nested) {
            tally.count(p, !ok);
        }
    }
    Ok(tally.finish())
}

/// Empirical Lipschitz ratio of `gap` over pairs in one leaf of `piece`.
///
/// The gap is reduced by a rounding allowance of `8 ε max(1, ‖x‖_∞, ‖y‖_∞)`
/// before dividing, so that exact Lipschitz-1 maps evaluated in floating point
/// do not read as slightly steeper on very close pairs.
#[allow(clippy::too_many_arguments)]
pub(crate) fn continuity_tally<T: Scalar>(
    name: String,
    piece: &SetDescriptor<T>,
    dim: usize,
    norm: NormKind<T>,
    seed: u64,
    pairs: usize,
    delta: f64,
    bound: f64,
    gap: impl Fn(&Vector<T>, &Vector<T>) -> Result<f64> + Sync,
) -> Result<CheckReport> {
    let sample = leaf_pairs(piece, dim, norm, seed, pairs, delta);
    let ratios: Vec<f64> = sample
        .par_iter()
        .map(|(x, y)| {
            let scale = x.coords().iter().chain(y.coords()).fold(1.0_f64, |m, c| m.max(c.to_f64_lossy().abs()));
            let allowance = 8.0 * T::epsilon().to_f64_lossy() * scale;
            Ok((gap(x, y)? - allowance).max(0.0) / norm.distance(x, y).to_f64_lossy())
        })
        .collect::<Result<_>>()?;
    let mut tally = Tally::new(name, bound);
    for ((x, _), r) in sample.iter().zip(ratios) {
        tally.record(x, r);
    }
    if sample.len() < MIN_PAIRS.min(pairs) {
        tally.mark_inconclusive();
    }
    Ok(tally.finish())
}

/// Draws pairs within piece `n` at distance up to `delta` (half of them) and
/// compares `‖map(x) - map(y)‖ / ‖x - y‖` with `piece_lipschitz(n) * tol_factor`.
/// The reported violation is the largest ratio seen.
pub fn check_piece_continuity<T: Scalar>(
    map: &PiecewiseMap<T>,
    n: usize,
    seed: u64,
    pairs: usize,
    delta: f64,
    tol_factor: f64,
) -> Result<CheckReport> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let lipschitz = map
        .piece_lipschitz(n)
        .ok_or_else(|| Error::InvalidArgument(format!("no declared Lipschitz constant for piece {n}")))?;
    let norm = map.norm();
    continuity_tally(
        format!("piece_continuity[n={n}]"),
        &map.piece(n),
        map.dim(),
        norm,
        seed,
        pairs,
        delta,
        lipschitz.to_f64_lossy() * tol_factor,
        |x, y| Ok(norm.distance(&map.evaluate(x)?, &map.evaluate(y)?).to_f64_lossy()),
    )
}

/// Largest `‖map(x) - map(y)‖ / ‖x - y‖` over `pairs` seeded pairs in piece `n`,
/// with the same rounding allowance as [`check_piece_continuity`].
pub fn lipschitz_oracle<T: Scalar>(map: &PiecewiseMap<T>, n: usize, pairs: usize, seed: u64) -> Result<f64> {
    let norm = map.norm();
    let report = continuity_tally(
        "lipschitz_oracle".into(),
        &map.piece(n),
        map.dim(),
        norm,
        seed,
        pairs,
        ORACLE_DELTA,
        f64::INFINITY,
        |x, y| Ok(norm.distance(&map.evaluate(x)?, &map.evaluate(y)?).to_f64_lossy()),
    )?;
    if report.samples == 0 {
        return Err(Error::EmptySampler);
    }
    Ok(report.max_violation)
}

/// `| ‖Φ(x)‖ - (‖x‖ - E(‖x‖)) |` over samples; where that holds, samples whose
/// norm is at least `membership_tol` from an integer must also satisfy
/// `‖Φ(x)‖ < 1`, and otherwise count with violation `‖Φ(x)‖`.
pub fn check_norm_identity_open_ball<T: Scalar>(
    map: &PiecewiseMap<T>,
    sampler: &Sampler<T>,
    n: usize,
    tol: f64,
) -> Result<CheckReport> {
    let pts = probe_points(map, sampler, n, map.domain(), T::zero())?;
    let norm = map.norm();
    let away = map.tolerance().membership_tol.to_f64_lossy();
    let gaps = par_eval(&pts, |x| {
        let r = norm.norm(x).to_f64_lossy();
        let image = norm.norm(&map.evaluate(x)?).to_f64_lossy();
        let identity = (image - (r - r.floor())).abs();
        let off_integer = (r - r.round()).abs() >= away;
        Ok(if identity <= tol && off_integer && image >= 1.0 { image } else { identity })
    })?;
    let mut tally = Tally::new("norm_identity_open_ball", tol);
    for (x, g) in pts.iter().zip(gaps) {
        tally.record(x, g);
    }
    Ok(tally.finish())
}
