//! Seeded point pairs lying in a common closed member of a witness piece.

use rand::Rng;
use rayon::prelude::*;

use crate::model::{NormKind, SetDescriptor, Vector};
use crate::sampling::{batch_rng, direction, sample_point, BATCH_SIZE, DEFAULT_UNBOUNDED_CAP};
use crate::scalar::Scalar;

const ATTEMPTS: usize = 8;

/// Pairs closer than this are skipped as numerically degenerate.
pub const MIN_PAIR_DISTANCE: f64 = 1e-14;

/// Up to `pairs` pairs `(x, y)` with both points in the same leaf of `piece`.
///
/// Half of the pairs are local (`‖x - y‖ <= delta`), the other half draw `y`
/// independently from the leaf. Slots that find no valid pair after a few
/// attempts are dropped, so thin pieces yield fewer pairs.
pub(crate) fn leaf_pairs<T: Scalar>(
    piece: &SetDescriptor<T>,
    dim: usize,
    norm: NormKind<T>,
    seed: u64,
    pairs: usize,
    delta: f64,
) -> Vec<(Vector<T>, Vector<T>)> {
    let leaves: Vec<SetDescriptor<T>> = piece
        .leaves()
        .into_iter()
        .filter(|l| !l.is_empty() && !matches!(l, SetDescriptor::Singleton { .. }))
        .collect();
    if leaves.is_empty() || pairs == 0 {
        return Vec::new();
    }
    let batches = pairs.div_ceil(BATCH_SIZE);
    let chunks: Vec<Vec<(Vector<T>, Vector<T>)>> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let count = BATCH_SIZE.min(pairs - b * BATCH_SIZE);
            let mut rng = batch_rng(seed, b as u64);
            (0..count)
                .filter_map(|i| one_pair(&leaves, dim, norm, delta, i % 2 == 0, &mut rng))
                .collect()
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

fn one_pair<T: Scalar, R: Rng + ?Sized>(
    leaves: &[SetDescriptor<T>],
    dim: usize,
    norm: NormKind<T>,
    delta: f64,
    local: bool,
    rng: &mut R,
) -> Option<(Vector<T>, Vector<T>)> {
    for _ in 0..ATTEMPTS {
        let leaf = &leaves[rng.random_range(0..leaves.len())];
        let x = sample_point(leaf, dim, DEFAULT_UNBOUNDED_CAP, rng);
        let y = if local {
            let step = delta * rng.random::<f64>();
            let u = direction(norm, dim, rng);
            let shifted: Option<Vec<T>> =
                x.coords().iter().zip(&u).map(|(c, d)| T::from_f64(c.to_f64_lossy() + d * step)).collect();
            Vector::from_raw(shifted?)
        } else {
            sample_point(leaf, dim, DEFAULT_UNBOUNDED_CAP, rng)
        };
        let inside = |p: &Vector<T>| leaf.contains_exact(p).unwrap_or(false);
        if inside(&x) && inside(&y) && norm.distance(&x, &y).to_f64_lossy() >= MIN_PAIR_DISTANCE {
            return Some((x, y));
        }
    }
    None
}
