//! Seeded, batch-deterministic point samplers over closed-set descriptors.
//!
//! Points are generated in fixed-size batches; batch `b` draws from its own
//! ChaCha stream seeded from `(seed, b)`. The first `n` points of a sampler are
//! therefore a prefix of the first `n' > n` points, and the result does not
//! depend on how batches are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{NormKind, SetDescriptor, Vector};
use crate::scalar::Scalar;

pub const BATCH_SIZE: usize = 1024;

/// Radius added above the lower bound of an unbounded band when sampling it.
pub const DEFAULT_UNBOUNDED_CAP: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleStrategy {
    /// Volume-uniform in balls and bands, cone-measure directions.
    UniformInBall,
    /// Cone-measure on norm spheres (normalized Gaussian for `p = 2`).
    UniformOnSphere,
    UniformInterval,
    /// Deterministic grid: equispaced on intervals, angular grid on planar bands.
    Grid,
}

#[derive(Debug, Clone)]
pub struct Sampler<T> {
    seed: u64,
    dim: usize,
    domain: SetDescriptor<T>,
    strategy: SampleStrategy,
    unbounded_cap: f64,
}

impl<T: Scalar> Sampler<T> {
    /// Sampler over `domain` in `R^dim`, with the strategy picked from the descriptor's shape.
    pub fn new(seed: u64, dim: usize, domain: SetDescriptor<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        if let Some(d) = domain.dim() {
            if d != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: d });
            }
        }
        domain.validate()?;
        if domain.is_empty() {
            return Err(Error::EmptySampler);
        }
        let strategy = match &domain {
            SetDescriptor::Interval { .. } => SampleStrategy::UniformInterval,
            SetDescriptor::NormBand { lo, hi: Some(h), .. } if lo == h => SampleStrategy::UniformOnSphere,
            _ => SampleStrategy::UniformInBall,
        };
        Ok(Self { seed, dim, domain, strategy, unbounded_cap: DEFAULT_UNBOUNDED_CAP })
    }

    pub fn with_strategy(mut self, strategy: SampleStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_unbounded_cap(mut self, cap: f64) -> Self {
        self.unbounded_cap = cap;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> &SetDescriptor<T> {
        &self.domain
    }

    pub fn strategy(&self) -> SampleStrategy {
        self.strategy
    }

    /// The first `n` points of this sampler's sequence.
    pub fn points(&self, n: usize) -> Result<Vec<Vector<T>>> {
        if self.strategy == SampleStrategy::Grid {
            return grid_points(&self.domain, self.dim, n);
        }
        let batches = n.div_ceil(BATCH_SIZE);
        let chunks: Vec<Vec<Vector<T>>> = (0..batches)
            .into_par_iter()
            .map(|b| {
                let count = BATCH_SIZE.min(n - b * BATCH_SIZE);
                let mut rng = batch_rng(self.seed, b as u64);
                (0..count)
                    .map(|_| sample_point(&self.domain, self.dim, self.unbounded_cap, &mut rng))
                    .collect()
            })
            .collect();
        Ok(chunks.into_iter().flatten().collect())
    }
}

/// RNG for batch `batch` of a run seeded with `seed`.
pub fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(batch.wrapping_add(1))))
}

/// Independent seed for sub-stream `stream` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(seed.wrapping_add(splitmix64(stream ^ 0xA5A5_5A5A_C3C3_3C3C)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One random point of `set` (which must be nonempty) in `R^dim`.
pub fn sample_point<T: Scalar, R: Rng + ?Sized>(
    set: &SetDescriptor<T>,
    dim: usize,
    unbounded_cap: f64,
    rng: &mut R,
) -> Vector<T> {
    match set {
        SetDescriptor::Interval { lo, hi } => {
            let (lo, hi) = (lo.to_f64_lossy(), hi.to_f64_lossy());
            let t = lo + rng.random::<f64>() * (hi - lo);
            Vector::from_raw(vec![T::of(t.min(hi))])
        }
        SetDescriptor::NormBand { norm, lo, hi } => {
            let lo = lo.to_f64_lossy();
            let hi = hi.map_or(lo + unbounded_cap, |h| h.to_f64_lossy());
            let r = if lo == hi {
                lo
            } else {
                let d = dim as f64;
                let (a, b) = (lo.powf(d), hi.powf(d));
                (a + rng.random::<f64>() * (b - a)).powf(d.recip()).clamp(lo, hi)
            };
            let dir = direction(*norm, dim, rng);
            Vector::from_raw(dir.into_iter().map(|c| T::of(c * r)).collect())
        }
        SetDescriptor::Singleton { point } => point.clone(),
        SetDescriptor::FiniteUnion { members } => {
            let live: Vec<&SetDescriptor<T>> = members.iter().filter(|m| !m.is_empty()).collect();
            let weights: Vec<f64> = live.iter().map(|m| member_weight(m)).collect();
            let total: f64 = weights.iter().sum();
            let mut pick = rng.random::<f64>() * total;
            let mut chosen = live[live.len() - 1];
            for (m, w) in live.iter().zip(&weights) {
                if pick < *w {
                    chosen = m;
                    break;
                }
                pick -= w;
            }
            sample_point(chosen, dim, unbounded_cap, rng)
        }
        SetDescriptor::Translate { base, offset } => &sample_point(base, dim, unbounded_cap, rng) + offset,
    }
}

// Isolated points get a small share so that unions like {0} ∪ band are mostly sampled from the band.
fn member_weight<T: Scalar>(set: &SetDescriptor<T>) -> f64 {
    match set {
        SetDescriptor::Singleton { .. } => 0.05,
        SetDescriptor::Translate { base, .. } => member_weight(base),
        _ => 1.0,
    }
}

/// Unit vector (in `norm`) distributed by the cone measure of the norm's unit ball.
pub fn direction<T: Scalar, R: Rng + ?Sized>(norm: NormKind<T>, dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = match norm {
            NormKind::Max => (0..dim).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect(),
            NormKind::P(p) if p.to_f64_lossy() == 2.0 => {
                (0..dim).map(|_| StandardNormal.sample(rng)).collect()
            }
            NormKind::P(p) => {
                let p = p.to_f64_lossy();
                let gamma = Gamma::new(p.recip(), 1.0).expect("valid gamma shape");
                (0..dim)
                    .map(|_| {
                        let mag: f64 = gamma.sample(rng).powf(p.recip());
                        if rng.random::<bool>() { mag } else { -mag }
                    })
                    .collect()
            }
        };
        let n = f64_norm(norm, &raw);
        if n > 1e-300 && n.is_finite() {
            return raw.into_iter().map(|c| c / n).collect();
        }
    }
}

fn f64_norm<T: Scalar>(norm: NormKind<T>, c: &[f64]) -> f64 {
    let as_t: Vec<T> = c.iter().map(|&v| T::of(v)).collect();
    norm.norm(&Vector::from_raw(as_t)).to_f64_lossy()
}

fn grid_points<T: Scalar>(set: &SetDescriptor<T>, dim: usize, n: usize) -> Result<Vec<Vector<T>>> {
    match set {
        SetDescriptor::Interval { lo, hi } => {
            let (lo, hi) = (lo.to_f64_lossy(), hi.to_f64_lossy());
            let steps = n.saturating_sub(1).max(1) as f64;
            Ok((0..n)
                .map(|i| Vector::from_raw(vec![T::of(lo + (hi - lo) * i as f64 / steps)]))
                .collect())
        }
        SetDescriptor::NormBand { norm, lo, hi: Some(hi) } if dim == 2 => {
            let (lo, hi) = (lo.to_f64_lossy(), hi.to_f64_lossy());
            let rings = if lo == hi { 1 } else { (n as f64).sqrt().ceil() as usize };
            let per_ring = n.div_ceil(rings);
            let mut out = Vec::with_capacity(n);
            for ring in 0..rings {
                let r = if rings == 1 { lo } else { lo + (hi - lo) * ring as f64 / (rings - 1) as f64 };
                for i in 0..per_ring {
                    if out.len() == n {
                        break;
                    }
                    let theta = std::f64::consts::TAU * i as f64 / per_ring as f64;
                    let raw = [theta.cos(), theta.sin()];
                    let scale = r / f64_norm(*norm, &raw);
                    out.push(Vector::from_raw(raw.iter().map(|&c| T::of(c * scale)).collect()));
                }
            }
            Ok(out)
        }
        _ => Err(Error::Unsupported("grid sampling is available for intervals and bounded planar bands".into())),
    }
}
