#![allow(dead_code)]

use std::sync::Arc;

use pcretract::{build, BuildOptions, ConstructionId, NormKind, PiecewiseMap, Sampler};

pub fn map(id: ConstructionId, dim: usize, norm: NormKind<f64>) -> PiecewiseMap<f64> {
    build(id, &BuildOptions { dim: Some(dim), norm, ..Default::default() }).unwrap()
}

pub fn shared(id: ConstructionId, dim: usize) -> Arc<PiecewiseMap<f64>> {
    Arc::new(map(id, dim, NormKind::euclidean()))
}

pub fn retract_sampler(map: &PiecewiseMap<f64>, seed: u64) -> Sampler<f64> {
    Sampler::new(seed, map.dim(), map.codomain_sample_set()).unwrap()
}

pub fn domain_sampler(map: &PiecewiseMap<f64>, seed: u64) -> Sampler<f64> {
    Sampler::new(seed, map.dim(), map.sample_window().clone()).unwrap()
}
