use std::sync::Arc;

use super::field::{FieldExpr, ScalarField};
use crate::constructions::PiecewiseMap;
use crate::error::{Error, Result};
use crate::sampling::Sampler;
use crate::scalar::Scalar;

const DOMAIN_CHECK_SEED: u64 = 0xd0_3a17;
const DOMAIN_CHECK_SAMPLES: usize = 256;

/// `T_φ(f) = f ∘ φ`: extends a field on the retract `A` to the whole domain of `φ`.
///
/// The result keeps `f`'s bound and carries `φ`'s witness cover. Fields that
/// are themselves only piecewise continuous would need that cover refined by
/// preimages, which is not supported.
pub fn extension_operator<T: Scalar>(phi: &Arc<PiecewiseMap<T>>, f: &ScalarField<T>) -> Result<ScalarField<T>> {
    if f.dim != phi.dim() {
        return Err(Error::DimensionMismatch { expected: phi.dim(), found: f.dim });
    }
    if f.witness.is_some() {
        return Err(Error::Unsupported("composition with a piecewise field needs a refined witness".into()));
    }
    let tol = phi.tolerance();
    let mut probes: Vec<_> = phi
        .landmarks()
        .iter()
        .filter(|p| phi.codomain_target().contains_exact(p).unwrap_or(false))
        .cloned()
        .collect();
    probes.extend(Sampler::new(DOMAIN_CHECK_SEED, phi.dim(), phi.codomain_sample_set())?.points(DOMAIN_CHECK_SAMPLES)?);
    for a in &probes {
        if !f.domain.contains(a, tol)? {
            return Err(Error::DomainMismatch("the field's domain does not contain the retract".into()));
        }
    }
    Ok(ScalarField {
        dim: f.dim,
        domain: phi.domain().clone(),
        expr: FieldExpr::Compose { map: phi.clone(), inner: Box::new(f.expr.clone()) },
        bound: f.bound,
        lipschitz: None,
        witness: Some(phi.witness().clone()),
        source_map: Some(phi.clone()),
        inner_lipschitz: f.lipschitz,
        tolerance: *tol,
    })
}

/// Max of `|f|` over the first `n` points of `sampler`: a lower estimate of the
/// sup norm, non-decreasing in `n`.
pub fn sup_norm_estimate<T: Scalar>(f: &ScalarField<T>, sampler: &Sampler<T>, n: usize) -> Result<T> {
    if !f.is_bounded() {
        return Err(Error::Unbounded);
    }
    if n == 0 {
        return Err(Error::EmptySampler);
    }
    sampler
        .points(n)?
        .iter()
        .try_fold(T::zero(), |acc, x| f.evaluate(x).map(|v| acc.max(v.abs())))
}
