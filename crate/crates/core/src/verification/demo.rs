use serde::Serialize;

use crate::constructions::PiecewiseMap;
use crate::error::{Error, Result};
use crate::model::Vector;
use crate::scalar::Scalar;

/// Deepest row: `10^-300` is still a normal double.
pub const MAX_DEPTH: u32 = 300;

/// One row of the discontinuity table at radius `r = 10^-k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemoRow {
    pub k: u32,
    pub r: f64,
    pub image_u: Vec<f64>,
    pub image_v: Vec<f64>,
    /// `‖r u - r v‖`
    pub input_gap: f64,
    /// `‖map(r u) - map(r v)‖`
    pub output_gap: f64,
}

/// Evaluates `map` at `r u` and `r v` for `r = 10^-k`, `k = 1..=depth`.
///
/// For the sphere retraction the images stay at `u` and `v` while the inputs
/// collapse onto the origin, so the output gap stays at `‖u - v‖`.
pub fn borsuk_discontinuity_demo<T: Scalar>(
    map: &PiecewiseMap<T>,
    u: &Vector<T>,
    v: &Vector<T>,
    depth: u32,
) -> Result<Vec<DemoRow>> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(Error::InvalidArgument(format!("depth must be between 1 and {MAX_DEPTH}, got {depth}")));
    }
    let norm = map.norm();
    let tol = map.tolerance().identity_tol;
    for w in [u, v] {
        if w.dim() != map.dim() {
            return Err(Error::DimensionMismatch { expected: map.dim(), found: w.dim() });
        }
        let r = norm.norm(w);
        if (r - T::one()).abs() > tol {
            return Err(Error::NotOnSphere(r.to_string()));
        }
    }
    if u == v {
        return Err(Error::InvalidArgument("directions must differ".into()));
    }
    (1..=depth)
        .map(|k| {
            let r = T::of(10f64.powi(-(k as i32)));
            let (x, y) = (scale(u, r)?, scale(v, r)?);
            let (fx, fy) = (map.evaluate(&x)?, map.evaluate(&y)?);
            Ok(DemoRow {
                k,
                r: r.to_f64_lossy(),
                input_gap: norm.distance(&x, &y).to_f64_lossy(),
                output_gap: norm.distance(&fx, &fy).to_f64_lossy(),
                image_u: fx.to_f64(),
                image_v: fy.to_f64(),
            })
        })
        .collect()
}

fn scale<T: Scalar>(w: &Vector<T>, r: T) -> Result<Vector<T>> {
    w.scaled(r).ok_or_else(|| Error::NonFinite(r.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, BuildOptions, ConstructionId};

    fn sphere() -> PiecewiseMap<f64> {
        build(ConstructionId::Sphere, &BuildOptions { dim: Some(2), ..Default::default() }).unwrap()
    }

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn images_stay_put() {
        let rows = borsuk_discontinuity_demo(&sphere(), &v(&[1.0, 0.0]), &v(&[0.0, 1.0]), 12).unwrap();
        assert_eq!(rows.len(), 12);
        for row in &rows {
            assert_eq!(row.image_u, vec![1.0, 0.0]);
            assert_eq!(row.image_v, vec![0.0, 1.0]);
            assert!((row.output_gap - 2f64.sqrt()).abs() <= 1e-15);
            assert!(row.input_gap <= 2.0 * row.r);
        }
        assert!(rows[11].input_gap < 2e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let m = sphere();
        let e1 = v(&[1.0, 0.0]);
        assert!(borsuk_discontinuity_demo(&m, &e1, &e1, 3).is_err());
        assert!(borsuk_discontinuity_demo(&m, &e1, &v(&[0.0, 2.0]), 3).is_err());
        assert!(borsuk_discontinuity_demo(&m, &e1, &v(&[0.0, 1.0]), 0).is_err());
        assert!(borsuk_discontinuity_demo(&m, &e1, &v(&[0.0, 1.0, 0.0]), 3).is_err());
    }
}
