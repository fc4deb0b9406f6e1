use std::sync::Arc;

use super::checks::{check_cover, check_norm_identity_open_ball, check_piece_continuity, check_retraction_identity};
use super::operator::{check_composition_continuity, check_operator_properties};
use super::report::{CheckReport, Tally};
use crate::constructions::{MapRule, PiecewiseMap};
use crate::error::Result;
use crate::function_ops::ScalarField;
use crate::sampling::{derive_seed, Sampler};
use crate::scalar::Scalar;

/// Settings for [`run_suite`].
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub samples: usize,
    pub seed: u64,
    /// Pieces `1..=max_piece` get a continuity check; cover nesting is checked up to it.
    pub max_piece: usize,
    /// Threshold for the identity, norm-identity, linearity, extension and isometry checks.
    pub identity_tol: f64,
    /// Scale of local pairs in continuity checks.
    pub delta: f64,
    /// Slack on declared Lipschitz constants, absorbing rounding in the ratio.
    pub tol_factor: f64,
    /// Field expressions on the retract for the operator checks; empty skips them.
    pub fields: Vec<String>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            samples: 10_000,
            seed: 0,
            max_piece: 10,
            identity_tol: 1e-12,
            delta: 0.05,
            tol_factor: 1.0 + 1e-6,
            fields: Vec::new(),
        }
    }
}

/// Every check that applies to `map`, in a fixed order: identity, cover,
/// continuity of pieces `1..=max_piece`, the norm identity for the open-ball
/// retraction, then the operator checks and their continuity per field.
pub fn run_suite<T: Scalar>(map: &Arc<PiecewiseMap<T>>, opts: &SuiteOptions) -> Result<Vec<CheckReport>> {
    let dim = map.dim();
    let seed = |stream: u64| derive_seed(opts.seed, stream);
    let codomain = || Sampler::new(seed(1), dim, map.codomain_sample_set());
    let window = |stream: u64| Sampler::new(seed(stream), dim, map.sample_window().clone());

    let mut reports = vec![
        check_retraction_identity(map, &codomain()?, opts.samples, opts.identity_tol)?,
        check_cover(map, &window(2)?, opts.samples, opts.max_piece)?,
    ];
    for n in 1..=opts.max_piece {
        reports.push(check_piece_continuity(map, n, seed(100 + n as u64), opts.samples, opts.delta, opts.tol_factor)?);
    }
    if matches!(map.rule(), MapRule::OpenBallRetraction { .. }) {
        reports.push(check_norm_identity_open_ball(map, &window(3)?, opts.samples, opts.identity_tol)?);
    }
    if opts.fields.is_empty() {
        return Ok(reports);
    }
    let fields: Vec<ScalarField<T>> = opts
        .fields
        .iter()
        .map(|s| ScalarField::parse(s, map.codomain_target().clone(), dim))
        .collect::<Result<_>>()?;
    let sampler_a = Sampler::new(seed(4), dim, map.codomain_sample_set())?;
    reports.extend(check_operator_properties(map, &fields, &sampler_a, &window(5)?, opts.samples, opts.identity_tol)?);
    for (i, f) in fields.iter().enumerate() {
        for n in 1..=opts.max_piece {
            if f.lipschitz().is_none() || map.piece_lipschitz(n).is_none() {
                let mut t = Tally::new(format!("composition_continuity[f={},n={n}]", f.expr()), 0.0);
                t.mark_inconclusive();
                reports.push(t.finish());
                continue;
            }
            let s = seed(1000 + (i * (opts.max_piece + 1) + n) as u64);
            reports.push(check_composition_continuity(map, f, n, s, opts.samples, opts.delta, opts.tol_factor)?);
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, BuildOptions, ConstructionId};

    #[test]
    fn sphere_suite_is_green_and_ordered() {
        let map = Arc::new(build::<f64>(ConstructionId::Sphere, &BuildOptions::default()).unwrap());
        let opts = SuiteOptions { samples: 2000, seed: 7, max_piece: 3, fields: vec!["coord:0".into()], ..Default::default() };
        let reports = run_suite(&map, &opts).unwrap();
        let names: Vec<&str> = reports.iter().map(|r| r.check.as_str()).collect();
        assert_eq!(
            names,
            [
                "retraction_identity",
                "cover",
                "piece_continuity[n=1]",
                "piece_continuity[n=2]",
                "piece_continuity[n=3]",
                "operator_linearity",
                "operator_positivity",
                "operator_extension",
                "operator_isometry",
                "composition_continuity[f=coord:0,n=1]",
                "composition_continuity[f=coord:0,n=2]",
                "composition_continuity[f=coord:0,n=3]",
            ]
        );
        for r in &reports {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn open_ball_suite_includes_norm_identity() {
        let map = Arc::new(build::<f64>(ConstructionId::OpenBall, &BuildOptions::default()).unwrap());
        let opts = SuiteOptions { samples: 1000, max_piece: 2, ..Default::default() };
        let reports = run_suite(&map, &opts).unwrap();
        assert_eq!(reports.last().unwrap().check, "norm_identity_open_ball");
        assert!(reports.iter().all(CheckReport::passed), "{reports:?}");
    }
}
