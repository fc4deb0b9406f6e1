mod common;

use pcretract::verification::{check_piece_continuity, lipschitz_oracle, run_suite, SuiteOptions};
use pcretract::{ConstructionId, NormKind};

fn opts(seed: u64) -> SuiteOptions {
    SuiteOptions {
        samples: 3000,
        seed,
        max_piece: 4,
        fields: vec!["const:1".into(), "coord:0".into()],
        ..Default::default()
    }
}

#[test]
fn same_seed_same_reports() {
    for id in ConstructionId::ALL {
        let m = common::shared(id, id.default_dim());
        let a = run_suite(&m, &opts(11)).unwrap();
        let b = run_suite(&m, &opts(11)).unwrap();
        assert_eq!(a, b, "{id}");
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn seed_changes_the_samples() {
    let m = common::shared(ConstructionId::OpenBall, 2);
    let a = run_suite(&m, &opts(1)).unwrap();
    let b = run_suite(&m, &opts(2)).unwrap();
    assert_ne!(a, b);
}

#[test]
fn oracle_is_reproducible() {
    let m = common::map(ConstructionId::Sphere, 3, NormKind::Max);
    let a = lipschitz_oracle(&m, 3, 20_000, 9).unwrap();
    assert_eq!(a, lipschitz_oracle(&m, 3, 20_000, 9).unwrap());
    let r = check_piece_continuity(&m, 3, 9, 20_000, 0.05, 1.0).unwrap();
    assert_eq!(r, check_piece_continuity(&m, 3, 9, 20_000, 0.05, 1.0).unwrap());
}
