mod common;

use ladderlab::quadrature::{build_checkpoints, integrate, CheckpointTable, IntegrationPolicy};
use ladderlab::zeta::{zero_density, zsq, ZetaConfig};
use ladderlab::LadderError;
use proptest::prelude::*;

fn z2(t: f64) -> f64 {
    zsq(t, &ZetaConfig::default())
}

fn oracle_z2(t: f64) -> f64 {
    common::hardy_z(t).powi(2)
}

#[test]
fn integral_100_to_200_matches_simpson() {
    let got = integrate(z2, 100.0, 200.0, 1e-9, zero_density).unwrap();
    let want = common::simpson(oracle_z2, 100.0, 200.0, 1e-3);
    assert!(((got.value - want) / want).abs() < 1e-6, "{} vs {want}", got.value);
}

#[test]
fn cumulative_100_matches_simpson_from_zero() {
    let table = build_checkpoints(200.0, 10.0).unwrap();
    let got = table.cumulative_i(100.0).unwrap();
    let want = common::simpson(oracle_z2, 0.0, 100.0, 1e-3);
    assert!(((got - want) / want).abs() < 1e-6, "{got} vs {want}");
}

#[test]
fn step_1_and_step_10_tables_agree() {
    let fine = build_checkpoints(3000.0, 1.0).unwrap();
    let coarse = build_checkpoints(3000.0, 10.0).unwrap();
    for t in [57.3, 333.3, 1000.0, 2024.6, 2999.9] {
        let (a, b) = (fine.cumulative_i(t).unwrap(), coarse.cumulative_i(t).unwrap());
        assert!(((a - b) / b).abs() < 1e-8, "t = {t}: {a} vs {b}");
    }
}

#[test]
fn beyond_table_is_an_error() {
    let table = build_checkpoints(100.0, 10.0).unwrap();
    assert!(matches!(table.cumulative_i(100.5), Err(LadderError::BeyondTable { .. })));
}

#[test]
fn save_load_round_trip_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ckpt.csv");
    let table = build_checkpoints(500.0, 10.0).unwrap();
    table.save(&path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("t,I\n"));
    let mut loaded = CheckpointTable::load(&path, IntegrationPolicy::default()).unwrap();
    assert_eq!(loaded.grid(), table.grid());

    loaded.extend_to(800.0).unwrap();
    let direct = build_checkpoints(800.0, 10.0).unwrap();
    for (a, b) in loaded.grid().iter().zip(direct.grid()) {
        assert_eq!(a.0, b.0);
        assert!((a.1 - b.1).abs() <= 1e-12 * b.1.max(1.0));
    }
}

#[test]
fn corrupted_checkpoint_is_rejected() {
    let policy = IntegrationPolicy::default();
    let bad_header = "T,value\n0,0\n";
    let decreasing = "t,I\n0,0\n10,5\n20,4\n";
    let uneven = "t,I\n0,0\n10,5\n25,9\n";
    for text in [bad_header, decreasing, uneven] {
        assert!(CheckpointTable::read_csv(text.as_bytes(), policy).is_err(), "{text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn additivity(a in 10.0f64..1500.0, w1 in 0.5f64..300.0, w2 in 0.5f64..300.0) {
        let (b, c) = (a + w1, a + w1 + w2);
        let policy = IntegrationPolicy::default();
        let ab = policy.integrate_zsq(a, b).unwrap();
        let bc = policy.integrate_zsq(b, c).unwrap();
        let ac = policy.integrate_zsq(a, c).unwrap();
        let slack = ab.error_estimate + bc.error_estimate + ac.error_estimate;
        prop_assert!((ab.value + bc.value - ac.value).abs() <= slack,
            "mismatch {} > {}", (ab.value + bc.value - ac.value).abs(), slack);
    }
}
