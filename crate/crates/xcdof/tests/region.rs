use proptest::prelude::*;
use xcdof::loss::{classify_loss, loss_grid, table_regime, GridMode, RegimeRule};
use xcdof::rational::rat;
use xcdof::region::{
    achieve_corner, region_symmetric, region_with_rule, run_plan, verify_region_with,
    CoefficientRule, Regime,
};
use xcdof::table::{fig4, table1};
use xcdof::{sum_dof, AntennaConfig, Field, Rational, XcError};

#[test]
fn regime_two_contains_scheme_corner() {
    let r = region_symmetric(3, 2).unwrap();
    assert_eq!(r.regime, Regime::R2);
    let p = [rat(15, 14), rat(3, 14), rat(15, 14), rat(3, 14)];
    assert!(r.corner_points().contains(&p));
    assert!(r.contains(&p));
    assert_eq!(r.tight_rank(&p), 4);
    assert_eq!(r.corner_points().len(), 12);
}

#[test]
fn regime_five_reduces_to_pairwise_bounds() {
    let r = region_symmetric(1, 3).unwrap();
    assert_eq!(r.regime, Regime::R5);
    assert_eq!(r.corner_points().len(), 4);
    assert!(r.contains(&[rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 1)]));
    assert!(!r.contains(&[rat(1, 1), rat(0, 1), rat(1, 1), rat(0, 1)]));
}

#[test]
fn literal_mixed_coefficient_cuts_published_corners() {
    let corrected = verify_region_with(1, 3, CoefficientRule::Corrected).unwrap();
    let literal = verify_region_with(1, 3, CoefficientRule::Literal).unwrap();
    assert!(corrected.infeasible.is_empty());
    assert_eq!(literal.infeasible.len(), 4);
}

#[test]
fn max_vertex_sum_is_sum_dof() {
    for m in 1..=6 {
        for n in 1..=6 {
            let rep = verify_region_with(m, n, CoefficientRule::Corrected).unwrap();
            let d = sum_dof(&AntennaConfig::symmetric(m, n));
            assert_eq!(rep.max_vertex_sum, d, "({m},{n})");
            assert_eq!(rep.max_corner_sum, d, "({m},{n})");
        }
    }
}

#[test]
fn unknown_corner_is_an_error() {
    let e = achieve_corner(3, 2, &[rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)]).unwrap_err();
    assert!(matches!(e, XcError::UnknownCorner(_)));
}

#[test]
fn plans_hit_their_corners() {
    let f = Field::default();
    for (m, n) in [(3, 1), (3, 2), (4, 5), (2, 3), (1, 3)] {
        let r = region_symmetric(m, n).unwrap();
        for corner in &r.corners {
            let plan = achieve_corner(m, n, &corner.point).unwrap();
            let out = run_plan(&plan, f, 0).unwrap();
            assert!(out.passed(), "({m},{n}) {:?}", corner.point);
        }
    }
}

#[test]
fn region_json_round_trip_shape() {
    let r = region_with_rule(2, 3, CoefficientRule::Corrected).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["corners"].as_array().unwrap().len(), r.corners.len());
    assert!(r.to_text().contains("H-representation"));
}

#[test]
fn table1_rows_match_closed_forms() {
    let rows = table1(8).unwrap();
    assert_eq!(rows.len(), 64);
    assert!(rows.iter().all(|r| r.matches()));
}

/// The cooperative curve is flat at 4/3 up to N/M = 1 and equals the
/// distributed curve from 4/3 on.
#[test]
fn fig4_curves() {
    for row in fig4(8).unwrap() {
        if row.ratio <= rat(1, 1) {
            assert_eq!(row.bc, rat(4, 3), "at {}", row.ratio);
        }
        if row.ratio >= rat(4, 3) {
            assert_eq!(row.xc, row.bc, "at {}", row.ratio);
        }
    }
}

#[test]
fn table_and_formula_agree() {
    for c in xcdof::normalized_configs(8) {
        let l = classify_loss(&c).unwrap();
        assert!(l.consistent(), "{c}");
    }
}

#[test]
fn literal_regime_one_misfires() {
    let c = AntennaConfig::new(3, 1, 2, 3);
    assert!(!classify_loss(&c).unwrap().formula_loss);
    assert!(table_regime(&c, 0, RegimeRule::Literal).is_some());
    assert!(table_regime(&c, 0, RegimeRule::Corrected).is_none());
}

#[test]
fn symmetric_loss_interval() {
    for row in loss_grid(GridMode::Symmetric, 8).unwrap() {
        let ratio = rat(row.n1 as i128, row.m1 as i128);
        let expected = ratio > rat(1, 2) && ratio < rat(4, 3);
        assert_eq!(row.loss, expected, "N/M = {ratio}");
    }
}

proptest! {
    #[test]
    fn corners_lie_in_region(m in 1u32..=6, n in 1u32..=6) {
        let r = region_symmetric(m, n).unwrap();
        let zero = Rational::from_integer(0);
        for p in r.corner_points() {
            prop_assert!(r.contains(&p));
            prop_assert!(p.iter().all(|x| *x >= zero));
        }
    }

    #[test]
    fn region_is_symmetric_under_relabeling(m in 1u32..=6, n in 1u32..=6) {
        let r = region_symmetric(m, n).unwrap();
        for p in r.corner_points() {
            // Swap transmitters, then receivers.
            let tx = [p[1], p[0], p[3], p[2]];
            let rx = [p[2], p[3], p[0], p[1]];
            prop_assert!(r.contains(&tx));
            prop_assert!(r.contains(&rx));
        }
    }
}
