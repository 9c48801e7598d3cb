use xcdof::bounds::{
    appendix_c_spot_check, bc_ratio_bound, verify, verify_lemma1, verify_lemma2, CheckKind,
    StrategyMode,
};
use xcdof::rational::rat;
use xcdof::{scheme, AntennaConfig, Field};

fn c(m1: u32, m2: u32, n1: u32, n2: u32) -> AntennaConfig {
    AntennaConfig::new(m1, m2, n1, n2)
}

#[test]
fn lemma1_unit_config() {
    let r = verify_lemma1(&c(1, 1, 1, 1), 6, 300, StrategyMode::ObliviousRandom, 0).unwrap();
    assert_eq!(r.violations, 0);
    assert_eq!(r.bound, [Some(rat(3, 2)), Some(rat(3, 2))]);
    assert!(r.max_ratio_observed.iter().flatten().all(|x| *x <= rat(3, 2)));
}

#[test]
fn lemma1_scheme_is_tight() {
    let r = verify_lemma1(&c(3, 3, 2, 2), 0, 3, StrategyMode::PaperScheme, 0).unwrap();
    assert_eq!(r.violations, 0);
    assert_eq!(r.max_ratio_observed, [Some(rat(9, 5)), Some(rat(9, 5))]);
    assert!(r.tightness_hits > 0);
}

#[test]
fn lemma1_ratio_is_one_when_receivers_dominate() {
    for mode in [StrategyMode::ObliviousRandom, StrategyMode::DelayedAdaptiveRandom] {
        let r = verify_lemma1(&c(1, 1, 4, 4), 5, 50, mode, 2).unwrap();
        assert!(r.max_ratio_observed.iter().flatten().all(|x| *x <= rat(1, 1)));
    }
}

/// `min{max{M, N_i'}, N_i + N_i'} / N_i'` by hand.
#[test]
fn broadcast_bound_values() {
    assert_eq!(bc_ratio_bound(2, [1, 1], 0), rat(2, 1));
    assert_eq!(bc_ratio_bound(1, [3, 2], 0), rat(1, 1));
    assert_eq!(bc_ratio_bound(5, [2, 3], 1), rat(5, 2));
}

#[test]
fn lemma2_broadcast() {
    let r = verify_lemma2(2, 1, 1, 6, 300, StrategyMode::ObliviousRandom, 1).unwrap();
    assert_eq!(r.violations, 0);
    let r = verify_lemma2(1, 3, 2, 6, 100, StrategyMode::DelayedAdaptiveRandom, 1).unwrap();
    assert!(r.max_ratio_observed.iter().flatten().all(|x| *x <= rat(1, 1)));
}

#[test]
fn lemma3_random_small_configs() {
    for cfg in xcdof::normalized_configs(2) {
        for mode in [StrategyMode::ObliviousRandom, StrategyMode::DelayedAdaptiveRandom] {
            let r = verify(CheckKind::Lemma3, &cfg, 4, 50, mode, 3, Field::default()).unwrap();
            assert_eq!(r.violations, 0, "{cfg} {mode}");
        }
    }
}

#[test]
fn weighted_sum_on_scheme() {
    let r = xcdof::bounds::verify_weighted_sum(&c(3, 3, 2, 2), 5, 0).unwrap();
    assert!(r.passed());
    assert_eq!(r.checks, 10);
}

#[test]
fn appendix_c_on_worked_example() {
    for seed in 0..20 {
        let t = scheme::simulate(&c(3, 3, 2, 2), seed).unwrap();
        let h = appendix_c_spot_check(&t);
        assert!(h.counterexamples.is_empty(), "seed {seed}: {:?}", h.counterexamples);
    }
}

#[test]
fn appendix_c_oblivious_small() {
    for cfg in xcdof::normalized_configs(3) {
        let r = verify(
            CheckKind::AppendixC,
            &cfg,
            5,
            40,
            StrategyMode::ObliviousRandom,
            0,
            Field::default(),
        )
        .unwrap();
        assert_eq!(r.violations, 0, "{cfg}: {:?}", r.first_violation);
    }
}

#[test]
fn report_is_independent_of_thread_count() {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                verify(
                    CheckKind::Lemma1,
                    &c(2, 2, 1, 2),
                    5,
                    60,
                    StrategyMode::DelayedAdaptiveRandom,
                    9,
                    Field::default(),
                )
                .unwrap()
            })
    };
    let one = serde_json::to_string(&run(1)).unwrap();
    assert_eq!(one, serde_json::to_string(&run(4)).unwrap());
}
