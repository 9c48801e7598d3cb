use xcdof::channel::{ChannelHistory, ChannelSource, RandomChannels, SlotChannels};
use xcdof::rational::rat;
use xcdof::scheme::{self, analyze_round, simulate_with_source, SchemeVariant};
use xcdof::transcript::Transcript;
use xcdof::{sum_dof, AntennaConfig, Field, Result, XcError};

/// Passes channels through but records every request, so a test can check
/// that no channel was drawn before the precoders of its slot were fixed.
struct Tripwire {
    inner: RandomChannels,
    next: usize,
    breaches: Vec<(usize, usize)>,
}

impl ChannelSource for Tripwire {
    fn draw(&mut self, slot: usize, precoders_fixed: usize) -> Result<SlotChannels> {
        if slot != self.next || precoders_fixed != slot + 1 {
            self.breaches.push((slot, precoders_fixed));
        }
        self.next += 1;
        self.inner.draw(slot, precoders_fixed)
    }
}

fn c(m1: u32, m2: u32, n1: u32, n2: u32) -> AntennaConfig {
    AntennaConfig::new(m1, m2, n1, n2)
}

#[test]
fn scheme_never_sees_future_channels() {
    for cfg in [c(3, 3, 2, 2), c(1, 1, 1, 1), c(4, 1, 2, 1), c(2, 1, 2, 2)] {
        let f = Field::default();
        let mut wire = Tripwire {
            inner: RandomChannels::new(f, cfg, 5, 0),
            next: 0,
            breaches: Vec::new(),
        };
        let v = SchemeVariant::standard(cfg);
        let t = simulate_with_source(&cfg, &v, f, 5, 0, &mut wire).unwrap();
        assert!(wire.breaches.is_empty(), "{cfg}: {:?}", wire.breaches);
        assert_eq!(wire.next, t.slots());
    }
}

#[test]
fn history_rejects_current_slot() {
    let h = ChannelHistory::new();
    assert!(matches!(
        h.channel(0, 0, 0),
        Err(XcError::CausalityViolation { requested: 0, current: 0 })
    ));
}

#[test]
fn worked_example_decodes() {
    let t = scheme::simulate(&c(3, 3, 2, 2), 1).unwrap();
    assert_eq!(t.slots(), 14);
    assert_eq!(t.total_symbols(), 36);
    assert!(t.check_decodability().all_pass());
    assert_eq!(t.achieved_dof().unwrap(), rat(18, 7));
    // Receiver 1 sees 10 + 8 dimensions of message 1, receiver 2 sees 10.
    assert_eq!(t.rank_ratio_of(0).unwrap(), rat(18, 10));
    assert_eq!(t.rank_ratio_of(1).unwrap(), rat(9, 5));
}

#[test]
fn verbatim_repetition_loses_an_equation() {
    let cfg = c(3, 3, 2, 2);
    let f = Field::default();
    let std = analyze_round(&cfg, &SchemeVariant::standard(cfg), f, 3, 0).unwrap();
    let verb = analyze_round(&cfg, &SchemeVariant::verbatim(cfg), f, 3, 0).unwrap();
    assert_eq!(std.extractable(), 8);
    assert_eq!(verb.extractable(), 7);
}

#[test]
fn spot_configs_reach_sum_dof() {
    for cfg in [c(4, 1, 2, 1), c(2, 1, 4, 1), c(1, 1, 2, 2)] {
        for seed in 0..5 {
            let t = scheme::simulate(&cfg, seed).unwrap();
            assert!(t.check_decodability().all_pass(), "{cfg} seed {seed}");
            assert_eq!(t.achieved_dof().unwrap(), sum_dof(&cfg), "{cfg}");
        }
    }
}

#[test]
fn phase_three_capacity_gap_is_reported() {
    let err = scheme::simulate(&c(2, 2, 3, 1), 0).unwrap_err();
    assert!(matches!(err, XcError::CapacityViolation(_)), "{err}");
}

#[test]
fn weighted_sum_bound_holds_on_scheme() {
    for cfg in xcdof::normalized_configs(3) {
        let Ok(t) = scheme::simulate(&cfg, 0) else {
            continue;
        };
        for i in 0..2 {
            assert!(t.weighted_sum_check(i).holds, "{cfg} i={i}");
        }
    }
}

#[test]
fn transcript_json_round_trip() {
    let t = scheme::simulate(&c(2, 1, 2, 2), 9).unwrap();
    let back = Transcript::from_json(&t.to_json()).unwrap();
    assert_eq!(back, t);
    assert_eq!(back.check_decodability(), t.check_decodability());
}

#[test]
fn relabeling_preserves_decodability() {
    let t = scheme::simulate(&c(3, 2, 2, 3), 4).unwrap();
    for (tx, rx) in [(true, false), (false, true), (true, true)] {
        let r = t.relabel(tx, rx);
        assert!(r.check_decodability().all_pass(), "swap tx={tx} rx={rx}");
        assert_eq!(r.achieved_dof().unwrap(), t.achieved_dof().unwrap());
    }
}

#[test]
fn seeds_are_reproducible() {
    let a = scheme::simulate(&c(3, 3, 2, 2), 42).unwrap();
    let b = scheme::simulate(&c(3, 3, 2, 2), 42).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let other = scheme::simulate(&c(3, 3, 2, 2), 43).unwrap();
    assert_ne!(a.channels, other.channels);
}
