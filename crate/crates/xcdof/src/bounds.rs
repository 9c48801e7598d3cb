//! Monte Carlo and structural checks of the converse: the rank-ratio
//! inequalities, the normalized rank difference, the hiding claim behind
//! the symmetric region bound, and the finite-horizon weighted-sum bound.
//!
//! Trials are independent and keyed by `(seed, trial)`, so a report does
//! not depend on how trials are scheduled across threads.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{ChannelHistory, ChannelSource, RandomChannels};
use crate::config::AntennaConfig;
use crate::error::{Result, XcError};
use crate::field::{Field, FieldMatrix, RowBasis, DEFAULT_PRIME, SECOND_PRIME};
use crate::params::gamma;
use crate::rational::{int, rat, serde_opt_pair, Rational};
use crate::rng::{stream, Role};
use crate::scheme::{simulate_with, SchemeVariant};
use crate::transcript::{SlotPrecoders, Transcript, TRANSCRIPT_VERSION};

/// How precoders are generated for a trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyMode {
    /// Random low-rank precoders drawn without looking at any channel.
    ObliviousRandom,
    /// Random combinations of what receiver `i'` observed in earlier slots,
    /// plus an optional fresh random part.
    DelayedAdaptiveRandom,
    /// The three-phase scheme; the horizon is the scheme's own length.
    PaperScheme,
}

impl StrategyMode {
    pub const ALL: [StrategyMode; 3] = [
        StrategyMode::ObliviousRandom,
        StrategyMode::DelayedAdaptiveRandom,
        StrategyMode::PaperScheme,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyMode::ObliviousRandom => "oblivious_random",
            StrategyMode::DelayedAdaptiveRandom => "delayed_adaptive_random",
            StrategyMode::PaperScheme => "paper_scheme",
        }
    }
}

impl std::fmt::Display for StrategyMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for StrategyMode {
    type Err = XcError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| XcError::InvalidArgument(format!("unknown strategy mode {s:?}")))
    }
}

/// Message sizes of a random strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeRule {
    /// `m_ij` uniform in `0..=T M_j`.
    Uniform,
    /// `m_ij = T M_j`, so the message space never fills up.
    Full,
    /// Caller-chosen sizes.
    Fixed([[usize; 2]; 2]),
}

/// Which inequality a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Rank-ratio of the X-channel against `Γ_i`.
    Lemma1,
    /// Rank-ratio of a broadcast channel (`m2 = 0`).
    Lemma2,
    /// Normalized rank difference.
    Lemma3,
    /// Hiding slots have enough overheard directions.
    AppendixC,
    /// Finite-horizon weighted-sum bound on scheme transcripts.
    WeightedSum,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::Lemma1,
        CheckKind::Lemma2,
        CheckKind::Lemma3,
        CheckKind::AppendixC,
        CheckKind::WeightedSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Lemma1 => "lemma1",
            CheckKind::Lemma2 => "lemma2",
            CheckKind::Lemma3 => "lemma3",
            CheckKind::AppendixC => "appendix_c",
            CheckKind::WeightedSum => "weighted_sum",
        }
    }
}

impl std::fmt::Display for CheckKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CheckKind {
    type Err = XcError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| XcError::InvalidArgument(format!("unknown check {s:?}")))
    }
}

/// First reproducible violation of a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: u64,
    /// 0-based message (or receiver) index.
    pub message: usize,
    pub detail: String,
}

/// Outcome of a batch of trials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: CheckKind,
    pub config: AntennaConfig,
    /// Slots per random strategy; unused in scheme mode.
    pub horizon: usize,
    pub mode: StrategyMode,
    pub seed: u64,
    pub prime: u64,
    pub trials: usize,
    /// Trials whose strategy could not be built (e.g. an infeasible scheme).
    pub skipped: usize,
    /// Individual inequality evaluations.
    pub checks: usize,
    /// Violations that persist under a second prime.
    pub violations: usize,
    /// Violations that vanished under a second prime.
    pub collisions: usize,
    /// Largest observed value per index: the ratio for the rank-ratio
    /// checks, `lhs - rhs` for Lemma 3 and `lhs / rhs` for the weighted sum.
    #[serde(with = "serde_opt_pair")]
    pub max_ratio_observed: [Option<Rational>; 2],
    /// Threshold the observed value is compared with.
    #[serde(with = "serde_opt_pair")]
    pub bound: [Option<Rational>; 2],
    /// Evaluations holding with equality.
    pub tightness_hits: usize,
    pub resample_events: usize,
    pub first_violation: Option<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// Adds the counts of `other`, which must be about the same check.
    pub fn absorb(&mut self, other: &VerificationReport) {
        self.trials += other.trials;
        self.skipped += other.skipped;
        self.checks += other.checks;
        self.violations += other.violations;
        self.collisions += other.collisions;
        self.tightness_hits += other.tightness_hits;
        self.resample_events += other.resample_events;
        for i in 0..2 {
            self.max_ratio_observed[i] = max_opt(self.max_ratio_observed[i], other.max_ratio_observed[i]);
        }
        if self.first_violation.is_none() {
            self.first_violation = other.first_violation.clone();
        }
    }
}

fn max_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// One inequality evaluated on one transcript.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Eval {
    observed: Option<Rational>,
    violated: bool,
    tight: bool,
    detail: String,
}

/// Builds a random linear strategy over `horizon` slots with fresh channels.
///
/// The precoder of message `(i, j)` at slot `t` is `P (R0 + Σ_s A_s
/// G_i'j[s] V_ij[s])` in adaptive mode and `P R` in oblivious mode, with
/// `P` of random rank `r <= M_j` and every term present with probability
/// one half. Only channels of earlier slots are consulted.
pub fn random_transcript(
    config: &AntennaConfig,
    horizon: usize,
    mode: StrategyMode,
    sizes: SizeRule,
    field: Field,
    seed: u64,
    trial: u64,
) -> Result<Transcript> {
    config.validate()?;
    if horizon == 0 {
        return Err(XcError::InvalidArgument("horizon must be at least 1".into()));
    }
    if mode == StrategyMode::PaperScheme {
        return Err(XcError::InvalidArgument(
            "paper_scheme transcripts come from the scheme simulator".into(),
        ));
    }
    let mut rng = stream(seed, trial, 0, Role::Trial);
    let mut m = [[0usize; 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, mij) in row.iter_mut().enumerate() {
            let cap = horizon * config.m(j) as usize;
            *mij = match sizes {
                SizeRule::Uniform => rng.random_range(0..=cap),
                SizeRule::Full => cap,
                SizeRule::Fixed(s) => s[i][j],
            };
        }
    }
    let mut source = RandomChannels::new(field, *config, seed, trial);
    let mut history = ChannelHistory::new();
    let mut precoders: Vec<SlotPrecoders> = Vec::with_capacity(horizon);
    for t in 0..horizon {
        let mut slot: SlotPrecoders = std::array::from_fn(|_| {
            std::array::from_fn(|_| FieldMatrix::zeros(field, 0, 0))
        });
        for (i, row) in slot.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let ctx = PrecoderCtx {
                    config,
                    mode,
                    field,
                    seed,
                    trial,
                    history: &history,
                    past: &precoders,
                };
                *v = ctx.precoder(t, i, j, m[i][j])?;
            }
        }
        precoders.push(slot);
        history.push(source.draw(t, t + 1)?);
    }
    Ok(Transcript {
        transcript_version: TRANSCRIPT_VERSION,
        label: mode.name().to_string(),
        config: *config,
        seed,
        trial,
        prime: field.modulus(),
        params: None,
        message_sizes: m,
        channels: history.into_inner(),
        precoders,
        buffers: [Vec::new(), Vec::new()],
        phases: Vec::new(),
        resample_events: source.resample_events(),
    })
}

struct PrecoderCtx<'a> {
    config: &'a AntennaConfig,
    mode: StrategyMode,
    field: Field,
    seed: u64,
    trial: u64,
    history: &'a ChannelHistory,
    past: &'a [SlotPrecoders],
}

impl PrecoderCtx<'_> {
    fn precoder(&self, t: usize, i: usize, j: usize, m: usize) -> Result<FieldMatrix> {
        let f = self.field;
        let mj = self.config.m(j) as usize;
        let role = Role::Precoder {
            rx: i as u8,
            tx: j as u8,
        };
        let mut rng = stream(self.seed, self.trial, t as u64, role);
        let shape_role = Role::Shape {
            rx: i as u8,
            tx: j as u8,
        };
        let mut shape = stream(self.seed, self.trial, t as u64, shape_role);
        let r = shape.random_range(0..=mj.min(m));
        if r == 0 {
            return Ok(FieldMatrix::zeros(f, mj, m));
        }
        let p = FieldMatrix::random(f, &mut rng, mj, r);
        let core = match self.mode {
            StrategyMode::ObliviousRandom => FieldMatrix::random(f, &mut rng, r, m),
            _ => {
                let mut core = if shape.random_bool(0.5) {
                    FieldMatrix::random(f, &mut rng, r, m)
                } else {
                    FieldMatrix::zeros(f, r, m)
                };
                let o = i ^ 1;
                for s in 0..t {
                    if shape.random_bool(0.5) {
                        let seen = self.history.channel(s, o, j)?.mul(&self.past[s][i][j]);
                        let a = FieldMatrix::random(f, &mut rng, r, seen.rows());
                        core = core.add(&a.mul(&seen));
                    }
                }
                core
            }
        };
        Ok(p.mul(&core))
    }
}

/// `min{max{M, N_i'}, N_i + N_i'} / N_i'` for a broadcast transmitter with
/// `M` antennas.
pub fn bc_ratio_bound(m: u32, n: [u32; 2], i: usize) -> Rational {
    let (ni, no) = (n[i] as i128, n[i ^ 1] as i128);
    rat((m as i128).max(no).min(ni + no), no)
}

/// Ranks of message `i` used by the rank-ratio checks, computed once per
/// transcript.
#[derive(Debug, Clone, Copy)]
struct MessageRanks {
    /// `rank[G_i1 V_i1 | G_i2 V_i2]`.
    own: usize,
    /// `rank[G_i'1 V_i1 | G_i'2 V_i2]`.
    other: usize,
    /// `rank[G_i'j V_ij]` for `j = 1, 2`.
    other_by_tx: [usize; 2],
}

impl MessageRanks {
    fn of(t: &Transcript, i: usize) -> Self {
        let o = i ^ 1;
        let a = t.image(o, i, 0);
        let b = t.image(o, i, 1);
        Self {
            own: t.message_rank(i, i),
            other: a.hstack(&b).rank(),
            other_by_tx: [a.rank(), b.rank()],
        }
    }
}

fn ratio_eval(r: &MessageRanks, i: usize, bound: Rational) -> Eval {
    let (num, den) = (r.own, r.other);
    if den == 0 {
        return Eval {
            observed: None,
            violated: num > 0,
            tight: false,
            detail: format!("rank {num} at receiver {} but 0 at receiver {}", i + 1, (i ^ 1) + 1),
        };
    }
    let x = rat(num as i128, den as i128);
    Eval {
        observed: Some(x),
        violated: x > bound,
        tight: x == bound,
        detail: format!("ratio {x} against bound {bound}"),
    }
}

/// `r_i/N_i - r_i'/N_i' <= (2 r_i' - rank[G_i'1 V_i1] - rank[G_i'2 V_i2]) / N_i`.
fn lemma3_eval(c: &AntennaConfig, r: &MessageRanks, i: usize) -> Eval {
    let (ni, no) = (c.n(i) as i128, c.n(i ^ 1) as i128);
    let (ri, ro) = (r.own as i128, r.other as i128);
    let [a, b] = r.other_by_tx.map(|x| x as i128);
    let lhs = rat(ri, ni) - rat(ro, no);
    let rhs = rat(2 * ro - a - b, ni);
    Eval {
        observed: Some(lhs - rhs),
        violated: lhs > rhs,
        tight: lhs == rhs,
        detail: format!("lhs {lhs} against rhs {rhs}"),
    }
}

fn weighted_sum_eval(t: &Transcript, i: usize) -> Eval {
    let w = t.weighted_sum_check(i);
    let observed = if w.rhs == int(0) { None } else { Some(w.lhs / w.rhs) };
    Eval {
        observed,
        violated: !w.holds,
        tight: w.lhs == w.rhs,
        detail: format!("lhs {} against rhs {}", w.lhs, w.rhs),
    }
}

/// A slot where receiver `i'` gained fewer than `N_i'` dimensions of
/// message `i` but too few directions of the slot's precoders were already
/// known to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HidingCounterexample {
    pub message: usize,
    pub slot: usize,
    pub increment: usize,
    /// `d_j`: dimension of `{w : w V_ij[t]` (zero-padded) `∈` the span
    /// receiver `i'` held before the slot`}`.
    pub d: [usize; 2],
    /// Dimension of `{(w1, w2) : w1 V_i1[t] + w2 V_i2[t]` (zero-padded)
    /// `∈` the same span`}`; at least `d1 + d2`.
    pub d_joint: usize,
    /// `M1 + M2 - N_i'`; the claim is `d1 + d2 > threshold`.
    pub threshold: i64,
}

/// Result of [`appendix_c_spot_check`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HidingReport {
    pub slots_checked: usize,
    /// Slots whose rank increment at receiver `i'` was below `N_i'`.
    pub hiding_slots: usize,
    pub counterexamples: Vec<HidingCounterexample>,
    /// Hiding slots where even `d_joint <= M1 + M2 - N_i'`.
    pub joint_failures: usize,
}

/// Checks, for every message `i` and slot `t`, that a rank increment below
/// `N_i'` at receiver `i'` comes with `d1 + d2 > M1 + M2 - N_i'`.
pub fn appendix_c_spot_check(t: &Transcript) -> HidingReport {
    let f = t.field();
    let c = &t.config;
    let mut report = HidingReport::default();
    for i in 0..2 {
        let o = i ^ 1;
        let m = [t.message_sizes[i][0], t.message_sizes[i][1]];
        let width = m[0] + m[1];
        let threshold = c.m_sum() as i64 - c.n(o) as i64;
        let mut seen = RowBasis::new(f, width);
        for slot in 0..t.slots() {
            let v = &t.precoders[slot][i];
            // Residues modulo the prior span vanish on its pivot columns, so
            // their rank is the rank gained over that span.
            let mut d = [0usize; 2];
            let mut joint = RowBasis::new(f, width);
            for j in 0..2 {
                let mut probe = RowBasis::new(f, width);
                let off = if j == 0 { 0 } else { m[0] };
                for r in 0..v[j].rows() {
                    let mut row = vec![0; width];
                    row[off..off + m[j]].copy_from_slice(v[j].row(r));
                    seen.reduce(&mut row);
                    probe.insert(&row);
                    joint.insert(&row);
                }
                d[j] = c.m(j) as usize - probe.rank();
            }
            let d_joint = c.m_sum() as usize - joint.rank();
            let before = seen.rank();
            let g = &t.channels[slot][o];
            let rx = g[0].mul(&v[0]).hstack(&g[1].mul(&v[1]));
            for r in 0..rx.rows() {
                seen.insert(rx.row(r));
            }
            let increment = seen.rank() - before;
            report.slots_checked += 1;
            if increment < c.n(o) as usize {
                report.hiding_slots += 1;
                if d_joint as i64 <= threshold {
                    report.joint_failures += 1;
                }
                if (d[0] + d[1]) as i64 <= threshold {
                    report.counterexamples.push(HidingCounterexample {
                        message: i,
                        slot,
                        increment,
                        d,
                        d_joint,
                        threshold,
                    });
                }
            }
        }
    }
    report
}

/// Strategy used by a trial. Random strategies use full message sizes when
/// the hiding check is among `kinds`, since that claim needs a message
/// space that never fills up.
pub fn trial_transcript(
    kinds: &[CheckKind],
    config: &AntennaConfig,
    horizon: usize,
    mode: StrategyMode,
    field: Field,
    seed: u64,
    trial: u64,
) -> Result<Transcript> {
    match mode {
        StrategyMode::PaperScheme => {
            simulate_with(config, &SchemeVariant::standard(*config), field, seed, trial)
        }
        _ => {
            let sizes = if kinds.contains(&CheckKind::AppendixC) {
                SizeRule::Full
            } else {
                SizeRule::Uniform
            };
            random_transcript(config, horizon, mode, sizes, field, seed, trial)
        }
    }
}

/// Evaluations of every check in `kinds`, tagged with the check's position
/// in `kinds` and the message index.
fn evaluate(kinds: &[CheckKind], t: &Transcript) -> Vec<(usize, usize, Eval)> {
    let c = &t.config;
    let needs_ranks = kinds
        .iter()
        .any(|k| matches!(k, CheckKind::Lemma1 | CheckKind::Lemma2 | CheckKind::Lemma3));
    let ranks = needs_ranks.then(|| [MessageRanks::of(t, 0), MessageRanks::of(t, 1)]);
    let mut out = Vec::new();
    for (k, kind) in kinds.iter().enumerate() {
        match kind {
            CheckKind::Lemma1 | CheckKind::Lemma2 | CheckKind::Lemma3 => {
                let r = ranks.as_ref().expect("ranks computed above");
                for i in 0..2 {
                    let e = match kind {
                        CheckKind::Lemma1 => ratio_eval(&r[i], i, gamma(c, i)),
                        CheckKind::Lemma2 => {
                            ratio_eval(&r[i], i, bc_ratio_bound(c.m_sum(), [c.n1, c.n2], i))
                        }
                        _ => lemma3_eval(c, &r[i], i),
                    };
                    out.push((k, i, e));
                }
            }
            CheckKind::WeightedSum => {
                out.extend((0..2).map(|i| (k, i, weighted_sum_eval(t, i))));
            }
            CheckKind::AppendixC => {
                let r = appendix_c_spot_check(t);
                for x in &r.counterexamples {
                    let detail = format!(
                        "slot {} increment {} with d = {:?} (joint {}), threshold {}",
                        x.slot, x.increment, x.d, x.d_joint, x.threshold
                    );
                    out.push((
                        k,
                        x.message,
                        Eval {
                            observed: None,
                            violated: true,
                            tight: false,
                            detail,
                        },
                    ));
                }
                let fine = r.hiding_slots - r.counterexamples.len();
                out.extend((0..fine).map(|_| {
                    (
                        k,
                        0,
                        Eval {
                            observed: None,
                            violated: false,
                            tight: false,
                            detail: String::new(),
                        },
                    )
                }));
            }
        }
    }
    out
}

#[derive(Debug, Default, Clone)]
struct TrialOutcome {
    skipped: bool,
    checks: usize,
    violations: usize,
    collisions: usize,
    observed: [Option<Rational>; 2],
    tight: usize,
    resamples: usize,
    first: Option<Violation>,
}

fn other_prime(field: Field) -> Field {
    let p = if field.modulus() == SECOND_PRIME {
        DEFAULT_PRIME
    } else {
        SECOND_PRIME
    };
    Field::new(p).expect("built-in primes are valid")
}

/// One outcome per entry of `kinds`.
fn run_trial(
    kinds: &[CheckKind],
    config: &AntennaConfig,
    horizon: usize,
    mode: StrategyMode,
    field: Field,
    seed: u64,
    trial: u64,
) -> Vec<TrialOutcome> {
    let mut out = vec![TrialOutcome::default(); kinds.len()];
    let Ok(t) = trial_transcript(kinds, config, horizon, mode, field, seed, trial) else {
        for o in &mut out {
            o.skipped = true;
        }
        return out;
    };
    for o in &mut out {
        o.resamples = t.resample_events;
    }
    let mut rerun: Option<Vec<(usize, usize, Eval)>> = None;
    for (k, i, e) in evaluate(kinds, &t) {
        let o = &mut out[k];
        o.checks += 1;
        o.observed[i] = max_opt(o.observed[i], e.observed);
        o.tight += e.tight as usize;
        if !e.violated {
            continue;
        }
        let again = rerun.get_or_insert_with(|| {
            trial_transcript(kinds, config, horizon, mode, other_prime(field), seed, trial)
                .map(|t2| evaluate(kinds, &t2))
                .unwrap_or_default()
        });
        if again.iter().any(|(k2, i2, e2)| *k2 == k && *i2 == i && e2.violated) {
            o.violations += 1;
            o.first.get_or_insert_with(|| Violation {
                trial,
                message: i,
                detail: e.detail.clone(),
            });
        } else {
            o.collisions += 1;
        }
    }
    out
}

fn bound_of(kind: CheckKind, config: &AntennaConfig) -> [Option<Rational>; 2] {
    match kind {
        CheckKind::Lemma1 => [Some(gamma(config, 0)), Some(gamma(config, 1))],
        CheckKind::Lemma2 => {
            let n = [config.n1, config.n2];
            [
                Some(bc_ratio_bound(config.m_sum(), n, 0)),
                Some(bc_ratio_bound(config.m_sum(), n, 1)),
            ]
        }
        CheckKind::Lemma3 => [Some(int(0)), Some(int(0))],
        CheckKind::WeightedSum => [Some(int(1)), Some(int(1))],
        CheckKind::AppendixC => [None, None],
    }
}

fn check_request(kind: CheckKind, config: &AntennaConfig, mode: StrategyMode) -> Result<()> {
    match kind {
        CheckKind::Lemma2 if config.m2 != 0 => Err(XcError::InvalidArgument(format!(
            "{config}: the broadcast check needs m2 = 0"
        ))),
        CheckKind::WeightedSum if mode != StrategyMode::PaperScheme => Err(
            XcError::InvalidArgument("the weighted-sum check runs on scheme transcripts only".into()),
        ),
        _ => Ok(()),
    }
}

/// Runs `trials` independent trials in parallel, evaluating every check in
/// `kinds` on the same transcript, and merges them in trial order.
///
/// A violation is counted only if the same trial, rebuilt over a second
/// prime field, violates the same inequality again; otherwise it is
/// recorded as a field collision.
pub fn verify_all(
    kinds: &[CheckKind],
    config: &AntennaConfig,
    horizon: usize,
    trials: usize,
    mode: StrategyMode,
    seed: u64,
    field: Field,
) -> Result<Vec<VerificationReport>> {
    config.validate()?;
    for &k in kinds {
        check_request(k, config, mode)?;
    }
    if mode != StrategyMode::PaperScheme && horizon == 0 {
        return Err(XcError::InvalidArgument("horizon must be at least 1".into()));
    }
    let outcomes: Vec<Vec<TrialOutcome>> = (0..trials as u64)
        .into_par_iter()
        .map(|k| run_trial(kinds, config, horizon, mode, field, seed, k))
        .collect();
    let mut reports: Vec<VerificationReport> = kinds
        .iter()
        .map(|&kind| VerificationReport {
            kind,
            config: *config,
            horizon,
            mode,
            seed,
            prime: field.modulus(),
            trials,
            skipped: 0,
            checks: 0,
            violations: 0,
            collisions: 0,
            max_ratio_observed: [None, None],
            bound: bound_of(kind, config),
            tightness_hits: 0,
            resample_events: 0,
            first_violation: None,
        })
        .collect();
    for per_trial in outcomes {
        for (report, o) in reports.iter_mut().zip(per_trial) {
            report.skipped += o.skipped as usize;
            report.checks += o.checks;
            report.violations += o.violations;
            report.collisions += o.collisions;
            report.tightness_hits += o.tight;
            report.resample_events += o.resamples;
            for i in 0..2 {
                report.max_ratio_observed[i] =
                    max_opt(report.max_ratio_observed[i], o.observed[i]);
            }
            if report.first_violation.is_none() {
                report.first_violation = o.first;
            }
        }
    }
    Ok(reports)
}

/// [`verify_all`] for a single check.
pub fn verify(
    kind: CheckKind,
    config: &AntennaConfig,
    horizon: usize,
    trials: usize,
    mode: StrategyMode,
    seed: u64,
    field: Field,
) -> Result<VerificationReport> {
    let mut r = verify_all(&[kind], config, horizon, trials, mode, seed, field)?;
    Ok(r.remove(0))
}

pub fn verify_lemma1(
    config: &AntennaConfig,
    horizon: usize,
    trials: usize,
    mode: StrategyMode,
    seed: u64,
) -> Result<VerificationReport> {
    verify(CheckKind::Lemma1, config, horizon, trials, mode, seed, Field::default())
}

/// Broadcast rank-ratio check for a transmitter with `bc_m` antennas.
pub fn verify_lemma2(
    bc_m: u32,
    n1: u32,
    n2: u32,
    horizon: usize,
    trials: usize,
    mode: StrategyMode,
    seed: u64,
) -> Result<VerificationReport> {
    let c = AntennaConfig::new(bc_m, 0, n1, n2);
    verify(CheckKind::Lemma2, &c, horizon, trials, mode, seed, Field::default())
}

pub fn verify_lemma3(
    config: &AntennaConfig,
    horizon: usize,
    trials: usize,
    mode: StrategyMode,
    seed: u64,
) -> Result<VerificationReport> {
    verify(CheckKind::Lemma3, config, horizon, trials, mode, seed, Field::default())
}

pub fn verify_appendix_c(
    config: &AntennaConfig,
    horizon: usize,
    trials: usize,
    mode: StrategyMode,
    seed: u64,
) -> Result<VerificationReport> {
    verify(CheckKind::AppendixC, config, horizon, trials, mode, seed, Field::default())
}

pub fn verify_weighted_sum(
    config: &AntennaConfig,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    verify(
        CheckKind::WeightedSum,
        config,
        0,
        trials,
        StrategyMode::PaperScheme,
        seed,
        Field::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(m1: u32, m2: u32, n1: u32, n2: u32) -> AntennaConfig {
        AntennaConfig::new(m1, m2, n1, n2)
    }

    #[test]
    fn bc_bound_examples() {
        assert_eq!(bc_ratio_bound(2, [1, 1], 0), rat(2, 1));
        assert_eq!(bc_ratio_bound(1, [3, 2], 0), rat(1, 1));
    }

    #[test]
    fn lemma1_single_antenna() {
        let r = verify_lemma1(&c(1, 1, 1, 1), 6, 200, StrategyMode::ObliviousRandom, 0).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.max_ratio_observed[0].unwrap() <= rat(3, 2));
    }

    #[test]
    fn lemma1_scheme_is_tight() {
        let r = verify_lemma1(&c(3, 3, 2, 2), 0, 3, StrategyMode::PaperScheme, 0).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.max_ratio_observed, [Some(rat(9, 5)), Some(rat(9, 5))]);
        assert_eq!(r.tightness_hits, 6);
    }

    #[test]
    fn adaptive_is_causal_and_deterministic() {
        let f = Field::default();
        let mode = StrategyMode::DelayedAdaptiveRandom;
        let a = random_transcript(&c(2, 2, 1, 2), 4, mode, SizeRule::Uniform, f, 9, 3).unwrap();
        let b = random_transcript(&c(2, 2, 1, 2), 4, mode, SizeRule::Uniform, f, 9, 3).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.slots(), 4);
    }

    #[test]
    fn zero_strategy_is_tight_for_lemma3() {
        let f = Field::default();
        let t = random_transcript(
            &c(2, 1, 1, 1),
            2,
            StrategyMode::ObliviousRandom,
            SizeRule::Fixed([[0; 2]; 2]),
            f,
            0,
            0,
        )
        .unwrap();
        let e = lemma3_eval(&t.config, &MessageRanks::of(&t, 0), 0);
        assert!(e.tight && !e.violated);
    }

    #[test]
    fn hiding_claim_fails_once_message_space_fills() {
        // M = (2,1), N2 = 2 and only three symbols of message 1: the second
        // slot fills the space, so the increment drops below N2 while only
        // one direction of the slot's precoders was overheard.
        let f = Field::default();
        let sizes = SizeRule::Fixed([[2, 1], [0, 0]]);
        let mut found = false;
        for trial in 0..20 {
            let t = random_transcript(
                &c(2, 1, 1, 2),
                2,
                StrategyMode::ObliviousRandom,
                sizes,
                f,
                0,
                trial,
            )
            .unwrap();
            found |= !appendix_c_spot_check(&t).counterexamples.is_empty();
        }
        assert!(found);
    }

    #[test]
    fn parse_modes() {
        for m in StrategyMode::ALL {
            assert_eq!(m.name().parse::<StrategyMode>().unwrap(), m);
        }
        assert!("nope".parse::<CheckKind>().is_err());
    }
}
