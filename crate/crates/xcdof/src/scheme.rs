//! The three-phase linear scheme built slot by slot over simulated channels.
//!
//! Phase `i` (0-based, serving receiver `i`) runs `κ_i` rounds of `S_i`
//! slots. After each round the equations that receiver `i'` can compute
//! about a single transmitter's symbols are buffered; Phase 3 retransmits
//! them so that one slot helps both receivers.

use serde::{Deserialize, Serialize};

use crate::channel::{ChannelHistory, ChannelSource, RandomChannels};
use crate::config::AntennaConfig;
use crate::error::{Result, XcError};
use crate::field::{Field, FieldMatrix, RowBasis};
use crate::params::{scheme_params, PhaseMode, SchemeParams};
use crate::rng::{stream, Role};
use crate::transcript::{BufferedEquation, PhaseSpan, SlotPrecoders, Transcript, TRANSCRIPT_VERSION};

/// How transmitter 2 fills the slots after its `ξ_i` fresh slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Repetition {
    /// Seeded random combinations of the rows of `Φ_i[k]`; every antenna
    /// stays inside what receiver `i'` already observed.
    PhiMixed,
    /// Rows of `Φ_i[k]` taken in order and cycled, one per antenna.
    PhiCyclic,
    /// The fresh symbols again, unchanged.
    Verbatim,
}

/// A scheme instance: the configuration the parameters are computed on
/// (its transmitter counts may be below the physical ones, 0 meaning
/// silent) and, per phase, which physical transmitter plays each role.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeVariant {
    pub role_config: AntennaConfig,
    /// `role_to_tx[i][r]` is the physical transmitter acting as role `r`
    /// during phase `i`.
    pub role_to_tx: [[usize; 2]; 2],
    pub repetition: Repetition,
}

impl SchemeVariant {
    pub fn standard(config: AntennaConfig) -> Self {
        Self {
            role_config: config,
            role_to_tx: [[0, 1], [0, 1]],
            repetition: Repetition::PhiMixed,
        }
    }

    pub fn cyclic(config: AntennaConfig) -> Self {
        Self {
            repetition: Repetition::PhiCyclic,
            ..Self::standard(config)
        }
    }

    pub fn verbatim(config: AntennaConfig) -> Self {
        Self {
            repetition: Repetition::Verbatim,
            ..Self::standard(config)
        }
    }

    fn validate(&self, physical: &AntennaConfig) -> Result<()> {
        let rc = &self.role_config;
        if rc.n1 != physical.n1 || rc.n2 != physical.n2 {
            return Err(XcError::InvalidArgument(format!(
                "role configuration {rc} changes receiver antennas of {physical}"
            )));
        }
        for (i, map) in self.role_to_tx.iter().enumerate() {
            if map[0] > 1 || map[1] > 1 || map[0] == map[1] {
                return Err(XcError::InvalidArgument(format!(
                    "phase {} role map {map:?} is not a permutation",
                    i + 1
                )));
            }
            for (r, &p) in map.iter().enumerate() {
                if rc.m(r) > physical.m(p) {
                    return Err(XcError::InvalidArgument(format!(
                        "role {} needs {} antennas but transmitter {} has {}",
                        r + 1,
                        rc.m(r),
                        p + 1,
                        physical.m(p)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `Φ`: block-diagonal stack of `G_{i'2}[t0 + l]`, `l = 0..ξ`.
pub fn phi_matrix(blocks: &[FieldMatrix]) -> FieldMatrix {
    let Some(first) = blocks.first() else {
        return FieldMatrix::zeros(Field::default(), 0, 0);
    };
    let f = first.field();
    let (n, m) = (first.rows(), first.cols());
    let mut out = FieldMatrix::zeros(f, n * blocks.len(), m * blocks.len());
    for (l, b) in blocks.iter().enumerate() {
        assert_eq!((b.rows(), b.cols()), (n, m), "Φ blocks must share a shape");
        for r in 0..n {
            for c in 0..m {
                out.set(l * n + r, l * m + c, b.get(r, c));
            }
        }
    }
    out
}

/// Row index of `Φ` carried by antenna `a` at round offset `s >= ξ`.
pub fn phi_row_index(s: usize, xi: usize, m2: usize, n_other: usize, a: usize) -> usize {
    ((s - xi) * m2 + a) % (xi * n_other)
}

/// Equations receiver `i'` can form about transmitter 1 alone (rows of
/// `L A` with `L B = 0`) and about transmitter 2 alone (rows of `L' B` with
/// `L' A = 0`).
pub fn equation_pools(a: &FieldMatrix, b: &FieldMatrix) -> (FieldMatrix, FieldMatrix) {
    let l = FieldMatrix::left_kernel_against(a, b);
    let lp = FieldMatrix::left_kernel_against(b, a);
    (l.mul(a), lp.mul(b))
}

/// Greedily keeps up to `want` rows that increase the rank.
fn independent_rows(pool: &FieldMatrix, want: usize) -> Vec<Vec<u64>> {
    let mut basis = RowBasis::new(pool.field(), pool.cols());
    let mut out = Vec::new();
    for r in 0..pool.rows() {
        if out.len() == want {
            break;
        }
        if basis.insert(pool.row(r)) {
            out.push(pool.row(r).to_vec());
        }
    }
    out
}

/// Selects `need.0` transmitter-1 and `need.1` transmitter-2 equations from
/// a round observation `[A | B]` at receiver `i'`. Transmitter 1's pool is
/// consulted first. Errors with a zero-filled `BufferDeficit` when a pool is
/// short; callers fill in phase and round.
/// Coefficient rows over the field.
type Rows = Vec<Vec<u64>>;

pub fn extract_buffer_equations(
    a: &FieldMatrix,
    b: &FieldMatrix,
    need: (usize, usize),
) -> Result<(Rows, Rows)> {
    let (p1, p2) = equation_pools(a, b);
    let e1 = independent_rows(&p1, need.0);
    let e2 = independent_rows(&p2, need.1);
    if e1.len() < need.0 || e2.len() < need.1 {
        return Err(XcError::BufferDeficit {
            phase: 0,
            round: 0,
            needed: need.0 + need.1,
            found: e1.len() + e2.len(),
        });
    }
    Ok((e1, e2))
}

/// Rank facts about one phase round as seen by receiver `i'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundAnalysis {
    pub tx1_image_rank: usize,
    pub tx2_image_rank: usize,
    /// Independent equations about transmitter 1 alone.
    pub tx1_pool: usize,
    /// Independent equations about transmitter 2 alone.
    pub tx2_pool: usize,
}

impl RoundAnalysis {
    pub fn extractable(&self) -> usize {
        self.tx1_pool + self.tx2_pool
    }
}

/// Per-round transmitter-1 equation counts for phase `i`, in role terms.
///
/// The total is the largest count that fits the phase-`i` share of both
/// transmitters' Phase-3 antennas; without a fitting value the rule falls
/// back to taking transmitter-1 equations first and Phase 3 reports the
/// shortfall.
pub fn owner_plan(p: &SchemeParams, i: usize, caps: [u64; 2]) -> Vec<u64> {
    let ph = &p.phases[i];
    let (b1, b2) = ph.owner_split;
    let lam = ph.lambda_buf;
    let lo = lam.saturating_sub(b2);
    let hi = b1.min(lam).max(lo);
    let total = ph.kappa * lam;
    let t3 = p.t_phase3;
    let fits = |x1: u64| x1 <= t3 * caps[0] && total - x1 <= t3 * caps[1];
    let x1_total = (ph.kappa * lo..=ph.kappa * hi)
        .rev()
        .find(|&x| fits(x))
        .unwrap_or(ph.kappa * hi);
    let mut extra = x1_total - ph.kappa * lo;
    (0..ph.kappa)
        .map(|_| {
            let add = (hi - lo).min(extra);
            extra -= add;
            lo + add
        })
        .collect()
}

/// Per phase, how many fresh-slot dimensions receiver `i` is short of
/// when transmitter 2 may only repeat what receiver `i'` observed.
///
/// In a repeating phase the fresh slot carries `M1 + M2` symbols; receiver
/// `i` sees `N_i` combinations there, at most `min{M2, N'}` new ones from
/// transmitter 2's repetitions and at most `min{N', M1}` from transmitter
/// 1's next slot. A positive value means no choice of repetition rows
/// decodes the phase.
pub fn structural_shortfall(config: &AntennaConfig) -> Result<[u64; 2]> {
    let p = scheme_params(config)?;
    let mut out = [0; 2];
    for (i, o) in out.iter_mut().enumerate() {
        let ph = &p.phases[i];
        if ph.mode != PhaseMode::Phi || ph.kappa == 0 {
            continue;
        }
        let (m1, m2) = (config.m1 as u64, config.m2 as u64);
        let (ni, no) = (config.n(i) as u64, config.n(1 - i) as u64);
        let seen = ni + m2.min(no) + no.min(m1);
        *o = (m1 + m2).saturating_sub(seen);
    }
    Ok(out)
}

struct Builder<'a> {
    field: Field,
    physical: AntennaConfig,
    variant: &'a SchemeVariant,
    seed: u64,
    trial: u64,
    params: SchemeParams,
    sizes: [[usize; 2]; 2],
    history: ChannelHistory,
    precoders: Vec<SlotPrecoders>,
    buffers: [Vec<BufferedEquation>; 2],
    source: &'a mut dyn ChannelSource,
}

impl<'a> Builder<'a> {
    fn new(
        physical: AntennaConfig,
        variant: &'a SchemeVariant,
        field: Field,
        seed: u64,
        trial: u64,
        source: &'a mut dyn ChannelSource,
    ) -> Result<Self> {
        physical.validate()?;
        variant.validate(&physical)?;
        let params = scheme_params(&variant.role_config)?;
        let mut sizes = [[0usize; 2]; 2];
        for i in 0..2 {
            for r in 0..2 {
                let p = variant.role_to_tx[i][r];
                sizes[i][p] = params.message_size(i, r) as usize;
            }
        }
        Ok(Self {
            field,
            physical,
            variant,
            seed,
            trial,
            params,
            sizes,
            history: ChannelHistory::new(),
            precoders: Vec::new(),
            buffers: [Vec::new(), Vec::new()],
            source,
        })
    }

    fn zero_slot(&self) -> SlotPrecoders {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                FieldMatrix::zeros(self.field, self.physical.m(j) as usize, self.sizes[i][j])
            })
        })
    }

    fn commit(&mut self, v: SlotPrecoders) -> Result<()> {
        let t = self.precoders.len();
        self.precoders.push(v);
        let g = self.source.draw(t, self.precoders.len())?;
        for (i, row) in g.iter().enumerate() {
            for (j, gij) in row.iter().enumerate() {
                let want = (self.physical.n(i) as usize, self.physical.m(j) as usize);
                if (gij.rows(), gij.cols()) != want || gij.field() != self.field {
                    return Err(XcError::InvalidArgument(format!(
                        "channel source returned G_{}{} of shape {}x{}",
                        i + 1,
                        j + 1,
                        gij.rows(),
                        gij.cols()
                    )));
                }
            }
        }
        self.history.push(g);
        Ok(())
    }

    fn tx(&self, i: usize, r: usize) -> usize {
        self.variant.role_to_tx[i][r]
    }

    /// Builds the precoders of slot offset `s` of round `k` in phase `i`.
    fn round_slot(&self, i: usize, k: usize, t0: usize, s: usize) -> Result<SlotPrecoders> {
        let ph = &self.params.phases[i];
        let rc = &self.variant.role_config;
        let (m1, m2) = (rc.m1 as usize, rc.m2 as usize);
        let off = [
            k * ph.tx_symbols[0] as usize,
            k * ph.tx_symbols[1] as usize,
        ];
        let (p1, p2) = (self.tx(i, 0), self.tx(i, 1));
        let mut v = self.zero_slot();
        match ph.mode {
            PhaseMode::Fresh => {
                for a in 0..m1 {
                    v[i][p1].set(a, off[0] + a, 1);
                }
                for a in 0..m2 {
                    v[i][p2].set(a, off[1] + a, 1);
                }
            }
            PhaseMode::SilentTx2 => {
                for a in 0..ph.tx_symbols[0] as usize {
                    v[i][p1].set(a, off[0] + a, 1);
                }
            }
            PhaseMode::Phi => {
                let xi = ph.xi as usize;
                for a in 0..m1 {
                    v[i][p1].set(a, off[0] + s * m1 + a, 1);
                }
                if s < xi {
                    for a in 0..m2 {
                        v[i][p2].set(a, off[1] + s * m2 + a, 1);
                    }
                } else {
                    match self.variant.repetition {
                        Repetition::Verbatim => {
                            let src = (s - xi) % xi;
                            for a in 0..m2 {
                                v[i][p2].set(a, off[1] + src * m2 + a, 1);
                            }
                        }
                        Repetition::PhiMixed | Repetition::PhiCyclic => {
                            let ip = i ^ 1;
                            let nip = rc.n(ip) as usize;
                            let mut blocks = Vec::with_capacity(xi);
                            for l in 0..xi {
                                blocks.push(self.history.channel(t0 + l, ip, p2)?.col_range(0, m2));
                            }
                            let phi = phi_matrix(&blocks);
                            let rows = if self.variant.repetition == Repetition::PhiCyclic {
                                let idx: Vec<usize> =
                                    (0..m2).map(|a| phi_row_index(s, xi, m2, nip, a)).collect();
                                phi.select_rows(&idx)
                            } else {
                                let mut rng = stream(self.seed, self.trial, (t0 + s) as u64, Role::Precoder {
                                    rx: i as u8,
                                    tx: p2 as u8,
                                });
                                FieldMatrix::random(self.field, &mut rng, m2, phi.rows()).mul(&phi)
                            };
                            for a in 0..m2 {
                                for c in 0..rows.cols() {
                                    v[i][p2].set(a, off[1] + c, rows.get(a, c));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(v)
    }

    /// Runs round `k` of phase `i` and returns receiver `i'`'s observation
    /// split into the transmitter-1 and transmitter-2 parts.
    fn run_round(&mut self, i: usize, k: usize) -> Result<(FieldMatrix, FieldMatrix)> {
        let ph = self.params.phases[i].clone();
        let t0 = self.precoders.len();
        for s in 0..ph.s as usize {
            let v = self.round_slot(i, k, t0, s)?;
            self.commit(v)?;
        }
        let ip = i ^ 1;
        let mut parts = Vec::with_capacity(2);
        for r in 0..2 {
            let p = self.tx(i, r);
            let w = ph.tx_symbols[r] as usize;
            let off = k * w;
            let mut obs = FieldMatrix::zeros(self.field, 0, w);
            for t in t0..t0 + ph.s as usize {
                let g = self.history.channel(t, ip, p)?;
                let img = g.mul(&self.precoders[t][i][p].col_range(off, off + w));
                for row in 0..img.rows() {
                    obs.push_row(img.row(row));
                }
            }
            parts.push(obs);
        }
        let b = parts.pop().expect("two parts");
        let a = parts.pop().expect("two parts");
        Ok((a, b))
    }

    fn buffer(&mut self, i: usize, k: usize, a: &FieldMatrix, b: &FieldMatrix, x1: usize) -> Result<()> {
        let ph = &self.params.phases[i];
        let lam = ph.lambda_buf as usize;
        let (e1, e2) = extract_buffer_equations(a, b, (x1, lam - x1)).map_err(|e| match e {
            XcError::BufferDeficit { needed, found, .. } => XcError::BufferDeficit {
                phase: i + 1,
                round: k,
                needed,
                found,
            },
            other => other,
        })?;
        for (r, eqs) in [(0usize, e1), (1usize, e2)] {
            let p = self.tx(i, r);
            let w = ph.tx_symbols[r] as usize;
            for e in eqs {
                let mut coeffs = vec![0; self.sizes[i][p]];
                coeffs[k * w..(k + 1) * w].copy_from_slice(&e);
                self.buffers[i].push(BufferedEquation {
                    phase: i,
                    owner: p,
                    round: k,
                    coeffs,
                });
            }
        }
        Ok(())
    }

    fn run_phase(&mut self, i: usize) -> Result<()> {
        let ph = self.params.phases[i].clone();
        let caps = [
            self.physical.m(self.tx(i, 0)) as u64,
            self.physical.m(self.tx(i, 1)) as u64,
        ];
        let plan = owner_plan(&self.params, i, caps);
        for k in 0..ph.kappa as usize {
            let (a, b) = self.run_round(i, k)?;
            if ph.lambda_buf > 0 {
                self.buffer(i, k, &a, &b, plan[k] as usize)?;
            }
        }
        Ok(())
    }

    fn run_phase3(&mut self) -> Result<()> {
        let t3 = self.params.t_phase3 as usize;
        let caps = [self.physical.m1 as i64, self.physical.m2 as i64];
        let mut queues: [[std::collections::VecDeque<BufferedEquation>; 2]; 2] = Default::default();
        for i in 0..2 {
            let expected = t3 * self.params.phase3_load[i] as usize;
            if self.buffers[i].len() != expected {
                return Err(XcError::InternalInconsistency(format!(
                    "phase-{} buffer holds {} equations, expected {expected}",
                    i + 1,
                    self.buffers[i].len()
                )));
            }
            for e in &self.buffers[i] {
                queues[i][e.owner].push_back(e.clone());
            }
        }
        for slot in 0..t3 {
            let left = (t3 - slot) as i64;
            let mut v = self.zero_slot();
            for i in 0..2 {
                let c = self.params.phase3_load[i] as i64;
                let rem = [queues[i][0].len() as i64, queues[i][1].len() as i64];
                let lo = 0
                    .max(c - caps[1])
                    .max(c - rem[1])
                    .max(rem[0] - (left - 1) * caps[0]);
                let hi = caps[0]
                    .min(rem[0])
                    .min(c)
                    .min(c - rem[1] + (left - 1) * caps[1]);
                if lo > hi {
                    return Err(XcError::CapacityViolation(format!(
                        "{}: phase-{} equations at slot {slot} of Phase 3 need {c} antennas \
                         with {} left for transmitter 1 and {} for transmitter 2",
                        self.physical,
                        i + 1,
                        rem[0],
                        rem[1]
                    )));
                }
                let counts = [hi as usize, (c - hi) as usize];
                for (p, &n) in counts.iter().enumerate() {
                    for a in 0..n {
                        let e = queues[i][p].pop_front().expect("window keeps counts in range");
                        v[i][p].row_mut(a).copy_from_slice(&e.coeffs);
                    }
                }
            }
            self.commit(v)?;
        }
        Ok(())
    }
}

/// Simulates the standard scheme over random channels with the default field.
pub fn simulate(config: &AntennaConfig, seed: u64) -> Result<Transcript> {
    simulate_with(config, &SchemeVariant::standard(*config), Field::default(), seed, 0)
}

/// Simulates a scheme variant over random channels.
pub fn simulate_with(
    config: &AntennaConfig,
    variant: &SchemeVariant,
    field: Field,
    seed: u64,
    trial: u64,
) -> Result<Transcript> {
    let mut source = RandomChannels::new(field, *config, seed, trial);
    simulate_with_source(config, variant, field, seed, trial, &mut source)
}

/// Simulates a scheme variant with an arbitrary channel source.
pub fn simulate_with_source(
    config: &AntennaConfig,
    variant: &SchemeVariant,
    field: Field,
    seed: u64,
    trial: u64,
    source: &mut dyn ChannelSource,
) -> Result<Transcript> {
    let mut b = Builder::new(*config, variant, field, seed, trial, source)?;
    let mut phases = Vec::new();
    for i in 0..2 {
        let start = b.precoders.len();
        b.run_phase(i)?;
        phases.push(PhaseSpan {
            phase: i + 1,
            start,
            end: b.precoders.len(),
        });
    }
    let start = b.precoders.len();
    b.run_phase3()?;
    phases.push(PhaseSpan {
        phase: 3,
        start,
        end: b.precoders.len(),
    });
    if b.precoders.len() as u64 != b.params.t_total {
        return Err(XcError::InternalInconsistency(format!(
            "{config}: built {} slots, expected {}",
            b.precoders.len(),
            b.params.t_total
        )));
    }
    let label = match variant.repetition {
        Repetition::PhiMixed => "scheme",
        Repetition::PhiCyclic => "scheme-cyclic",
        Repetition::Verbatim => "scheme-verbatim",
    };
    let resample_events = b.source.resample_events();
    let Builder {
        params,
        sizes,
        history,
        precoders,
        buffers,
        ..
    } = b;
    Ok(Transcript {
        transcript_version: TRANSCRIPT_VERSION,
        label: label.into(),
        config: *config,
        seed,
        trial,
        prime: field.modulus(),
        params: Some(params),
        message_sizes: sizes,
        channels: history.into_inner(),
        precoders,
        buffers,
        phases,
        resample_events,
    })
}

/// Builds only the first round of phase `i` and reports receiver `i'`'s
/// view of it.
pub fn analyze_round(
    config: &AntennaConfig,
    variant: &SchemeVariant,
    field: Field,
    seed: u64,
    i: usize,
) -> Result<RoundAnalysis> {
    let mut source = RandomChannels::new(field, *config, seed, 0);
    let mut b = Builder::new(*config, variant, field, seed, 0, &mut source)?;
    if b.params.phases[i].kappa == 0 {
        return Err(XcError::InvalidArgument(format!(
            "{config}: phase {} has no rounds",
            i + 1
        )));
    }
    let (a, bm) = b.run_round(i, 0)?;
    let (p1, p2) = equation_pools(&a, &bm);
    Ok(RoundAnalysis {
        tx1_image_rank: a.rank(),
        tx2_image_rank: bm.rank(),
        tx1_pool: p1.rank(),
        tx2_pool: p2.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn c(m1: u32, m2: u32, n1: u32, n2: u32) -> AntennaConfig {
        AntennaConfig::new(m1, m2, n1, n2)
    }

    #[test]
    fn phi_shapes() {
        let f = Field::default();
        let mut rng = crate::rng::stream(1, 0, 0, crate::rng::Role::Other(0));
        let g = FieldMatrix::random(f, &mut rng, 2, 3);
        assert_eq!(phi_matrix(std::slice::from_ref(&g)), g);
        let h1 = FieldMatrix::random(f, &mut rng, 1, 2);
        let h2 = FieldMatrix::random(f, &mut rng, 1, 2);
        let phi = phi_matrix(&[h1, h2]);
        assert_eq!((phi.rows(), phi.cols(), phi.rank()), (2, 4, 2));
        let z = FieldMatrix::zeros(f, 2, 2);
        assert_eq!(phi_matrix(&[z.clone(), z]).rank(), 0);
    }

    #[test]
    fn phi_cycling_3322() {
        // Slot 2 of a (3,3,2,2) round carries rows 1, 2, 1 (1-based).
        let rows: Vec<usize> = (0..3).map(|a| phi_row_index(1, 1, 3, 2, a) + 1).collect();
        assert_eq!(rows, vec![1, 2, 1]);
    }

    #[test]
    fn first_slot_is_fresh_identity() {
        let t = simulate(&c(3, 3, 2, 2), 1).unwrap();
        let v = &t.precoders[0];
        for j in 0..2 {
            assert_eq!(v[0][j].rows(), 3);
            for a in 0..3 {
                for col in 0..v[0][j].cols() {
                    assert_eq!(v[0][j].get(a, col), (a == col) as u64);
                }
            }
            assert!(v[1][j].is_zero());
        }
    }

    #[test]
    fn case2_tx2_silent() {
        let t = simulate(&c(4, 1, 2, 1), 1).unwrap();
        assert_eq!((t.slots(), t.total_symbols()), (7, 15));
        for v in &t.precoders[..5] {
            assert!(v[0][1].is_zero() && v[1][1].is_zero());
        }
        assert_eq!(t.precoders[0][0][0].rank(), 3);
    }

    #[test]
    fn round_analysis_3322() {
        let c = c(3, 3, 2, 2);
        let f = Field::default();
        let r = analyze_round(&c, &SchemeVariant::standard(c), f, 5, 0).unwrap();
        assert_eq!((r.tx2_image_rank, r.tx1_pool, r.tx2_pool), (2, 8, 0));
        let v = analyze_round(&c, &SchemeVariant::verbatim(c), f, 5, 0).unwrap();
        assert_eq!((v.tx2_image_rank, v.extractable()), (3, 7));
    }

    #[test]
    fn decodable_examples() {
        for cfg in [c(3, 3, 2, 2), c(4, 1, 2, 1), c(2, 1, 4, 1), c(1, 1, 1, 1)] {
            let t = simulate(&cfg, 3).unwrap();
            assert!(t.check_decodability().all_pass(), "{cfg}");
        }
        let t = simulate(&c(3, 3, 2, 2), 3).unwrap();
        assert_eq!(t.achieved_dof().unwrap(), rat(18, 7));
        assert_eq!(t.rank_ratio_of(0).unwrap(), rat(9, 5));
    }

    #[test]
    fn cyclic_rows_lose_rank() {
        // Retransmitted rows all come from the first block of Φ.
        let cfg = c(3, 2, 3, 3);
        let f = Field::default();
        let t = simulate_with(&cfg, &SchemeVariant::cyclic(cfg), f, 3, 0).unwrap();
        assert!(!t.check_decodability().all_pass());
        assert!(simulate(&cfg, 3).unwrap().check_decodability().all_pass());
        assert_eq!(structural_shortfall(&cfg).unwrap(), [0, 0]);
    }

    #[test]
    fn shortfall_predicts_failure() {
        let cfg = c(3, 3, 1, 3);
        assert_eq!(structural_shortfall(&cfg).unwrap(), [0, 1]);
        assert!(!simulate(&cfg, 3).unwrap().check_decodability().all_pass());
    }

    #[test]
    fn owner_plan_flexible() {
        let p = scheme_params(&c(2, 2, 3, 3)).unwrap();
        let x: u64 = owner_plan(&p, 0, [2, 2]).iter().sum();
        let ph = &p.phases[0];
        assert!(x <= p.t_phase3 * 2 && ph.kappa * ph.lambda_buf - x <= p.t_phase3 * 2);
    }
}
