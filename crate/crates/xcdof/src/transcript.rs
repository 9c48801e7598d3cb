//! Simulated communication blocks and their exact decodability checks.

use serde::{Deserialize, Serialize};

use crate::channel::SlotChannels;
use crate::config::AntennaConfig;
use crate::error::{Result, XcError};
use crate::field::{Field, FieldMatrix, RowBasis};
use crate::params::{gamma, SchemeParams};
use crate::rational::{int, rat, Rational};

/// Schema version of the JSON transcript.
pub const TRANSCRIPT_VERSION: u32 = 1;

/// Precoders of one slot, indexed `[message rx i][tx j]`; `V_ij` is `M_j x m_ij`.
pub type SlotPrecoders = [[FieldMatrix; 2]; 2];

/// An equation over one transmitter's own message symbols, buffered at the
/// end of a phase round for retransmission in Phase 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BufferedEquation {
    /// Phase (0 or 1), equal to the index of the intended receiver.
    pub phase: usize,
    /// Physical transmitter that owns the equation.
    pub owner: usize,
    pub round: usize,
    /// Coefficients over `u_{phase, owner}`.
    pub coeffs: Vec<u64>,
}

/// Slot range `[start, end)` of a phase; phases are numbered 1, 2, 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseSpan {
    pub phase: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub transcript_version: u32,
    pub label: String,
    pub config: AntennaConfig,
    pub seed: u64,
    pub trial: u64,
    pub prime: u64,
    pub params: Option<SchemeParams>,
    /// `m_ij`, indexed `[rx][tx]`.
    pub message_sizes: [[usize; 2]; 2],
    pub channels: Vec<SlotChannels>,
    pub precoders: Vec<SlotPrecoders>,
    pub buffers: [Vec<BufferedEquation>; 2],
    pub phases: Vec<PhaseSpan>,
    pub resample_events: usize,
}

/// Outcome of the decodability conditions at both receivers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodabilityReport {
    /// `rank[V_ij^T] = m_ij`.
    pub precoder_rank: [[bool; 2]; 2],
    /// `rank[G_i1 V_i1] + rank[G_i2 V_i2] + rank[interference] = rank[all]`.
    pub rank_sum: [bool; 2],
    /// Projection of each desired block off everything else has rank `m_ij`.
    pub projection: [[bool; 2]; 2],
    /// `(rank[G_i1 V_i1], rank[G_i2 V_i2], rank[interference], rank[all])`.
    pub ranks: [[usize; 4]; 2],
}

impl DecodabilityReport {
    pub fn all_pass(&self) -> bool {
        self.precoder_rank.iter().flatten().all(|&x| x)
            && self.rank_sum.iter().all(|&x| x)
            && self.projection.iter().flatten().all(|&x| x)
    }
}

/// Both sides of the finite-T weighted-sum bound for receiver `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSumCheck {
    #[serde(with = "crate::rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub rhs: Rational,
    pub holds: bool,
}

impl Transcript {
    pub fn field(&self) -> Field {
        Field::new(self.prime).expect("transcript prime was validated at construction")
    }

    pub fn slots(&self) -> usize {
        self.precoders.len()
    }

    pub fn total_symbols(&self) -> usize {
        self.message_sizes.iter().flatten().sum()
    }

    /// `(sum m_ij) / T`.
    pub fn achieved_dof(&self) -> Result<Rational> {
        if self.slots() == 0 {
            return Err(XcError::ZeroDenominator("empty transcript".into()));
        }
        Ok(rat(self.total_symbols() as i128, self.slots() as i128))
    }

    /// Per-message DoF tuple `(d11, d12, d21, d22)`.
    pub fn dof_tuple(&self) -> Result<[Rational; 4]> {
        if self.slots() == 0 {
            return Err(XcError::ZeroDenominator("empty transcript".into()));
        }
        let t = self.slots() as i128;
        let m = &self.message_sizes;
        Ok([
            rat(m[0][0] as i128, t),
            rat(m[0][1] as i128, t),
            rat(m[1][0] as i128, t),
            rat(m[1][1] as i128, t),
        ])
    }

    /// `V_ij^T`: the `(T M_j) x m_ij` stack of precoders over time.
    pub fn stacked_precoder(&self, i: usize, j: usize) -> FieldMatrix {
        let f = self.field();
        let m = self.message_sizes[i][j];
        let mut out = FieldMatrix::zeros(f, 0, m);
        for v in &self.precoders {
            for r in 0..v[i][j].rows() {
                out.push_row(v[i][j].row(r));
            }
        }
        out
    }

    /// `G_rj V_ij` stacked over slots: the image of message `(i, j)` at
    /// receiver `rx`, of size `(T N_rx) x m_ij`.
    pub fn image(&self, rx: usize, i: usize, j: usize) -> FieldMatrix {
        self.image_over(rx, i, j, 0..self.slots())
    }

    /// As [`Transcript::image`], restricted to a slot range.
    pub fn image_over(
        &self,
        rx: usize,
        i: usize,
        j: usize,
        slots: std::ops::Range<usize>,
    ) -> FieldMatrix {
        let f = self.field();
        let m = self.message_sizes[i][j];
        let mut out = FieldMatrix::zeros(f, 0, m);
        for t in slots {
            let v = &self.precoders[t][i][j];
            let g = &self.channels[t][rx][j];
            if v.is_zero() {
                for _ in 0..g.rows() {
                    out.push_row(&vec![0; m]);
                }
            } else {
                let p = g.mul(v);
                for r in 0..p.rows() {
                    out.push_row(p.row(r));
                }
            }
        }
        out
    }

    /// Verifies the decodability conditions with exact ranks.
    pub fn check_decodability(&self) -> DecodabilityReport {
        let mut precoder_rank = [[false; 2]; 2];
        for (i, row) in precoder_rank.iter_mut().enumerate() {
            for (j, ok) in row.iter_mut().enumerate() {
                *ok = self.stacked_precoder(i, j).rank() == self.message_sizes[i][j];
            }
        }
        let mut rank_sum = [false; 2];
        let mut projection = [[false; 2]; 2];
        let mut ranks = [[0; 4]; 2];
        for i in 0..2 {
            let ip = i ^ 1;
            let d1 = self.image(i, i, 0);
            let d2 = self.image(i, i, 1);
            let interference = self.image(i, ip, 0).hstack(&self.image(i, ip, 1));
            let r_d1 = d1.rank();
            let r_d2 = d2.rank();
            let r_i = interference.rank();
            let all = d1.hstack(&d2).hstack(&interference);
            let r_all = all.rank();
            ranks[i] = [r_d1, r_d2, r_i, r_all];
            rank_sum[i] = r_d1 + r_d2 + r_i == r_all;
            let others_1 = d2.hstack(&interference);
            let others_2 = d1.hstack(&interference);
            projection[i][0] = r_all - others_1.rank() == self.message_sizes[i][0];
            projection[i][1] = r_all - others_2.rank() == self.message_sizes[i][1];
        }
        DecodabilityReport {
            precoder_rank,
            rank_sum,
            projection,
            ranks,
        }
    }

    /// `rank` of message-`i` signals at receiver `rx`:
    /// `rank[G_rx1 V_i1 | G_rx2 V_i2]`.
    pub fn message_rank(&self, rx: usize, i: usize) -> usize {
        self.image(rx, i, 0).hstack(&self.image(rx, i, 1)).rank()
    }

    /// Rank-ratio of message `i`: its rank at receiver `i` over its rank at
    /// receiver `i'`.
    pub fn rank_ratio_of(&self, i: usize) -> Result<Rational> {
        if self.precoders.iter().all(|v| v[i][0].is_zero() && v[i][1].is_zero()) {
            return Err(XcError::ZeroDenominator(format!(
                "message {} precoders are all zero",
                i + 1
            )));
        }
        let num = self.message_rank(i, i);
        let den = self.message_rank(i ^ 1, i);
        if den == 0 {
            return Err(XcError::ZeroDenominator(format!(
                "message {} is invisible at receiver {}",
                i + 1,
                (i ^ 1) + 1
            )));
        }
        Ok(rat(num as i128, den as i128))
    }

    /// `m_i1 + m_i2 + Γ_i (m_i'1 + m_i'2) <= T Γ_i min{N_i', M1+M2}`.
    pub fn weighted_sum_check(&self, i: usize) -> WeightedSumCheck {
        let c = &self.config;
        let g = gamma(c, i);
        let m = &self.message_sizes;
        let own = int((m[i][0] + m[i][1]) as i128);
        let other = int((m[i ^ 1][0] + m[i ^ 1][1]) as i128);
        let lhs = own + g * other;
        let cap = c.n(i ^ 1).min(c.m_sum()) as i128;
        let rhs = g * int(self.slots() as i128 * cap);
        WeightedSumCheck {
            holds: lhs <= rhs,
            lhs,
            rhs,
        }
    }

    /// Copy with transmitter and/or receiver labels exchanged; all channels,
    /// precoders, sizes and buffers are permuted consistently.
    pub fn relabel(&self, swap_tx: bool, swap_rx: bool) -> Transcript {
        let tx = |j: usize| if swap_tx { j ^ 1 } else { j };
        let rx = |i: usize| if swap_rx { i ^ 1 } else { i };
        let mut config = self.config;
        if swap_tx {
            config = config.swap_transmitters();
        }
        if swap_rx {
            config = config.swap_receivers();
        }
        let perm = |blk: &[[FieldMatrix; 2]; 2]| -> [[FieldMatrix; 2]; 2] {
            std::array::from_fn(|a| std::array::from_fn(|b| blk[rx(a)][tx(b)].clone()))
        };
        let mut message_sizes = [[0; 2]; 2];
        for (a, row) in message_sizes.iter_mut().enumerate() {
            for (b, m) in row.iter_mut().enumerate() {
                *m = self.message_sizes[rx(a)][tx(b)];
            }
        }
        let buffers = std::array::from_fn(|a| {
            self.buffers[rx(a)]
                .iter()
                .map(|e| BufferedEquation {
                    phase: a,
                    owner: tx(e.owner),
                    round: e.round,
                    coeffs: e.coeffs.clone(),
                })
                .collect()
        });
        Transcript {
            transcript_version: self.transcript_version,
            label: self.label.clone(),
            config,
            seed: self.seed,
            trial: self.trial,
            prime: self.prime,
            params: None,
            message_sizes,
            channels: self.channels.iter().map(perm).collect(),
            precoders: self.precoders.iter().map(perm).collect(),
            buffers,
            phases: self.phases.clone(),
            resample_events: self.resample_events,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcript serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Transcript> {
        let t: Transcript = serde_json::from_str(s)
            .map_err(|e| XcError::InvalidArgument(format!("bad transcript JSON: {e}")))?;
        if t.transcript_version != TRANSCRIPT_VERSION {
            return Err(XcError::InvalidArgument(format!(
                "unsupported transcript_version {}",
                t.transcript_version
            )));
        }
        Ok(t)
    }
}

/// Rank of the rows of `m` in slot order, reported after each slot of
/// `rows_per_slot` rows; used for incremental dimension counting.
pub fn cumulative_ranks(m: &FieldMatrix, rows_per_slot: usize) -> Vec<usize> {
    let mut basis = RowBasis::new(m.field(), m.cols());
    let mut out = Vec::new();
    let slots = m.rows().checked_div(rows_per_slot).unwrap_or(0);
    for t in 0..slots {
        for r in t * rows_per_slot..(t + 1) * rows_per_slot {
            basis.insert(m.row(r));
        }
        out.push(basis.rank());
    }
    out
}
