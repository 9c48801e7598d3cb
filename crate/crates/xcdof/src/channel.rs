//! Channel realizations and the causal history view handed to precoder
//! builders.

use crate::config::AntennaConfig;
use crate::error::{Result, XcError};
use crate::field::{Field, FieldMatrix};
use crate::rng::{stream, Role};

/// Channel matrices of one slot, indexed `[rx][tx]`; `G_ij` is `N_i x M_j`.
pub type SlotChannels = [[FieldMatrix; 2]; 2];

/// Supplies the channel of each slot once its precoders are fixed.
pub trait ChannelSource {
    /// Draws the channels of `slot`. `precoders_fixed` is the number of slots
    /// whose precoders are final; a conforming driver passes `slot + 1`.
    fn draw(&mut self, slot: usize, precoders_fixed: usize) -> Result<SlotChannels>;

    /// Number of singular draws that were replaced.
    fn resample_events(&self) -> usize {
        0
    }
}

/// I.i.d. uniform channels over `F_p`, keyed by `(seed, trial, slot, link)`.
///
/// A block whose rank falls short of `min{N_i, M_j}` is redrawn once and the
/// event counted; a second shortfall aborts with `ResampleExhausted`.
#[derive(Debug, Clone)]
pub struct RandomChannels {
    field: Field,
    config: AntennaConfig,
    seed: u64,
    trial: u64,
    resamples: usize,
}

impl RandomChannels {
    pub fn new(field: Field, config: AntennaConfig, seed: u64, trial: u64) -> Self {
        Self {
            field,
            config,
            seed,
            trial,
            resamples: 0,
        }
    }

    /// Draws one block, applying the resampling policy.
    pub fn block(&mut self, slot: usize, rx: usize, tx: usize) -> Result<FieldMatrix> {
        let (n, m) = (self.config.n(rx) as usize, self.config.m(tx) as usize);
        for attempt in 0..2u8 {
            let role = Role::Channel {
                rx: rx as u8,
                tx: tx as u8,
                attempt,
            };
            let mut rng = stream(self.seed, self.trial, slot as u64, role);
            let g = FieldMatrix::random(self.field, &mut rng, n, m);
            if g.rank() == n.min(m) {
                return Ok(g);
            }
            if attempt == 0 {
                self.resamples += 1;
            }
        }
        Err(XcError::ResampleExhausted {
            slot,
            role: format!("G_{}{}", rx + 1, tx + 1),
        })
    }
}

impl ChannelSource for RandomChannels {
    fn draw(&mut self, slot: usize, _precoders_fixed: usize) -> Result<SlotChannels> {
        Ok([
            [self.block(slot, 0, 0)?, self.block(slot, 0, 1)?],
            [self.block(slot, 1, 0)?, self.block(slot, 1, 1)?],
        ])
    }

    fn resample_events(&self) -> usize {
        self.resamples
    }
}

/// Channels revealed so far. While the precoders of slot `t` are being
/// built, only slots `< t` are visible.
#[derive(Debug, Clone, Default)]
pub struct ChannelHistory {
    slots: Vec<SlotChannels>,
}

impl ChannelHistory {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of the slot under construction.
    pub fn current(&self) -> usize {
        self.slots.len()
    }

    /// `G_ij[t]`, failing for `t >= current()`.
    pub fn channel(&self, t: usize, rx: usize, tx: usize) -> Result<&FieldMatrix> {
        if t >= self.current() {
            return Err(XcError::CausalityViolation {
                requested: t,
                current: self.current(),
            });
        }
        Ok(&self.slots[t][rx][tx])
    }

    pub fn push(&mut self, g: SlotChannels) {
        self.slots.push(g);
    }

    pub fn into_inner(self) -> Vec<SlotChannels> {
        self.slots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn history_blocks_current_slot() {
        let c = AntennaConfig::new(2, 1, 1, 2);
        let mut src = RandomChannels::new(Field::default(), c, 7, 0);
        let mut h = ChannelHistory::new();
        assert!(matches!(
            h.channel(0, 0, 0),
            Err(XcError::CausalityViolation { requested: 0, current: 0 })
        ));
        h.push(src.draw(0, 1).unwrap());
        assert!(h.channel(0, 1, 0).is_ok());
        assert!(h.channel(1, 1, 0).is_err());
    }

    #[test]
    fn draws_are_deterministic() {
        let c = AntennaConfig::new(2, 2, 2, 2);
        let a = RandomChannels::new(Field::default(), c, 7, 0).draw(3, 4).unwrap();
        let b = RandomChannels::new(Field::default(), c, 7, 0).draw(3, 4).unwrap();
        let d = RandomChannels::new(Field::default(), c, 8, 0).draw(3, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, d);
    }
}
