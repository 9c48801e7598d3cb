//! Antenna configurations.
//!
//! Indices are 0-based throughout: transmitter `j` and receiver `i` take
//! values in `{0, 1}`, and `i ^ 1` is the other receiver.

use serde::{Deserialize, Serialize};

use crate::error::{Result, XcError};

/// Antenna counts `(M1, M2, N1, N2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AntennaConfig {
    pub m1: u32,
    pub m2: u32,
    pub n1: u32,
    pub n2: u32,
}

impl AntennaConfig {
    pub const fn new(m1: u32, m2: u32, n1: u32, n2: u32) -> Self {
        Self { m1, m2, n1, n2 }
    }

    /// Symmetric configuration `(M, M, N, N)`.
    pub const fn symmetric(m: u32, n: u32) -> Self {
        Self::new(m, m, n, n)
    }

    /// Transmit antennas at transmitter `j`.
    pub fn m(&self, j: usize) -> u32 {
        [self.m1, self.m2][j]
    }

    /// Receive antennas at receiver `i`.
    pub fn n(&self, i: usize) -> u32 {
        [self.n1, self.n2][i]
    }

    pub fn m_sum(&self) -> u32 {
        self.m1 + self.m2
    }

    pub fn n_sum(&self) -> u32 {
        self.n1 + self.n2
    }

    /// `Q_ij = max{M_j, N_i'}`.
    pub fn q(&self, i: usize, j: usize) -> u32 {
        self.m(j).max(self.n(i ^ 1))
    }

    /// True when `m1 >= m2`.
    pub fn is_normalized(&self) -> bool {
        self.m1 >= self.m2
    }

    /// Checks the invariants of a normalized configuration.
    pub fn validate(&self) -> Result<()> {
        if self.n1 == 0 || self.n2 == 0 {
            return Err(XcError::InvalidConfig(format!(
                "{self}: every receiver needs at least one antenna"
            )));
        }
        if self.m1 == 0 {
            return Err(XcError::InvalidConfig(format!(
                "{self}: transmitter 1 needs at least one antenna"
            )));
        }
        if !self.is_normalized() {
            return Err(XcError::InvalidConfig(format!("{self}: expected m1 >= m2")));
        }
        Ok(())
    }

    /// Checks the invariants and additionally requires `m2 >= 1`.
    pub fn validate_xc(&self) -> Result<()> {
        self.validate()?;
        if self.m2 == 0 {
            return Err(XcError::InvalidConfig(format!(
                "{self}: m2 = 0 is only allowed in broadcast mode"
            )));
        }
        Ok(())
    }

    /// Swaps transmitter labels.
    pub fn swap_transmitters(&self) -> Self {
        Self::new(self.m2, self.m1, self.n1, self.n2)
    }

    /// Swaps receiver labels.
    pub fn swap_receivers(&self) -> Self {
        Self::new(self.m1, self.m2, self.n2, self.n1)
    }
}

impl std::fmt::Display for AntennaConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.m1, self.m2, self.n1, self.n2)
    }
}

/// Relabels transmitters so that `m1 >= m2`; the flag reports a swap.
pub fn normalize(config: AntennaConfig) -> Result<(AntennaConfig, bool)> {
    if config.m1 + config.m2 == 0 {
        return Err(XcError::InvalidConfig(format!(
            "{config}: both transmitters have zero antennas"
        )));
    }
    if config.n1 == 0 || config.n2 == 0 {
        return Err(XcError::InvalidConfig(format!(
            "{config}: every receiver needs at least one antenna"
        )));
    }
    if config.m1 >= config.m2 {
        Ok((config, false))
    } else {
        Ok((config.swap_transmitters(), true))
    }
}

/// All normalized configurations with `1 <= m2 <= m1 <= max` and `1 <= n_i <= max`.
pub fn normalized_configs(max: u32) -> Vec<AntennaConfig> {
    let mut out = Vec::new();
    for m1 in 1..=max {
        for m2 in 1..=m1 {
            for n1 in 1..=max {
                for n2 in 1..=max {
                    out.push(AntennaConfig::new(m1, m2, n1, n2));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        let c = AntennaConfig::new;
        assert_eq!(normalize(c(2, 3, 1, 1)).unwrap(), (c(3, 2, 1, 1), true));
        assert_eq!(normalize(c(3, 2, 1, 1)).unwrap(), (c(3, 2, 1, 1), false));
        assert_eq!(normalize(c(1, 1, 4, 2)).unwrap(), (c(1, 1, 4, 2), false));
        assert!(normalize(c(0, 0, 1, 1)).is_err());
        assert!(normalize(c(1, 1, 0, 1)).is_err());
    }

    #[test]
    fn q_accessor() {
        let c = AntennaConfig::new(3, 1, 2, 4);
        assert_eq!(c.q(0, 0), 4);
        assert_eq!(c.q(0, 1), 4);
        assert_eq!(c.q(1, 0), 3);
        assert_eq!(c.q(1, 1), 2);
    }

    #[test]
    fn sweep_size() {
        assert_eq!(normalized_configs(4).len(), 160);
    }
}
