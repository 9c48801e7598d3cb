//! Symmetric summaries: per-regime closed forms and the normalized sum-DoF
//! curves of the X-channel and of the cooperative broadcast channel.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::config::AntennaConfig;
use crate::error::{Result, XcError};
use crate::params::{bc_sum_dof, gamma, scheme_params, sum_dof, symmetric_closed_form};
use crate::rational::{int, rat, Rational};
use crate::region::Regime;

/// Symbolic entries of one regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegimeFormulas {
    pub regime: Regime,
    pub range: &'static str,
    pub gamma: &'static str,
    pub symbol_ratio: &'static str,
    pub dof: &'static str,
}

pub const TABLE1: [RegimeFormulas; 5] = [
    RegimeFormulas {
        regime: Regime::R1,
        range: "N/M <= 1/2",
        gamma: "2",
        symbol_ratio: "0",
        dof: "4N/3",
    },
    RegimeFormulas {
        regime: Regime::R2,
        range: "1/2 < N/M <= 1",
        gamma: "3M/(M+N)",
        symbol_ratio: "(2N-M)/(M+N)",
        dof: "6MN/(4M+N)",
    },
    RegimeFormulas {
        regime: Regime::R3,
        range: "1 < N/M <= 4/3",
        gamma: "3/2",
        symbol_ratio: "(3N-2M)/(2M)",
        dof: "6N/5",
    },
    RegimeFormulas {
        regime: Regime::R4,
        range: "4/3 < N/M <= 2",
        gamma: "2M/N",
        symbol_ratio: "1",
        dof: "4MN/(2M+N)",
    },
    RegimeFormulas {
        regime: Regime::R5,
        range: "2 < N/M",
        gamma: "1",
        symbol_ratio: "1",
        dof: "2M",
    },
];

/// `Γ` and `ξ M2 / (S M1)` in closed form for `(M, M, N, N)`.
pub fn closed_form_gamma_ratio(m: u32, n: u32) -> (Rational, Rational) {
    let (m, n) = (m as i128, n as i128);
    match Regime::of(m as u32, n as u32) {
        Regime::R1 => (int(2), int(0)),
        Regime::R2 => (rat(3 * m, m + n), rat(2 * n - m, m + n)),
        Regime::R3 => (rat(3, 2), rat(3 * n - 2 * m, 2 * m)),
        Regime::R4 => (rat(2 * m, n), Rational::one()),
        Regime::R5 => (Rational::one(), Rational::one()),
    }
}

/// Computed values at one `(M, N)` next to the closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub m: u32,
    pub n: u32,
    pub regime: Regime,
    #[serde(with = "crate::rational::serde_str")]
    pub gamma: Rational,
    /// Fresh symbols of transmitter 2 over those of transmitter 1 per round.
    #[serde(with = "crate::rational::serde_str")]
    pub symbol_ratio: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub sum_dof: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub closed_gamma: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub closed_ratio: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub closed_dof: Rational,
}

impl Table1Row {
    pub fn matches(&self) -> bool {
        self.gamma == self.closed_gamma
            && self.symbol_ratio == self.closed_ratio
            && self.sum_dof == self.closed_dof
    }
}

pub fn table1_row(m: u32, n: u32) -> Result<Table1Row> {
    if m == 0 || n == 0 {
        return Err(XcError::InvalidArgument(format!("need m, n >= 1, got ({m}, {n})")));
    }
    let c = AntennaConfig::symmetric(m, n);
    let p = scheme_params(&c)?;
    let [t1, t2] = p.phases[0].tx_symbols;
    let (closed_gamma, closed_ratio) = closed_form_gamma_ratio(m, n);
    Ok(Table1Row {
        m,
        n,
        regime: Regime::of(m, n),
        gamma: gamma(&c, 0),
        symbol_ratio: rat(t2 as i128, t1 as i128),
        sum_dof: sum_dof(&c),
        closed_gamma,
        closed_ratio,
        closed_dof: symmetric_closed_form(m, n),
    })
}

/// Rows for every `1 <= M, N <= max`.
pub fn table1(max: u32) -> Result<Vec<Table1Row>> {
    (1..=max)
        .flat_map(|m| (1..=max).map(move |n| (m, n)))
        .map(|(m, n)| table1_row(m, n))
        .collect()
}

/// One point of the normalized sum-DoF curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fig4Row {
    #[serde(with = "crate::rational::serde_str")]
    pub ratio: Rational,
    /// `sum_dof / min{N, 2M}`.
    #[serde(with = "crate::rational::serde_str")]
    pub xc: Rational,
    /// `bc_sum_dof / min{N, 2M}`.
    #[serde(with = "crate::rational::serde_str")]
    pub bc: Rational,
}

/// Curves at every distinct ratio `N/M` with `1 <= M, N <= max`, sorted by
/// ratio. Both curves depend on `N/M` only.
pub fn fig4(max: u32) -> Result<Vec<Fig4Row>> {
    if max == 0 {
        return Err(XcError::InvalidArgument("grid range must be at least 1".into()));
    }
    let mut rows: Vec<Fig4Row> = Vec::new();
    for m in 1..=max {
        for n in 1..=max {
            let ratio = rat(n as i128, m as i128);
            if rows.iter().any(|r| r.ratio == ratio) {
                continue;
            }
            let c = AntennaConfig::symmetric(m, n);
            let norm = int(n.min(2 * m) as i128);
            rows.push(Fig4Row {
                ratio,
                xc: sum_dof(&c) / norm,
                bc: bc_sum_dof(&c) / norm,
            });
        }
    }
    rows.sort_by_key(|r| r.ratio);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_two_row() {
        let r = table1_row(3, 2).unwrap();
        assert_eq!(r.gamma, rat(9, 5));
        assert_eq!(r.symbol_ratio, rat(1, 5));
        assert_eq!(r.sum_dof, rat(18, 7));
        assert!(r.matches());
    }

    #[test]
    fn curves_meet_outside_the_loss_interval() {
        for row in fig4(8).unwrap() {
            let lossy = row.ratio > rat(1, 2) && row.ratio < rat(4, 3);
            assert_eq!(row.xc < row.bc, lossy, "at {}", row.ratio);
        }
    }
}
