//! Configurations whose linear sum DoF falls short of the cooperative
//! (broadcast) value.
//!
//! For receiver `i` the rank-ratio `Γ_i` is capped by a cooperative bound
//! and by a distributed-transmitter bound. A loss occurs exactly when the
//! second bound is strictly tighter for some `i`.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{normalize, AntennaConfig};
use crate::error::{Result, XcError};
use crate::params::{bc_sum_dof, gamma_bounds, sum_dof};
use crate::rational::{int, rat, Rational};

/// Rows of the regime table for the distributed bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LossRegime {
    I,
    II,
    III,
}

impl LossRegime {
    pub fn name(self) -> &'static str {
        match self {
            LossRegime::I => "I",
            LossRegime::II => "II",
            LossRegime::III => "III",
        }
    }
}

impl std::fmt::Display for LossRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which form of the second Regime I condition to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeRule {
    /// `N_i' + N_i/2 < M1 + M2`.
    Corrected,
    /// `N_i + N_i'/2 < M1 + M2`.
    Literal,
}

/// Regime of receiver `i`, or `None` when the cooperative bound is at
/// least as tight.
pub fn table_regime(c: &AntennaConfig, i: usize, rule: RegimeRule) -> Option<LossRegime> {
    let (m1, m2) = (c.m1, c.m2);
    let (ni, np) = (c.n(i), c.n(i ^ 1));
    let ms = m1 + m2;
    let ns = c.n_sum();
    // Doubled to stay in integers.
    let second = match rule {
        RegimeRule::Corrected => 2 * np + ni,
        RegimeRule::Literal => 2 * ni + np,
    };
    if m2 <= m1 && m1 <= np && np < ms && second < 2 * ms {
        Some(LossRegime::I)
    } else if m2 <= np && np < m1 && m1 < ns && ns < m1 + 2 * m2 {
        Some(LossRegime::II)
    } else if np < m2 && m2 <= m1 && ni < ms && m1 < ns {
        Some(LossRegime::III)
    } else {
        None
    }
}

/// The common value `(Q_i1 N_i' + Q_i2 (N_i' + N_i)) / (Q_i2 + N_i')`.
pub fn loss_threshold(c: &AntennaConfig, i: usize) -> Rational {
    let (ni, np) = (c.n(i) as i128, c.n(i ^ 1) as i128);
    let (q1, q2) = (c.q(i, 0) as i128, c.q(i, 1) as i128);
    rat(q1 * np + q2 * (np + ni), q2 + np)
}

/// The three strict conditions under which the distributed bound is
/// tighter for receiver `i`.
pub fn loss_conditions(c: &AntennaConfig, i: usize) -> [bool; 3] {
    let e = loss_threshold(c, i);
    let ms = int(c.m_sum() as i128);
    [
        c.n(i ^ 1) < c.m_sum(),
        e < ms,
        e < int(c.n_sum() as i128),
    ]
}

/// Bound comparison for one receiver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundComparison {
    /// Cooperative bound `max{min{(M1+M2)/N_i', (N1+N2)/N_i'}, 1}`.
    #[serde(with = "crate::rational::serde_str")]
    pub bound1: Rational,
    /// Distributed-transmitter bound.
    #[serde(with = "crate::rational::serde_str")]
    pub bound2: Rational,
    pub conditions: [bool; 3],
    /// All three conditions hold.
    pub bound2_strictly_tighter: bool,
    pub regime: Option<LossRegime>,
    pub regime_literal: Option<LossRegime>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LossClassification {
    pub config: AntennaConfig,
    pub receivers: [BoundComparison; 2],
    pub in_e1: bool,
    pub in_e2: bool,
    /// `in_e1 || in_e2`.
    pub loss: bool,
    #[serde(with = "crate::rational::serde_str")]
    pub sum_dof: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub bc_sum_dof: Rational,
    /// `sum_dof < bc_sum_dof`.
    pub formula_loss: bool,
}

impl LossClassification {
    /// Table, conditions, bound values and formulas all agree.
    pub fn consistent(&self) -> bool {
        self.loss == self.formula_loss
            && self.receivers.iter().all(|r| {
                r.bound2_strictly_tighter == r.regime.is_some()
                    && r.bound2_strictly_tighter == (r.bound2 < r.bound1)
            })
    }
}

/// Classifies a normalized configuration with the corrected table.
pub fn classify_loss(c: &AntennaConfig) -> Result<LossClassification> {
    c.validate()?;
    let receivers: [BoundComparison; 2] = std::array::from_fn(|i| {
        let (bound1, bound2) = gamma_bounds(c, i);
        let conditions = loss_conditions(c, i);
        BoundComparison {
            bound1,
            bound2,
            conditions,
            bound2_strictly_tighter: conditions.iter().all(|&x| x),
            regime: table_regime(c, i, RegimeRule::Corrected),
            regime_literal: table_regime(c, i, RegimeRule::Literal),
        }
    });
    let in_e1 = receivers[0].regime.is_some();
    let in_e2 = receivers[1].regime.is_some();
    let (xc, bc) = (sum_dof(c), bc_sum_dof(c));
    Ok(LossClassification {
        config: *c,
        receivers,
        in_e1,
        in_e2,
        loss: in_e1 || in_e2,
        sum_dof: xc,
        bc_sum_dof: bc,
        formula_loss: xc < bc,
    })
}

/// Families of configurations swept by [`loss_grid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridMode {
    /// `(M, M, N, N)`; coordinate `N/M`.
    Symmetric,
    /// `(M, M, N1, N2)` with the given `M`; coordinates `(N1/M, N2/M)`.
    M1EqM2(u32),
    /// `(M1, M2, N, N)` with the given `N`; coordinates `(N/M1, N/M2)`.
    /// Pairs with `M2 > M1` are classified after relabeling.
    N1EqN2(u32),
}

impl FromStr for GridMode {
    type Err = XcError;

    /// `symmetric`, `m1_eq_m2:<M>` or `n1_eq_n2:<N>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || XcError::InvalidArgument(format!("unknown grid mode {s:?}"));
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b.parse::<u32>().map_err(|_| bad())?)),
            None => (s, None),
        };
        match (name, arg) {
            ("symmetric", None) => Ok(GridMode::Symmetric),
            ("m1_eq_m2", Some(m)) if m > 0 => Ok(GridMode::M1EqM2(m)),
            ("n1_eq_n2", Some(n)) if n > 0 => Ok(GridMode::N1EqN2(n)),
            _ => Err(bad()),
        }
    }
}

/// One CSV row of a loss grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LossRow {
    pub x: String,
    pub y: Option<String>,
    pub m1: u32,
    pub m2: u32,
    pub n1: u32,
    pub n2: u32,
    pub loss: bool,
    pub regime_i1: Option<LossRegime>,
    pub regime_i2: Option<LossRegime>,
    pub sum_dof: String,
    pub bc_sum_dof: String,
}

/// Classifies every configuration of `mode` with free counts in `1..=max`.
pub fn loss_grid(mode: GridMode, max: u32) -> Result<Vec<LossRow>> {
    if max == 0 {
        return Err(XcError::InvalidArgument("grid range must be at least 1".into()));
    }
    let r = |a: u32, b: u32| rat(a as i128, b as i128).to_string();
    let points: Vec<(AntennaConfig, String, Option<String>)> = match mode {
        GridMode::Symmetric => (1..=max)
            .flat_map(|m| (1..=max).map(move |n| (m, n)))
            .map(|(m, n)| (AntennaConfig::symmetric(m, n), r(n, m), None))
            .collect(),
        GridMode::M1EqM2(m) => (1..=max)
            .flat_map(|a| (1..=max).map(move |b| (a, b)))
            .map(|(a, b)| (AntennaConfig::new(m, m, a, b), r(a, m), Some(r(b, m))))
            .collect(),
        GridMode::N1EqN2(n) => (1..=max)
            .flat_map(|a| (1..=max).map(move |b| (a, b)))
            .map(|(a, b)| (AntennaConfig::new(a, b, n, n), r(n, a), Some(r(n, b))))
            .collect(),
    };
    points
        .into_par_iter()
        .map(|(c, x, y)| {
            let (norm, _) = normalize(c)?;
            let cl = classify_loss(&norm)?;
            Ok(LossRow {
                x,
                y,
                m1: c.m1,
                m2: c.m2,
                n1: c.n1,
                n2: c.n2,
                loss: cl.loss,
                regime_i1: cl.receivers[0].regime,
                regime_i2: cl.receivers[1].regime,
                sum_dof: cl.sum_dof.to_string(),
                bc_sum_dof: cl.bc_sum_dof.to_string(),
            })
        })
        .collect()
}

/// Writes grid rows as CSV with a header line.
pub fn write_grid_csv<W: std::io::Write>(rows: &[LossRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)
            .map_err(|e| XcError::Output(e.to_string()))?;
    }
    out.flush()
        .map_err(|e| XcError::Output(e.to_string()))?;
    Ok(())
}
