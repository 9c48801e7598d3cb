//! Closed-form quantities: rank-ratio parameters, sum DoF, case labels and
//! the constants of the three-phase scheme.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::config::AntennaConfig;
use crate::error::{Result, XcError};
use crate::rational::{int, lcm_rational, rat, Rational};

/// The three terms inside the min of `Γ_i`, in order: `(M1+M2)/N_i'`,
/// `(N_i+N_i')/N_i'` and the distributed-transmitter term.
pub fn gamma_terms(c: &AntennaConfig, i: usize) -> [Rational; 3] {
    let ni = c.n(i) as i128;
    let nip = c.n(i ^ 1) as i128;
    let q1 = c.q(i, 0) as i128;
    let q2 = c.q(i, 1) as i128;
    [
        rat(c.m_sum() as i128, nip),
        rat(ni + nip, nip),
        rat(q1 * nip + q2 * (nip + ni), nip * (q2 + nip)),
    ]
}

/// `Γ_i`, the maximum rank-ratio at receiver `i`.
pub fn gamma(c: &AntennaConfig, i: usize) -> Rational {
    let t = gamma_terms(c, i);
    t[0].min(t[1]).min(t[2]).max(Rational::one())
}

/// `(coop, dist)`: the cooperative bound `max{min{(M1+M2)/N_i', (N1+N2)/N_i'}, 1}`
/// and the distributed-transmitter term.
pub fn gamma_bounds(c: &AntennaConfig, i: usize) -> (Rational, Rational) {
    let t = gamma_terms(c, i);
    (t[0].min(t[1]).max(Rational::one()), t[2])
}

/// Sum-DoF expression evaluated at arbitrary rank-ratios `g`.
///
/// When `g1 g2 = 1` inside the first branch (both ratios are 1, which happens
/// when `N1 = N2 = M1 + M2`) the value is `M1 + M2`.
pub fn sum_dof_with(c: &AntennaConfig, g: [Rational; 2]) -> Rational {
    let m = int(c.m_sum() as i128);
    if c.m_sum() >= c.n1.max(c.n2) {
        let p = g[0] * g[1];
        if p.is_one() {
            return m;
        }
        let n1 = int(c.n1 as i128);
        let n2 = int(c.n2 as i128);
        (p * (n1 + n2) - g[0] * n2 - g[1] * n1) / (p - Rational::one())
    } else {
        m
    }
}

/// Linear sum DoF of the X-channel with delayed CSIT.
pub fn sum_dof(c: &AntennaConfig) -> Rational {
    sum_dof_with(c, [gamma(c, 0), gamma(c, 1)])
}

/// The same expression with each `Γ_i` replaced by its cooperative bound.
pub fn bc_sum_dof(c: &AntennaConfig) -> Rational {
    sum_dof_with(c, [gamma_bounds(c, 0).0, gamma_bounds(c, 1).0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    Case1,
    Case2,
    Case3,
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Case label; Case 1 takes precedence over Case 2.
pub fn case_of(c: &AntennaConfig) -> Case {
    if c.n1.max(c.n2) >= c.m_sum() {
        Case::Case1
    } else if c.m1 >= c.n_sum() {
        Case::Case2
    } else {
        Case::Case3
    }
}

/// How a round of phase `i` is transmitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhaseMode {
    /// Case 1: both transmitters send fresh symbols on every antenna in one slot.
    Fresh,
    /// `Γ_i N_i' <= M1`: transmitter 2 is silent, transmitter 1 sends
    /// `min{M1, N1+N2}` fresh symbols in one slot.
    SilentTx2,
    /// `Γ_i N_i' > M1`: transmitter 2 retransmits rows of `Φ_i[k]` after
    /// `ξ_i` fresh slots.
    Phi,
}

/// Per-phase scheme constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseParams {
    pub mode: PhaseMode,
    /// `S_i`, slots per round.
    pub s: u64,
    /// `ξ_i`, fresh slots for transmitter 2.
    pub xi: u64,
    /// `Λ_i`, symbols per round.
    pub lambda_cap: u64,
    /// `λ_i`, equations buffered per round.
    pub lambda_buf: u64,
    /// `λ̄_i`, single-transmitter equations available per round.
    pub lambda_bar: u64,
    /// `(b1, b2)`, per-transmitter share of `λ̄_i`.
    pub owner_split: (u64, u64),
    /// `κ_i`, number of rounds.
    pub kappa: u64,
    /// Fresh symbols per round from transmitter 1 and transmitter 2.
    pub tx_symbols: [u64; 2],
}

impl PhaseParams {
    /// Slots used by the phase.
    pub fn slots(&self) -> u64 {
        self.kappa * self.s
    }
}

/// All derived scheme constants of a normalized configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub config: AntennaConfig,
    #[serde(with = "crate::rational::serde_pair")]
    pub gamma: [Rational; 2],
    pub case_label: Case,
    pub phases: [PhaseParams; 2],
    /// `min{M1+M2, N_i}`, phase-`i` equations delivered per phase-3 slot.
    pub phase3_load: [u64; 2],
    pub t_phase3: u64,
    pub t_total: u64,
    #[serde(with = "crate::rational::serde_str")]
    pub achieved_dof: Rational,
}

impl SchemeParams {
    /// Total symbols `κ1 Λ1 + κ2 Λ2`.
    pub fn total_symbols(&self) -> u64 {
        self.phases.iter().map(|p| p.kappa * p.lambda_cap).sum()
    }

    /// Message size `m_ij`.
    pub fn message_size(&self, i: usize, j: usize) -> u64 {
        self.phases[i].kappa * self.phases[i].tx_symbols[j]
    }
}

fn to_u64(x: Rational, what: &str) -> Result<u64> {
    if !x.is_integer() || x.is_negative() {
        return Err(XcError::InternalInconsistency(format!(
            "{what} = {x} is not a non-negative integer"
        )));
    }
    x.to_integer()
        .to_u64()
        .ok_or_else(|| XcError::InternalInconsistency(format!("{what} = {x} overflows")))
}

fn phase_params(c: &AntennaConfig, case: Case, g: Rational, i: usize) -> Result<PhaseParams> {
    let m1 = c.m1 as u64;
    let m2 = c.m2 as u64;
    let ni = c.n(i) as u64;
    let nip = c.n(i ^ 1) as u64;
    let (mode, s, xi, tx_symbols) = if case == Case::Case1 {
        (PhaseMode::Fresh, 1, 1, [m1, m2])
    } else if g * int(nip as i128) <= int(m1 as i128) {
        (PhaseMode::SilentTx2, 1, 0, [m1.min(ni + nip), 0])
    } else {
        let gap = (g * int(nip as i128) - int(m1 as i128)).min(int(m2 as i128));
        let (a, b) = (*gap.numer(), *gap.denom());
        let xi = a / a.gcd(&(m2 as i128 * b));
        let s = rat(m2 as i128 * xi, 1) / gap;
        let s = to_u64(s, "S_i")?;
        let xi = xi as u64;
        (PhaseMode::Phi, s, xi, [s * m1, xi * m2])
    };
    let lambda_cap = tx_symbols[0] + tx_symbols[1];
    let (lambda_buf, owner_split) = match mode {
        PhaseMode::Fresh => {
            // Rx i' isolates each transmitter's symbols once it has enough antennas.
            let lam = (m1 + m2).saturating_sub(ni);
            let b1 = m1.min(nip.saturating_sub(m2));
            let b2 = m2.min(nip.saturating_sub(m1));
            (lam, (b1, b2))
        }
        PhaseMode::SilentTx2 => {
            let lam = lambda_cap as i128 - (s * ni) as i128;
            if lam < 0 {
                return Err(XcError::InternalInconsistency(format!(
                    "{c}: λ_{} = {lam} < 0",
                    i + 1
                )));
            }
            (lam as u64, (nip.min(lambda_cap), 0))
        }
        PhaseMode::Phi => {
            let lam = lambda_cap as i128 - (s * ni) as i128;
            let literal = s as i128 * (m1 as i128 - ni as i128) + (xi * m2) as i128;
            if lam != literal {
                return Err(XcError::InternalInconsistency(format!(
                    "{c}: λ_{} identity mismatch ({lam} vs {literal})",
                    i + 1
                )));
            }
            if lam < 0 {
                return Err(XcError::InternalInconsistency(format!(
                    "{c}: λ_{} = {lam} < 0",
                    i + 1
                )));
            }
            let img2 = xi * m2.min(nip);
            let b1 = (s * m1).min(s * nip - img2);
            let b2 = img2.min(s * nip.saturating_sub(m1));
            let theta = lambda_cap
                .min(s * m1 + xi * nip)
                .min(s * nip)
                .min(s * nip - img2 + s * nip.saturating_sub(m1));
            if theta != b1 + b2 {
                return Err(XcError::InternalInconsistency(format!(
                    "{c}: λ̄_{} forms disagree ({} vs {theta})",
                    i + 1,
                    b1 + b2
                )));
            }
            (lam as u64, (b1, b2))
        }
    };
    let lambda_bar = owner_split.0 + owner_split.1;
    if lambda_buf > lambda_bar && !(mode == PhaseMode::Fresh) {
        return Err(XcError::InternalInconsistency(format!(
            "{c}: λ_{} = {lambda_buf} exceeds λ̄ = {lambda_bar}",
            i + 1
        )));
    }
    Ok(PhaseParams {
        mode,
        s,
        xi,
        lambda_cap,
        lambda_buf,
        lambda_bar,
        owner_split,
        kappa: 0,
        tx_symbols,
    })
}

/// Computes every scheme constant and checks the scheme's invariants.
pub fn scheme_params(c: &AntennaConfig) -> Result<SchemeParams> {
    c.validate()?;
    let case = case_of(c);
    let g = [gamma(c, 0), gamma(c, 1)];
    let mut phases = [
        phase_params(c, case, g[0], 0)?,
        phase_params(c, case, g[1], 1)?,
    ];
    let load = [
        (c.m_sum().min(c.n1)) as u64,
        (c.m_sum().min(c.n2)) as u64,
    ];
    let lam = [phases[0].lambda_buf, phases[1].lambda_buf];
    let (kappa, t3) = match (lam[0], lam[1]) {
        (0, 0) => ([1, 1], 0),
        (0, _) => ([1, 0], 0),
        (_, 0) => ([0, 1], 0),
        (l1, l2) => {
            let r1 = rat(l1 as i128, load[0] as i128);
            let r2 = rat(l2 as i128, load[1] as i128);
            let t3 = *lcm_rational(r1, r2).numer();
            let k1 = to_u64(int(t3) / r1, "κ1")?;
            let k2 = to_u64(int(t3) / r2, "κ2")?;
            ([k1, k2], t3 as u64)
        }
    };
    for (p, k) in phases.iter_mut().zip(kappa) {
        p.kappa = k;
    }
    // Balance: κ_i λ_i / c_i equals t3 for both phases.
    for i in 0..2 {
        let lhs = rat((kappa[i] * lam[i]) as i128, load[i] as i128);
        if lhs != int(t3 as i128) {
            return Err(XcError::InternalInconsistency(format!(
                "{c}: balance fails for phase {} ({lhs} vs {t3})",
                i + 1
            )));
        }
    }
    for (i, p) in phases.iter().enumerate() {
        if p.mode == PhaseMode::Phi {
            let ratio = rat(p.lambda_cap as i128, (p.s * c.n(i ^ 1) as u64) as i128);
            if ratio != g[i] {
                return Err(XcError::InternalInconsistency(format!(
                    "{c}: Λ/(S N') = {ratio} differs from Γ_{} = {}",
                    i + 1,
                    g[i]
                )));
            }
        }
    }
    let t_total = phases[0].slots() + phases[1].slots() + t3;
    let symbols: u64 = phases.iter().map(|p| p.kappa * p.lambda_cap).sum();
    if t_total == 0 {
        return Err(XcError::InternalInconsistency(format!("{c}: empty blocklength")));
    }
    let achieved = rat(symbols as i128, t_total as i128);
    let expected = sum_dof(c);
    if achieved != expected {
        return Err(XcError::InternalInconsistency(format!(
            "{c}: achieved {achieved} differs from sum DoF {expected}"
        )));
    }
    Ok(SchemeParams {
        config: *c,
        gamma: g,
        case_label: case,
        phases,
        phase3_load: load,
        t_phase3: t3,
        t_total,
        achieved_dof: achieved,
    })
}

/// Per-regime symmetric closed forms for `M1 = M2 = M`, `N1 = N2 = N`.
pub fn symmetric_closed_form(m: u32, n: u32) -> Rational {
    let (m, n) = (m as i128, n as i128);
    let r = rat(n, m);
    if r <= rat(1, 2) {
        rat(4 * n, 3)
    } else if r <= Rational::one() {
        rat(6 * m * n, 4 * m + n)
    } else if r <= rat(4, 3) {
        rat(6 * n, 5)
    } else if r <= int(2) {
        rat(4 * m * n, 2 * m + n)
    } else {
        int(2 * m)
    }
}

/// `Γ_i` restricted to its first and third terms (the form predicted when
/// `max N < M1+M2` and `M1 < N1+N2`).
pub fn gamma_first_third(c: &AntennaConfig, i: usize) -> Rational {
    let t = gamma_terms(c, i);
    t[0].min(t[2]).max(Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(m1: u32, m2: u32, n1: u32, n2: u32) -> AntennaConfig {
        AntennaConfig::new(m1, m2, n1, n2)
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&c(1, 1, 1, 1), 0), rat(3, 2));
        assert_eq!(gamma(&c(3, 3, 2, 2), 0), rat(9, 5));
        assert_eq!(gamma(&c(2, 2, 3, 1), 0), rat(10, 3));
        assert_eq!(gamma(&c(2, 2, 3, 1), 1), rat(7, 6));
        assert_eq!(gamma(&c(1, 1, 4, 4), 0), int(1));
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(gamma_bounds(&c(3, 3, 2, 2), 0), (int(2), rat(9, 5)));
        assert_eq!(gamma_bounds(&c(1, 1, 4, 4), 0).0, int(1));
        let (coop, dist) = gamma_bounds(&c(4, 1, 2, 1), 0);
        assert_eq!(coop, int(3));
        assert!(dist >= int(3));
        assert_eq!(gamma(&c(4, 1, 2, 1), 0), int(3));
    }

    #[test]
    fn sum_dof_examples() {
        assert_eq!(sum_dof(&c(3, 3, 2, 2)), rat(18, 7));
        assert_eq!(sum_dof(&c(2, 1, 4, 1)), int(3));
        assert_eq!(sum_dof(&c(2, 2, 3, 1)), rat(157, 52));
        assert_eq!(sum_dof(&c(1, 1, 2, 2)), int(2));
    }

    #[test]
    fn bc_examples() {
        assert_eq!(bc_sum_dof(&c(3, 3, 1, 1)), rat(4, 3));
        assert_eq!(bc_sum_dof(&c(1, 1, 2, 2)), int(2));
        assert!(bc_sum_dof(&c(3, 3, 2, 2)) > sum_dof(&c(3, 3, 2, 2)));
    }

    #[test]
    fn case_examples() {
        assert_eq!(case_of(&c(2, 1, 4, 1)), Case::Case1);
        assert_eq!(case_of(&c(4, 1, 2, 1)), Case::Case2);
        assert_eq!(case_of(&c(3, 3, 2, 2)), Case::Case3);
    }

    #[test]
    fn scheme_3322() {
        let p = scheme_params(&c(3, 3, 2, 2)).unwrap();
        for ph in &p.phases {
            assert_eq!((ph.s, ph.xi, ph.lambda_cap, ph.lambda_buf, ph.kappa), (5, 1, 18, 8, 1));
            assert_eq!(ph.owner_split, (8, 0));
        }
        assert_eq!((p.t_phase3, p.t_total), (4, 14));
        assert_eq!(p.achieved_dof, rat(18, 7));
    }

    #[test]
    fn scheme_4121() {
        let p = scheme_params(&c(4, 1, 2, 1)).unwrap();
        let f = |i: usize| {
            let ph = &p.phases[i];
            (ph.s, ph.xi, ph.lambda_cap, ph.lambda_buf, ph.kappa)
        };
        assert_eq!(f(0), (1, 0, 3, 1, 4));
        assert_eq!(f(1), (1, 0, 3, 2, 1));
        assert_eq!((p.t_phase3, p.t_total), (2, 7));
        assert_eq!(p.achieved_dof, rat(15, 7));
    }

    #[test]
    fn scheme_2231() {
        let p = scheme_params(&c(2, 2, 3, 1)).unwrap();
        let ph = &p.phases;
        assert_eq!((ph[0].s, ph[0].xi, ph[0].lambda_cap, ph[0].lambda_buf), (3, 2, 10, 1));
        assert_eq!((ph[1].s, ph[1].xi, ph[1].lambda_cap, ph[1].lambda_buf), (4, 3, 14, 10));
        assert_eq!((ph[0].kappa, ph[1].kappa), (30, 1));
        assert_eq!((p.t_phase3, p.t_total), (10, 104));
        assert_eq!(p.achieved_dof, rat(157, 52));
    }

    #[test]
    fn scheme_case1_asymmetric() {
        let p = scheme_params(&c(2, 1, 4, 1)).unwrap();
        assert_eq!(p.case_label, Case::Case1);
        assert_eq!(p.phases[0].lambda_buf, 0);
        assert_eq!(p.phases[1].lambda_buf, 2);
        assert_eq!((p.phases[0].kappa, p.phases[1].kappa), (1, 0));
        assert_eq!((p.t_phase3, p.t_total), (0, 1));
        assert_eq!(p.achieved_dof, int(3));
    }

    #[test]
    fn scheme_1111() {
        let p = scheme_params(&c(1, 1, 1, 1)).unwrap();
        assert_eq!((p.phases[0].s, p.phases[0].xi, p.phases[0].lambda_cap), (2, 1, 3));
        assert_eq!(p.phases[0].lambda_buf, 1);
        assert_eq!((p.t_phase3, p.t_total), (1, 5));
        assert_eq!(p.achieved_dof, rat(6, 5));
    }
}
