//! Linear DoF region of the symmetric configuration `(M, M, N, N)`.
//!
//! Tuples are ordered `(d11, d12, d21, d22)`, so `d_ij` sits at position
//! `2i + j` with 0-based indices. The module builds the facet inequalities,
//! the published corner list of each regime, an exact vertex enumeration
//! of the inequalities, and an executable plan for every corner.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::channel::{ChannelSource, RandomChannels};
use crate::config::AntennaConfig;
use crate::error::{Result, XcError};
use crate::field::{Field, FieldMatrix};
use crate::params::{gamma, sum_dof};
use crate::rational::{int, rat, Rational};
use crate::rng::{stream, Role};
use crate::scheme::{simulate_with, Repetition, SchemeVariant};
use crate::transcript::{SlotPrecoders, Transcript, TRANSCRIPT_VERSION};

/// A DoF tuple `(d11, d12, d21, d22)`.
pub type Point = [Rational; 4];

/// Position of `d_ij` in a [`Point`].
pub fn idx(i: usize, j: usize) -> usize {
    2 * i + j
}

/// Symmetric regimes by `N/M`, with right-closed intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regime {
    /// `N/M <= 1/2`.
    R1,
    /// `1/2 < N/M <= 1`.
    R2,
    /// `1 < N/M <= 4/3`.
    R3,
    /// `4/3 < N/M <= 2`.
    R4,
    /// `2 < N/M`.
    R5,
}

impl Regime {
    pub const ALL: [Regime; 5] = [Regime::R1, Regime::R2, Regime::R3, Regime::R4, Regime::R5];

    pub fn of(m: u32, n: u32) -> Regime {
        let r = rat(n as i128, m as i128);
        if r <= rat(1, 2) {
            Regime::R1
        } else if r <= int(1) {
            Regime::R2
        } else if r <= rat(4, 3) {
            Regime::R3
        } else if r <= int(2) {
            Regime::R4
        } else {
            Regime::R5
        }
    }

    /// Number of corner points stated for the regime.
    pub fn published_count(self) -> usize {
        match self {
            Regime::R1 => 8,
            Regime::R2 => 12,
            Regime::R3 => 12,
            Regime::R4 => 13,
            Regime::R5 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::R1 => "R1",
            Regime::R2 => "R2",
            Regime::R3 => "R3",
            Regime::R4 => "R4",
            Regime::R5 => "R5",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficient of `d_{i'j'}` in the mixed inequality family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientRule {
    /// `min{[N-M]+, M} / min{ΓN-M, M}`.
    Corrected,
    /// `[N-M]+ / min{ΓN-M, M}`.
    Literal,
}

impl CoefficientRule {
    pub fn name(self) -> &'static str {
        match self {
            CoefficientRule::Corrected => "corrected",
            CoefficientRule::Literal => "literal",
        }
    }
}

impl FromStr for CoefficientRule {
    type Err = XcError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(CoefficientRule::Corrected),
            "literal" => Ok(CoefficientRule::Literal),
            _ => Err(XcError::InvalidArgument(format!("unknown coefficient rule {s:?}"))),
        }
    }
}

/// Inequality families of the region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `-d_ij <= 0`.
    NonNegative,
    /// `d_ij + min{N,M}/min{2N,M} d_{i'j} <= min{N,M}`.
    SingleStream,
    /// `d_i1 + d_i2 + (d_{i'1} + d_{i'2})/Γ <= min{N,2M}`.
    GammaSum,
    /// `d_i1 + d_i2 + N/min{Q,2N} d_{i'j} + c d_{i'j'} <= min{N,2M}`.
    Mixed,
}

/// `coeffs · d <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub family: Family,
    #[serde(with = "crate::rational::serde_quad")]
    pub coeffs: Point,
    #[serde(with = "crate::rational::serde_str")]
    pub rhs: Rational,
}

impl Inequality {
    pub fn lhs(&self, p: &Point) -> Rational {
        self.coeffs.iter().zip(p).map(|(a, x)| a * x).sum()
    }

    pub fn holds(&self, p: &Point) -> bool {
        self.lhs(p) <= self.rhs
    }

    pub fn is_tight(&self, p: &Point) -> bool {
        self.lhs(p) == self.rhs
    }
}

/// How a corner is achieved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlanKind {
    /// One transmitter-receiver pair, `min{M,N}` streams in one slot.
    P2p { tx: usize, rx: usize },
    /// The three-phase scheme with a single active transmitter per phase;
    /// `phase_tx[i]` serves receiver `i`.
    Bc { phase_tx: [usize; 2] },
    /// One slot without CSIT; `sizes[i][j]` streams from `j` to `i`.
    Mac { sizes: [[usize; 2]; 2] },
    /// One slot without CSIT, as [`PlanKind::Mac`].
    ZeroCsit { sizes: [[usize; 2]; 2] },
    /// The three-phase scheme on the full configuration with a per-phase
    /// role map.
    FullScheme { role_to_tx: [[usize; 2]; 2] },
}

impl PlanKind {
    pub fn name(&self) -> &'static str {
        match self {
            PlanKind::P2p { .. } => "p2p",
            PlanKind::Bc { .. } => "bc",
            PlanKind::Mac { .. } => "mac",
            PlanKind::ZeroCsit { .. } => "zero_csit",
            PlanKind::FullScheme { .. } => "full_scheme",
        }
    }
}

/// A published corner and the plan that reaches it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    #[serde(with = "crate::rational::serde_quad")]
    pub point: Point,
    pub plan: PlanKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AchievabilityPlan {
    pub m: u32,
    pub n: u32,
    pub kind: PlanKind,
    #[serde(with = "crate::rational::serde_quad")]
    pub expected: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoFRegion {
    pub m: u32,
    pub n: u32,
    pub regime: Regime,
    pub rule: CoefficientRule,
    #[serde(with = "crate::rational::serde_str")]
    pub gamma: Rational,
    pub inequalities: Vec<Inequality>,
    /// Published corners, duplicates removed, in listing order.
    pub corners: Vec<Corner>,
}

impl DoFRegion {
    pub fn contains(&self, p: &Point) -> bool {
        self.inequalities.iter().all(|q| q.holds(p))
    }

    /// Rank of the coefficient rows of the inequalities tight at `p`.
    pub fn tight_rank(&self, p: &Point) -> usize {
        let rows: Vec<Point> = self
            .inequalities
            .iter()
            .filter(|q| q.is_tight(p))
            .map(|q| q.coeffs)
            .collect();
        rank(&rows)
    }

    pub fn corner_points(&self) -> Vec<Point> {
        self.corners.iter().map(|c| c.point).collect()
    }

    /// Every vertex of the inequality system, from all 4-subsets of
    /// inequalities with a unique feasible solution, in sorted order.
    pub fn vertices(&self) -> Vec<Point> {
        let q = &self.inequalities;
        let mut out = BTreeSet::new();
        let k = q.len();
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    for d in c + 1..k {
                        let rows = [q[a].coeffs, q[b].coeffs, q[c].coeffs, q[d].coeffs];
                        let rhs = [q[a].rhs, q[b].rhs, q[c].rhs, q[d].rhs];
                        if let Some(p) = solve4(rows, rhs) {
                            if self.contains(&p) {
                                out.insert(p);
                            }
                        }
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Largest `d11 + d12 + d21 + d22` over the published corners.
    pub fn max_corner_sum(&self) -> Rational {
        self.corners
            .iter()
            .map(|c| c.point.iter().sum())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("region serializes")
    }

    /// Plain-text H-representation followed by the V-representation of the
    /// published corners.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "region M={} N={} regime={} rule={} gamma={}",
            self.m,
            self.n,
            self.regime,
            self.rule.name(),
            self.gamma
        );
        let _ = writeln!(s, "H-representation: a11 a12 a21 a22 <= b");
        for q in &self.inequalities {
            let _ = writeln!(s, "  {} <= {}  {:?}", join(&q.coeffs), q.rhs, q.family);
        }
        let _ = writeln!(s, "V-representation: d11 d12 d21 d22");
        for c in &self.corners {
            let _ = writeln!(s, "  {}  {}", join(&c.point), c.plan.name());
        }
        s
    }
}

fn join(p: &Point) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn check_dims(m: u32, n: u32) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(XcError::InvalidArgument(format!(
            "symmetric region needs m, n >= 1, got ({m}, {n})"
        )));
    }
    Ok(())
}

/// Region of `(M, M, N, N)` with the corrected mixed coefficient.
pub fn region_symmetric(m: u32, n: u32) -> Result<DoFRegion> {
    region_with_rule(m, n, CoefficientRule::Corrected)
}

pub fn region_with_rule(m: u32, n: u32, rule: CoefficientRule) -> Result<DoFRegion> {
    check_dims(m, n)?;
    let c = AntennaConfig::symmetric(m, n);
    let g = gamma(&c, 0);
    let (mm, nn) = (int(m as i128), int(n as i128));
    let q = mm.max(nn);
    let zero = Rational::zero();
    let one = Rational::one();
    let mut ineqs = Vec::with_capacity(14);
    for k in 0..4 {
        let mut a = [zero; 4];
        a[k] = -one;
        ineqs.push(Inequality {
            family: Family::NonNegative,
            coeffs: a,
            rhs: zero,
        });
    }
    let single = mm.min(nn) / mm.min(int(2) * nn);
    for i in 0..2 {
        for j in 0..2 {
            let mut a = [zero; 4];
            a[idx(i, j)] = one;
            a[idx(i ^ 1, j)] = single;
            ineqs.push(Inequality {
                family: Family::SingleStream,
                coeffs: a,
                rhs: mm.min(nn),
            });
        }
    }
    let sum_rhs = nn.min(int(2) * mm);
    for i in 0..2 {
        let mut a = [zero; 4];
        a[idx(i, 0)] = one;
        a[idx(i, 1)] = one;
        a[idx(i ^ 1, 0)] = g.recip();
        a[idx(i ^ 1, 1)] = g.recip();
        ineqs.push(Inequality {
            family: Family::GammaSum,
            coeffs: a,
            rhs: sum_rhs,
        });
    }
    let excess = (nn - mm).max(zero);
    let mixed = if excess.is_zero() {
        zero
    } else {
        let den = (g * nn - mm).min(mm);
        if !den.is_positive() {
            return Err(XcError::ZeroDenominator(format!(
                "mixed coefficient at (M,N)=({m},{n})"
            )));
        }
        match rule {
            CoefficientRule::Corrected => excess.min(mm) / den,
            CoefficientRule::Literal => excess / den,
        }
    };
    let direct = nn / q.min(int(2) * nn);
    for i in 0..2 {
        for j in 0..2 {
            let mut a = [zero; 4];
            a[idx(i, 0)] = one;
            a[idx(i, 1)] = one;
            a[idx(i ^ 1, j)] = direct;
            a[idx(i ^ 1, j ^ 1)] = mixed;
            ineqs.push(Inequality {
                family: Family::Mixed,
                coeffs: a,
                rhs: sum_rhs,
            });
        }
    }
    Ok(DoFRegion {
        m,
        n,
        regime: Regime::of(m, n),
        rule,
        gamma: g,
        inequalities: ineqs,
        corners: published_corners(m, n),
    })
}

/// Published corner points of `(M, M, N, N)`, duplicates removed.
pub fn corner_points(m: u32, n: u32) -> Result<Vec<Point>> {
    check_dims(m, n)?;
    Ok(published_corners(m, n).into_iter().map(|c| c.point).collect())
}

/// Number of corners as listed, before duplicates are removed.
pub fn listed_count(m: u32, n: u32) -> usize {
    match Regime::of(m, n) {
        Regime::R1 => 8,
        Regime::R2 => 12,
        Regime::R3 => 16,
        Regime::R4 => 13,
        Regime::R5 => 4,
    }
}

fn published_corners(m: u32, n: u32) -> Vec<Corner> {
    let (mm, nn) = (int(m as i128), int(n as i128));
    let zero = Rational::zero();
    let mut out: Vec<Corner> = Vec::new();
    let mut push = |point: Point, plan: PlanKind| {
        if !out.iter().any(|c| c.point == point) {
            out.push(Corner { point, plan });
        }
    };
    let singles = |x: Rational, push: &mut dyn FnMut(Point, PlanKind)| {
        for k in 0..4 {
            let mut p = [zero; 4];
            p[k] = x;
            push(p, PlanKind::P2p { tx: k % 2, rx: k / 2 });
        }
    };
    // (0,x,0,x), (0,x,x,0), (x,0,0,x), (x,0,x,0)
    let cross = |x: Rational, push: &mut dyn FnMut(Point, PlanKind)| {
        for phase_tx in [[1, 1], [1, 0], [0, 1], [0, 0]] {
            let mut p = [zero; 4];
            for (i, &j) in phase_tx.iter().enumerate() {
                p[idx(i, j)] = x;
            }
            push(p, PlanKind::Bc { phase_tx });
        }
    };
    // (A,B,A,B), (B,A,A,B), (A,B,B,A), (B,A,B,A) with A >= B
    let weighted = |a: Rational, b: Rational, push: &mut dyn FnMut(Point, PlanKind)| {
        for lead in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            let mut p = [zero; 4];
            for (i, &l) in lead.iter().enumerate() {
                p[idx(i, l)] = a;
                p[idx(i, l ^ 1)] = b;
            }
            let role_to_tx = [[lead[0], lead[0] ^ 1], [lead[1], lead[1] ^ 1]];
            push(p, PlanKind::FullScheme { role_to_tx });
        }
    };
    let one_shot = |tuples: &[[u32; 4]], zero_csit: bool, push: &mut dyn FnMut(Point, PlanKind)| {
        for t in tuples {
            let sizes = [[t[0] as usize, t[1] as usize], [t[2] as usize, t[3] as usize]];
            let plan = if zero_csit {
                PlanKind::ZeroCsit { sizes }
            } else {
                PlanKind::Mac { sizes }
            };
            push(t.map(|x| int(x as i128)), plan);
        }
    };
    let mac_tuples = |a: u32, b: u32| {
        [
            [a, b, 0, 0],
            [a, 0, 0, b],
            [b, a, 0, 0],
            [0, a, b, 0],
            [0, b, a, 0],
            [0, 0, a, b],
            [b, 0, 0, a],
            [0, 0, b, a],
        ]
    };
    match Regime::of(m, n) {
        Regime::R1 => {
            singles(nn, &mut push);
            cross(int(2) * nn / int(3), &mut push);
        }
        Regime::R2 => {
            singles(nn, &mut push);
            cross(nn * mm / (nn + mm), &mut push);
            let den = nn + int(4) * mm;
            weighted(mm * (nn + mm) / den, mm * (int(2) * nn - mm) / den, &mut push);
        }
        Regime::R3 => {
            singles(mm, &mut push);
            one_shot(&mac_tuples(m, n - m), false, &mut push);
            weighted(int(2) * mm / int(5), (int(3) * nn - int(2) * mm) / int(5), &mut push);
        }
        Regime::R4 => {
            singles(mm, &mut push);
            one_shot(&mac_tuples(m, n - m), false, &mut push);
            let x = nn * mm / (nn + int(2) * mm);
            push([x; 4], PlanKind::FullScheme { role_to_tx: [[0, 1], [0, 1]] });
        }
        Regime::R5 => {
            one_shot(
                &[[0, 0, m, m], [0, m, m, 0], [m, 0, 0, m], [m, m, 0, 0]],
                true,
                &mut push,
            );
        }
    }
    out
}

/// Rank of a list of 4-vectors over the rationals.
pub fn rank(rows: &[Point]) -> usize {
    let mut a: Vec<Point> = rows.to_vec();
    let mut r = 0;
    for col in 0..4 {
        let Some(p) = (r..a.len()).find(|&k| !a[k][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r];
        for k in 0..a.len() {
            if k != r && !a[k][col].is_zero() {
                let f = a[k][col] / pivot[col];
                for c in 0..4 {
                    a[k][c] -= f * pivot[c];
                }
            }
        }
        r += 1;
    }
    r
}

/// Unique solution of a 4x4 system, or `None` when it is singular.
fn solve4(mut a: [Point; 4], mut b: Point) -> Option<Point> {
    for col in 0..4 {
        let p = (col..4).find(|&k| !a[k][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let piv = a[col][col];
        for c in 0..4 {
            a[col][c] /= piv;
        }
        b[col] /= piv;
        for k in 0..4 {
            if k != col && !a[k][col].is_zero() {
                let f = a[k][col];
                for c in 0..4 {
                    let v = a[col][c];
                    a[k][c] -= f * v;
                }
                let v = b[col];
                b[k] -= f * v;
            }
        }
    }
    Some(b)
}

/// Feasibility of `A x = b, x >= 0` for `b >= 0`, by phase one of the
/// simplex method in exact arithmetic with Bland's rule.
fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let width = cols + rows + 1;
    let last = width - 1;
    let mut t: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(r, (row, &rhs))| {
            let mut v = row.clone();
            v.resize(width, Rational::zero());
            v[cols + r] = Rational::one();
            v[last] = rhs;
            v
        })
        .collect();
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    // Reduced costs of `min sum(artificials)`.
    let mut z = vec![Rational::zero(); width];
    for row in &t {
        for c in (0..cols).chain([last]) {
            z[c] -= row[c];
        }
    }
    while let Some(e) = (0..cols + rows).find(|&c| z[c].is_negative()) {
        let mut leave: Option<(Rational, usize)> = None;
        for r in 0..rows {
            if t[r][e].is_positive() {
                let ratio = t[r][last] / t[r][e];
                let better = match leave {
                    None => true,
                    Some((best, br)) => ratio < best || (ratio == best && basis[r] < basis[br]),
                };
                if better {
                    leave = Some((ratio, r));
                }
            }
        }
        let Some((_, r)) = leave else {
            break;
        };
        let piv = t[r][e];
        for v in t[r].iter_mut() {
            *v /= piv;
        }
        let prow = t[r].clone();
        for (k, row) in t.iter_mut().enumerate() {
            if k != r && !row[e].is_zero() {
                let f = row[e];
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= f * p;
                }
            }
        }
        let f = z[e];
        for (v, p) in z.iter_mut().zip(&prow) {
            *v -= f * p;
        }
        basis[r] = e;
    }
    z[last].is_zero()
}

/// True when `v >= 0` is dominated by a convex combination of `generators`
/// and the origin.
pub fn in_down_hull(v: &Point, generators: &[Point]) -> bool {
    let k = generators.len();
    let mut a = Vec::with_capacity(5);
    for r in 0..4 {
        let mut row: Vec<Rational> = generators.iter().map(|g| g[r]).collect();
        row.extend((0..4).map(|s| if s == r { -Rational::one() } else { Rational::zero() }));
        row.push(Rational::zero());
        a.push(row);
    }
    let mut last = vec![Rational::one(); k];
    last.extend([Rational::zero(); 4]);
    last.push(Rational::one());
    a.push(last);
    let mut b = v.to_vec();
    b.push(Rational::one());
    feasible(&a, &b)
}

/// A published corner that fails the extreme-point test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonVertex {
    #[serde(with = "crate::rational::serde_quad")]
    pub point: Point,
    pub tight_rank: usize,
}

/// Consistency of the published corners with the inequalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    pub m: u32,
    pub n: u32,
    pub regime: Regime,
    pub rule: CoefficientRule,
    pub published_count: usize,
    pub listed_count: usize,
    pub distinct_count: usize,
    #[serde(with = "crate::rational::serde_vec4")]
    pub infeasible: Vec<Point>,
    pub non_vertices: Vec<NonVertex>,
    pub vertex_count: usize,
    /// Nonzero vertices missing from the corner list.
    #[serde(with = "crate::rational::serde_vec4")]
    pub extra_vertices: Vec<Point>,
    /// Extra vertices not dominated by the hull of the corners.
    #[serde(with = "crate::rational::serde_vec4")]
    pub uncovered_vertices: Vec<Point>,
    #[serde(with = "crate::rational::serde_str")]
    pub max_corner_sum: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub max_vertex_sum: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub sum_dof: Rational,
}

impl RegionReport {
    pub fn counts_match(&self) -> bool {
        self.published_count == self.distinct_count
    }

    /// Every published corner is a feasible extreme point and the count
    /// matches.
    pub fn corners_verified(&self) -> bool {
        self.counts_match() && self.infeasible.is_empty() && self.non_vertices.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.counts_match()
            && self.infeasible.is_empty()
            && self.non_vertices.is_empty()
            && self.extra_vertices.is_empty()
            && self.max_corner_sum == self.sum_dof
            && self.max_vertex_sum == self.sum_dof
    }
}

pub fn verify_region(m: u32, n: u32) -> Result<RegionReport> {
    verify_region_with(m, n, CoefficientRule::Corrected)
}

pub fn verify_region_with(m: u32, n: u32, rule: CoefficientRule) -> Result<RegionReport> {
    let region = region_with_rule(m, n, rule)?;
    let corners = region.corner_points();
    let origin = [Rational::zero(); 4];
    let vertices: Vec<Point> = region.vertices().into_iter().filter(|v| *v != origin).collect();
    let extra: Vec<Point> = vertices.iter().filter(|v| !corners.contains(v)).copied().collect();
    let uncovered = extra.iter().filter(|v| !in_down_hull(v, &corners)).copied().collect();
    let non_vertices = corners
        .iter()
        .filter(|p| region.contains(p))
        .map(|p| NonVertex {
            point: *p,
            tight_rank: region.tight_rank(p),
        })
        .filter(|nv| nv.tight_rank < 4)
        .collect();
    Ok(RegionReport {
        m,
        n,
        regime: region.regime,
        rule,
        published_count: region.regime.published_count(),
        listed_count: listed_count(m, n),
        distinct_count: corners.len(),
        infeasible: corners.iter().filter(|p| !region.contains(p)).copied().collect(),
        non_vertices,
        vertex_count: vertices.len(),
        extra_vertices: extra,
        uncovered_vertices: uncovered,
        max_corner_sum: region.max_corner_sum(),
        max_vertex_sum: vertices.iter().map(|v| v.iter().sum()).max().unwrap_or_else(Rational::zero),
        sum_dof: sum_dof(&AntennaConfig::symmetric(m, n)),
    })
}

/// Plan for a published corner of `(M, M, N, N)`.
pub fn achieve_corner(m: u32, n: u32, corner: &Point) -> Result<AchievabilityPlan> {
    check_dims(m, n)?;
    published_corners(m, n)
        .into_iter()
        .find(|c| c.point == *corner)
        .map(|c| AchievabilityPlan {
            m,
            n,
            kind: c.plan,
            expected: c.point,
        })
        .ok_or_else(|| {
            XcError::UnknownCorner(format!("({}) for (M,N)=({m},{n})", join(corner)))
        })
}

/// Result of running a plan over simulated channels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanOutcome {
    pub plan: AchievabilityPlan,
    #[serde(with = "crate::rational::serde_quad")]
    pub achieved: Point,
    pub slots: usize,
    pub decodable: bool,
}

impl PlanOutcome {
    pub fn passed(&self) -> bool {
        self.decodable && self.achieved == self.plan.expected
    }
}

/// Builds the transcript realizing `plan`.
pub fn execute_plan(plan: &AchievabilityPlan, field: Field, seed: u64) -> Result<Transcript> {
    let (m, n) = (plan.m, plan.n);
    let config = AntennaConfig::symmetric(m, n);
    match plan.kind {
        PlanKind::P2p { tx, rx } => {
            let mut sizes = [[0; 2]; 2];
            sizes[rx][tx] = m.min(n) as usize;
            one_shot(&config, sizes, field, seed, "p2p")
        }
        PlanKind::Mac { sizes } => one_shot(&config, sizes, field, seed, "mac"),
        PlanKind::ZeroCsit { sizes } => one_shot(&config, sizes, field, seed, "zero_csit"),
        PlanKind::Bc { phase_tx } => {
            let variant = SchemeVariant {
                role_config: AntennaConfig::new(m, 0, n, n),
                role_to_tx: phase_tx.map(|j| [j, j ^ 1]),
                repetition: Repetition::PhiMixed,
            };
            let mut t = simulate_with(&config, &variant, field, seed, 0)?;
            t.label = "bc".into();
            Ok(t)
        }
        PlanKind::FullScheme { role_to_tx } => {
            let variant = SchemeVariant {
                role_to_tx,
                ..SchemeVariant::standard(config)
            };
            simulate_with(&config, &variant, field, seed, 0)
        }
    }
}

/// Executes `plan` and compares the achieved tuple with the corner.
pub fn run_plan(plan: &AchievabilityPlan, field: Field, seed: u64) -> Result<PlanOutcome> {
    let t = execute_plan(plan, field, seed)?;
    Ok(PlanOutcome {
        plan: plan.clone(),
        achieved: t.dof_tuple()?,
        slots: t.slots(),
        decodable: t.check_decodability().all_pass(),
    })
}

/// One slot with generic precoders and no channel knowledge.
fn one_shot(
    config: &AntennaConfig,
    sizes: [[usize; 2]; 2],
    field: Field,
    seed: u64,
    label: &str,
) -> Result<Transcript> {
    for (i, row) in sizes.iter().enumerate() {
        for (j, &s) in row.iter().enumerate() {
            if s > config.m(j) as usize {
                return Err(XcError::InvalidArgument(format!(
                    "{s} streams from transmitter {} to receiver {} exceed its {} antennas",
                    j + 1,
                    i + 1,
                    config.m(j)
                )));
            }
        }
    }
    let precoders: SlotPrecoders = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let role = Role::Precoder {
                rx: i as u8,
                tx: j as u8,
            };
            let mut rng = stream(seed, 0, 0, role);
            FieldMatrix::random(field, &mut rng, config.m(j) as usize, sizes[i][j])
        })
    });
    let mut source = RandomChannels::new(field, *config, seed, 0);
    let channels = source.draw(0, 1)?;
    Ok(Transcript {
        transcript_version: TRANSCRIPT_VERSION,
        label: label.into(),
        config: *config,
        seed,
        trial: 0,
        prime: field.modulus(),
        params: None,
        message_sizes: sizes,
        channels: vec![channels],
        precoders: vec![precoders],
        buffers: [Vec::new(), Vec::new()],
        phases: Vec::new(),
        resample_events: source.resample_events(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: [(i128, i128); 4]) -> Point {
        v.map(|(a, b)| rat(a, b))
    }

    #[test]
    fn regime_boundaries_are_right_closed() {
        assert_eq!(Regime::of(2, 1), Regime::R1);
        assert_eq!(Regime::of(3, 2), Regime::R2);
        assert_eq!(Regime::of(2, 2), Regime::R2);
        assert_eq!(Regime::of(3, 4), Regime::R3);
        assert_eq!(Regime::of(2, 4), Regime::R4);
        assert_eq!(Regime::of(1, 3), Regime::R5);
    }

    #[test]
    fn regime_two_example_corner() {
        let c = corner_points(3, 2).unwrap();
        assert_eq!(c.len(), 12);
        assert!(c.contains(&pt([(15, 14), (3, 14), (15, 14), (3, 14)])));
        let r = region_symmetric(3, 2).unwrap();
        assert_eq!(r.gamma, rat(9, 5));
        assert_eq!(r.max_corner_sum(), rat(18, 7));
    }

    #[test]
    fn regime_one_gamma_family_binds_cross_pairs() {
        let r = region_symmetric(3, 1).unwrap();
        assert_eq!(r.gamma, int(2));
        let p = pt([(2, 3), (0, 1), (2, 3), (0, 1)]);
        assert!(r
            .inequalities
            .iter()
            .filter(|q| q.family == Family::GammaSum)
            .all(|q| q.is_tight(&p)));
        assert_eq!(region_symmetric(2, 1).unwrap().max_corner_sum(), rat(4, 3));
    }

    #[test]
    fn regime_five_reduces_to_pair_bounds() {
        let r = region_symmetric(1, 3).unwrap();
        let c = corner_points(1, 3).unwrap();
        let expected: Vec<Point> = [[0, 0, 1, 1], [0, 1, 1, 0], [1, 0, 0, 1], [1, 1, 0, 0]]
            .iter()
            .map(|t| t.map(int))
            .collect();
        assert_eq!(c, expected);
        // Vertices of d >= 0, d_ij + d_i'j <= M.
        let origin = [Rational::zero(); 4];
        let mut simple = Vec::new();
        for a in [0, 1] {
            for b in [0, 1] {
                for x in [0, 1] {
                    for y in [0, 1] {
                        // d11 + d21 <= 1 and d12 + d22 <= 1
                        if a + x <= 1 && b + y <= 1 {
                            simple.push([int(a), int(b), int(x), int(y)]);
                        }
                    }
                }
            }
        }
        simple.sort();
        let mut v = r.vertices();
        v.sort();
        assert_eq!(v, simple);
        assert!(v.contains(&origin));
    }

    #[test]
    fn literal_coefficient_cuts_off_regime_five_corners() {
        let r = region_with_rule(1, 3, CoefficientRule::Literal).unwrap();
        assert!(!r.contains(&[int(0), int(0), int(1), int(1)]));
        let rep = verify_region_with(1, 3, CoefficientRule::Literal).unwrap();
        assert_eq!(rep.infeasible.len(), 4);
    }

    #[test]
    fn regime_three_corner_count_exceeds_twelve() {
        assert_eq!(corner_points(4, 5).unwrap().len(), 16);
        // A = B at N/M = 4/3 merges the four permuted tuples.
        let c = corner_points(3, 4).unwrap();
        assert_eq!(c.len(), 13);
        assert!(c.contains(&[rat(6, 5); 4]));
    }

    #[test]
    fn down_hull_membership() {
        let g = [[int(1), int(0), int(0), int(0)], [int(0), int(1), int(0), int(0)]];
        assert!(in_down_hull(&[rat(1, 2), rat(1, 2), int(0), int(0)], &g));
        assert!(in_down_hull(&[rat(1, 3), rat(1, 3), int(0), int(0)], &g));
        assert!(!in_down_hull(&[rat(2, 3), rat(2, 3), int(0), int(0)], &g));
        assert!(!in_down_hull(&[int(0), int(0), rat(1, 10), int(0)], &g));
    }

    #[test]
    fn unknown_corner_is_rejected() {
        assert!(matches!(
            achieve_corner(3, 2, &[int(1); 4]),
            Err(XcError::UnknownCorner(_))
        ));
    }

    #[test]
    fn plan_kinds_for_examples() {
        let p = achieve_corner(3, 1, &pt([(2, 3), (0, 1), (2, 3), (0, 1)])).unwrap();
        assert_eq!(p.kind, PlanKind::Bc { phase_tx: [0, 0] });
        let p = achieve_corner(3, 4, &[int(3), int(1), int(0), int(0)]).unwrap();
        assert_eq!(p.kind, PlanKind::Mac { sizes: [[3, 1], [0, 0]] });
        let p = achieve_corner(1, 3, &[int(1), int(1), int(0), int(0)]).unwrap();
        assert_eq!(p.kind, PlanKind::ZeroCsit { sizes: [[1, 1], [0, 0]] });
    }

    #[test]
    fn every_corner_of_a_regime_two_config_is_achieved() {
        for c in corner_points(3, 2).unwrap() {
            let plan = achieve_corner(3, 2, &c).unwrap();
            let out = run_plan(&plan, Field::default(), 5).unwrap();
            assert!(out.passed(), "{:?}", out);
        }
    }
}
