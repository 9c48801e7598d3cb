//! Dense linear algebra over a prime field `F_p`.

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, XcError};

/// `2^61 - 1`, the default modulus.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;
/// `2^62 - 57`, used to re-run suspected Schwartz–Zippel failures.
pub const SECOND_PRIME: u64 = (1 << 62) - 57;

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The prime field `F_p` for `2 < p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
}

impl Default for Field {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= 1 << 63 || !is_prime(p) {
            return Err(XcError::InvalidArgument(format!(
                "modulus {p} is not an odd prime below 2^63"
            )));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let z = a as u128 * b as u128;
        if self.p == DEFAULT_PRIME {
            let lo = (z as u64) & DEFAULT_PRIME;
            let hi = (z >> 61) as u64;
            let s = lo + hi;
            if s >= DEFAULT_PRIME {
                s - DEFAULT_PRIME
            } else {
                s
            }
        } else {
            (z % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Reduces a possibly negative integer into `[0, p)`.
    pub fn from_i64(&self, x: i64) -> u64 {
        let r = x.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.p)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        Field::new(p).map_err(serde::de::Error::custom)
    }
}

/// Incrementally built row-echelon basis.
///
/// Rows are reduced against the basis in insertion order; each basis row
/// has a unit pivot and stores the indices of its nonzero entries so that
/// reduction only touches those columns.
#[derive(Debug, Clone)]
pub struct RowBasis {
    field: Field,
    cols: usize,
    rows: Vec<BasisRow>,
}

#[derive(Debug, Clone)]
struct BasisRow {
    pivot: usize,
    values: Vec<u64>,
    support: Vec<usize>,
}

impl RowBasis {
    pub fn new(field: Field, cols: usize) -> Self {
        Self {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `row` in place against the basis restricted to pivots in
    /// columns `< limit`.
    fn reduce_limited(&self, row: &mut [u64], limit: usize) {
        let f = &self.field;
        for b in &self.rows {
            if b.pivot >= limit {
                continue;
            }
            let c = row[b.pivot];
            if c == 0 {
                continue;
            }
            for &k in &b.support {
                row[k] = f.sub(row[k], f.mul(c, b.values[k]));
            }
        }
    }

    /// Reduces `row` in place against the basis.
    pub fn reduce(&self, row: &mut [u64]) {
        self.reduce_limited(row, usize::MAX);
    }

    /// True when `row` lies in the span of the basis.
    pub fn contains(&self, row: &[u64]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(|&x| x == 0)
    }

    /// Adds `row` to the basis if it is independent; returns whether it was.
    pub fn insert(&mut self, row: &[u64]) -> bool {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        let mut r = row.to_vec();
        self.reduce(&mut r);
        self.push_reduced(r, self.cols)
    }

    /// Pivot search restricted to columns `< limit`; used for kernel
    /// computations on augmented rows.
    fn push_reduced(&mut self, mut r: Vec<u64>, limit: usize) -> bool {
        let Some(pivot) = r[..limit.min(self.cols)].iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(r[pivot]);
        let mut support = Vec::new();
        for (k, x) in r.iter_mut().enumerate() {
            if *x != 0 {
                *x = self.field.mul(*x, inv);
                support.push(k);
            }
        }
        self.rows.push(BasisRow {
            pivot,
            values: r,
            support,
        });
        true
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldMatrix {
    #[serde(rename = "p")]
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of values already reduced modulo `p`.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row width mismatch");
            assert!(r.iter().all(|&x| x < field.modulus()), "entry out of range");
            data.extend_from_slice(r);
        }
        Self {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix from signed integers, reducing modulo `p`.
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, cols, &reduced)
    }

    /// Entries i.i.d. uniform over `F_p`.
    pub fn random<R: Rng + ?Sized>(field: Field, rng: &mut R, rows: usize, cols: usize) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        assert!(v < self.field.modulus(), "entry out of range");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// Matrix product. Panics on a shape or field mismatch.
    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                let src = other.row(k);
                for (d, &b) in dst.iter_mut().zip(src) {
                    if b != 0 {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Entrywise sum. Panics on a shape or field mismatch.
    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sum");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        assert_eq!(self.field, other.field, "field mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Horizontal concatenation of several blocks with equal row counts.
    pub fn hstack_all(field: Field, rows: usize, blocks: &[&FieldMatrix]) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(field, rows, 0);
        for b in blocks {
            out = out.hstack(b);
        }
        out
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch in vstack");
        assert_eq!(self.field, other.field, "field mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FieldMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Appends a row in place.
    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Submatrix of the given rows.
    pub fn select_rows(&self, idx: &[usize]) -> FieldMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        FieldMatrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Submatrix of the contiguous column range `start..end`.
    pub fn col_range(&self, start: usize, end: usize) -> FieldMatrix {
        assert!(start <= end && end <= self.cols, "column range out of bounds");
        let mut data = Vec::with_capacity(self.rows * (end - start));
        for r in 0..self.rows {
            data.extend_from_slice(&self.row(r)[start..end]);
        }
        FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols: end - start,
            data,
        }
    }

    /// Exact rank by elimination in row order.
    pub fn rank(&self) -> usize {
        let mut b = RowBasis::new(self.field, self.cols);
        for r in 0..self.rows {
            b.insert(self.row(r));
            if b.rank() == self.cols {
                break;
            }
        }
        b.rank()
    }

    /// Basis of `{l : l * self = 0}` as the rows of the result.
    pub fn left_kernel(&self) -> FieldMatrix {
        let f = self.field;
        let width = self.cols + self.rows;
        let mut basis = RowBasis::new(f, width);
        let mut kernel = FieldMatrix::zeros(f, 0, self.rows);
        for r in 0..self.rows {
            let mut aug = vec![0; width];
            aug[..self.cols].copy_from_slice(self.row(r));
            aug[self.cols + r] = 1;
            basis.reduce(&mut aug);
            if aug[..self.cols].iter().all(|&x| x == 0) {
                kernel.push_row(&aug[self.cols..]);
            } else {
                basis.push_reduced(aug, self.cols);
            }
        }
        kernel
    }

    /// Rows of the result span the vectors `l` with `l * b = 0`; the
    /// equations usable from `a` alone are the rows of `L * a`.
    pub fn left_kernel_against(a: &FieldMatrix, b: &FieldMatrix) -> FieldMatrix {
        assert_eq!(a.rows, b.rows, "row count mismatch");
        b.left_kernel()
    }

    /// `rank[desired | interference] - rank[interference]`.
    pub fn proj_rank_gain(desired: &FieldMatrix, interference: &FieldMatrix) -> usize {
        assert_eq!(desired.rows, interference.rows, "row count mismatch");
        interference.hstack(desired).rank() - interference.rank()
    }
}

/// Rank of the horizontal concatenation of blocks, without materializing it
/// when there is only one block.
pub fn rank_of_blocks(field: Field, rows: usize, blocks: &[&FieldMatrix]) -> usize {
    match blocks {
        [] => 0,
        [b] => b.rank(),
        _ => FieldMatrix::hstack_all(field, rows, blocks).rank(),
    }
}
