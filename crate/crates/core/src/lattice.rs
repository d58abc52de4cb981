//! Integer lattices: Smith normal form, saturation, cokernels and the
//! exact sequence `1 → G → (C*)^n → F → 1` together with its Gale dual.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, rat_int, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::InvalidSequence(format!(
                    "row {i} has length {} instead of {cols}",
                    r.len()
                )));
            }
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        Ok(m)
    }

    /// Builds an `n × columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<i64>]) -> Result<Self> {
        Ok(Self::from_rows(n, columns)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut p = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        p[(i, j)] += a * b;
                    }
                }
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Keeps the rows in `range`.
    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> IntMatrix {
        let rows: Vec<usize> = rows.into_iter().collect();
        let mut m = Self::zero(rows.len(), self.cols);
        for (a, &r) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m[(a, j)] = self[(r, j)].clone();
            }
        }
        m
    }

    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        self.transpose().select_rows(cols.iter().copied()).transpose()
    }

    pub fn to_rational_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).iter().map(rat_int).collect()).collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| i64::try_from(x).expect("entry exceeds i64"))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.to_rational_rows())
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f · row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += f · col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `u · m · v = s` with `u`, `v` unimodular and `s` diagonal, `s_ii | s_{i+1,i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with deterministic pivoting: at each stage the pivot is
/// the nonzero entry of least absolute value in the trailing block, first in
/// row-major order on ties.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row(i, t, &-&q);
                u.add_row(i, t, &-&q);
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col(j, t, &-&q);
                v.add_col(j, t, &-&q);
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived: move it to (t, t)
                let (pi, pj) = min_abs_in_cross(&s, t);
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&s[(t, t)]));
            match bad {
                Some((i, _)) => {
                    s.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

fn min_abs_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_abs_in_cross(s: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let cand = (t..s.rows).map(|i| (i, t)).chain((t + 1..s.cols).map(|j| (t, j)));
    for (i, j) in cand {
        let x = &s[(i, j)];
        if !x.is_zero() && (s[best].is_zero() || x.abs() < s[best].abs()) {
            best = (i, j);
        }
    }
    best
}

/// Whether the column span of `m` is a saturated sublattice (torsion-free cokernel).
pub fn is_saturated(m: &IntMatrix) -> Result<bool> {
    let snf = smith_normal_form(m);
    let d = snf.invariant_factors();
    if d.len() < m.cols {
        return Err(Error::RankDeficient);
    }
    Ok(d.iter().all(One::is_one))
}

/// Row-style Hermite normal form of a full-row-rank matrix: echelon form with
/// positive pivots and entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let Some(p) = (r..h.rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()).then(a.cmp(&b)))
            else {
                break;
            };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..h.rows {
                if !h[(i, c)].is_zero() {
                    let q = h[(i, c)].div_floor(&h[(r, c)]);
                    h.add_row(i, r, &-q);
                    if !h[(i, c)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                h.add_row(i, r, &-q);
            }
        }
        r += 1;
    }
    h.select_rows(0..r)
}

/// A projection `P` ((n−k) × n) presenting `Z^n / im(inclusion)`: `P · inclusion = 0`
/// and `P` maps onto `Z^{n−k}`. The rows are the Hermite normal form of the
/// left-kernel lattice, so the result does not depend on the pivoting order.
pub fn cokernel_projection(inclusion: &IntMatrix) -> Result<IntMatrix> {
    if !is_saturated(inclusion)? {
        return Err(Error::NotSaturated);
    }
    let n = inclusion.rows;
    let k = inclusion.cols;
    let snf = smith_normal_form(inclusion);
    let kernel = snf.u.select_rows(k..n);
    Ok(hermite_normal_form(&kernel))
}

/// A particular rational solution of `m · x = target`, obtained from the Smith
/// form with all free coordinates set to zero.
pub fn solve_lift(m: &IntMatrix, target: &[Rat]) -> Result<Vec<Rat>> {
    if target.len() != m.rows {
        return Err(Error::InvalidParameter(format!(
            "target has length {} but matrix has {} rows",
            target.len(),
            m.rows
        )));
    }
    let snf = smith_normal_form(m);
    let ut = linalg::mat_vec(&snf.u.to_rational_rows(), target);
    let d = snf.invariant_factors();
    if ut[d.len()..].iter().any(|x| !x.is_zero()) {
        return Err(Error::NoSolution);
    }
    let mut z = vec![Rat::zero(); m.cols];
    for (i, di) in d.iter().enumerate() {
        z[i] = &ut[i] / rat_int(di);
    }
    Ok(linalg::mat_vec(&snf.v.to_rational_rows(), &z))
}

/// The exact sequence `0 → Z^k → Z^n → Z^{n−k} → 0` given by the inclusion of
/// the cocharacter lattice of `G` and the projection onto that of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToriSequence {
    inclusion: IntMatrix,
    projection: IntMatrix,
}

impl ToriSequence {
    /// Builds the sequence from the inclusion alone, computing the canonical projection.
    pub fn from_inclusion(inclusion: IntMatrix) -> Result<Self> {
        let projection = cokernel_projection(&inclusion)?;
        Ok(ToriSequence { inclusion, projection })
    }

    /// Builds the sequence from explicit columns of the inclusion (each of length `n`).
    pub fn from_columns(n: usize, columns: &[Vec<i64>]) -> Result<Self> {
        Self::from_inclusion(IntMatrix::from_columns(n, columns)?)
    }

    /// Checks every invariant of an explicitly supplied pair.
    pub fn from_parts(inclusion: IntMatrix, projection: IntMatrix) -> Result<Self> {
        let n = inclusion.rows;
        let k = inclusion.cols;
        if projection.cols != n || projection.rows + k != n {
            return Err(Error::InvalidSequence(format!(
                "projection is {}×{}, expected {}×{n}",
                projection.rows,
                projection.cols,
                n - k.min(n)
            )));
        }
        if !is_saturated(&inclusion)? {
            return Err(Error::NotSaturated);
        }
        if !projection.mul(&inclusion).is_zero() {
            return Err(Error::InvalidSequence("projection ∘ inclusion ≠ 0".into()));
        }
        if projection.rank() != n - k {
            return Err(Error::InvalidSequence("projection is not of full row rank".into()));
        }
        if !is_saturated(&projection.transpose())? {
            return Err(Error::InvalidSequence("projection is not surjective over Z".into()));
        }
        Ok(ToriSequence { inclusion, projection })
    }

    /// Ambient rank `n`.
    pub fn n(&self) -> usize {
        self.inclusion.rows
    }

    /// Rank `k` of `G`.
    pub fn g_rank(&self) -> usize {
        self.inclusion.cols
    }

    /// Rank `n − k` of `F`.
    pub fn f_rank(&self) -> usize {
        self.projection.rows
    }

    pub fn inclusion(&self) -> &IntMatrix {
        &self.inclusion
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    /// Columns of the inclusion in column-Hermite form and projection in row-Hermite
    /// form; two sequences present the same sublattice iff their canonical forms agree.
    pub fn canonical(&self) -> ToriSequence {
        let inclusion = if self.g_rank() == 0 {
            self.inclusion.clone()
        } else {
            hermite_normal_form(&self.inclusion.transpose()).transpose()
        };
        let projection = if self.f_rank() == 0 {
            self.projection.clone()
        } else {
            hermite_normal_form(&self.projection)
        };
        ToriSequence { inclusion, projection }
    }

    /// Exponent vector of the image of the `i`-th coordinate cocharacter in `Z^{n−k}`.
    pub fn monodromy_exponent(&self, i: usize) -> Vec<i64> {
        self.projection
            .col(i)
            .iter()
            .map(|x| i64::try_from(x).expect("exponent exceeds i64"))
            .collect()
    }
}

/// The dual sequence `0 → Z^{n−k} → Z^n → Z^k → 0` with inclusion `Pᵀ` and projection `Iᵀ`.
pub fn gale_dual_sequence(seq: &ToriSequence) -> Result<ToriSequence> {
    ToriSequence::from_parts(seq.projection.transpose(), seq.inclusion.transpose())
}

/// Every maximal minor of the projection lies in `{0, ±1}` (after dividing by their gcd).
pub fn is_unimodular(seq: &ToriSequence) -> bool {
    let p = &seq.projection;
    let d = p.rows;
    let minors: Vec<BigInt> = subsets(p.cols, d).map(|s| p.select_cols(&s).determinant()).collect();
    let g = minors.iter().fold(BigInt::zero(), |g, m| g.gcd(m));
    if g.is_zero() {
        return false;
    }
    minors.iter().all(|m| (m / &g).abs() <= BigInt::one())
}

/// All `size`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if size <= n { Some((0..size).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        // advance
        let mut next = out.clone();
        let mut i = size;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - size + i {
                next[i] += 1;
                for j in i + 1..size {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Stability parameter `t` (in the dual basis of the inclusion's columns) and a
/// rational lift `m̂ ∈ Q^n` of the polarization `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub t: Vec<BigInt>,
    pub m_lift: Vec<Rat>,
}

impl Params {
    pub fn from_ints(t: &[i64], m_lift: &[i64]) -> Self {
        Params {
            t: t.iter().map(|&x| BigInt::from(x)).collect(),
            m_lift: m_lift.iter().map(|&x| linalg::rat(x)).collect(),
        }
    }

    pub fn t_rational(&self) -> Vec<Rat> {
        self.t.iter().map(rat_int).collect()
    }

    pub fn check_lengths(&self, seq: &ToriSequence) -> Result<()> {
        if self.t.len() != seq.g_rank() {
            return Err(Error::InvalidParameter(format!(
                "t has length {} but G has rank {}",
                self.t.len(),
                seq.g_rank()
            )));
        }
        if self.m_lift.len() != seq.n() {
            return Err(Error::InvalidParameter(format!(
                "m lift has length {} but n = {}",
                self.m_lift.len(),
                seq.n()
            )));
        }
        Ok(())
    }
}
