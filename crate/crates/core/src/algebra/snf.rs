//! Smith normal form over the integers.
//!
//! [`smith_normal_form`] works on dense arbitrary-precision matrices and
//! returns the unimodular transforms. [`invariant_factors`] is the fast path
//! used for homology: it eliminates unit pivots on a sparse `i64` copy and
//! finishes the (usually tiny) remainder densely, falling back to the dense
//! big-integer routine if anything overflows.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * prev
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

/// Result of [`smith_normal_form`]: `left · M · right = diag(diagonal)`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors `d₁ | d₂ | …`, all positive.
    pub diagonal: Vec<BigInt>,
    pub left: Matrix,
    pub right: Matrix,
    /// The diagonal matrix itself (same shape as the input).
    pub normal: Matrix,
}

pub fn smith_normal_form(m: &Matrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = Matrix::identity(r);
    let mut right = Matrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col(j, t, &q);
                right.add_col(j, t, &q);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remainder of row/column t into the pivot
                let mut best = (t, t);
                for i in t + 1..r {
                    let x = a.get(i, t);
                    if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    let x = a.get(t, j);
                    if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                left.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                right.swap_cols(t, best.1);
                continue;
            }
            // divisibility of the trailing block
            let p = a.get(t, t).clone();
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    a.add_row(t, i, &BigInt::one());
                    left.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..t).map(|i| a.get(i, i).clone()).collect();
    SmithForm {
        diagonal,
        left,
        right,
        normal: a,
    }
}

/// Sparse integer matrix used by the homology fast path.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<(usize, usize), i64>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, j: usize, x: i64) {
        let e = self.entries.entry((i, j)).or_insert(0);
        *e += x;
        if *e == 0 {
            self.entries.remove(&(i, j));
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (&(i, j), &x) in &self.entries {
            m.set(i, j, BigInt::from(x));
        }
        m
    }
}

/// Nonzero invariant factors (sorted, each dividing the next).
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    match eliminate_units(m) {
        Some((units, rest)) => {
            let mut out = vec![BigInt::one(); units];
            if !rest.is_zero() {
                out.extend(smith_normal_form(&rest).diagonal);
            }
            out
        }
        None => smith_normal_form(&m.to_dense()).diagonal,
    }
}

/// Removes unit pivots. Returns the number removed and the dense remainder,
/// or `None` on `i64` overflow.
fn eliminate_units(m: &SparseMatrix) -> Option<(usize, Matrix)> {
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); m.rows];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (&(i, j), &x) in &m.entries {
        rows[i].insert(j, x);
        cols[j].insert(i);
    }
    let mut alive_row = vec![true; m.rows];
    let mut alive_col = vec![true; m.cols];
    let mut units = 0;
    loop {
        let mut progress = false;
        for r in 0..m.rows {
            if !alive_row[r] {
                continue;
            }
            let pivot = rows[r]
                .iter()
                .filter(|(_, &x)| x == 1 || x == -1)
                .min_by_key(|(&j, _)| cols[j].len())
                .map(|(&j, &x)| (j, x));
            let Some((c, p)) = pivot else {
                continue;
            };
            let pivot_row = rows[r].clone();
            let others: Vec<usize> = cols[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let f = rows[i][&c].checked_mul(p)?;
                for (&j, &x) in &pivot_row {
                    let cur = rows[i].get(&j).copied().unwrap_or(0);
                    let v = cur.checked_sub(f.checked_mul(x)?)?;
                    if v == 0 {
                        rows[i].remove(&j);
                        cols[j].remove(&i);
                    } else {
                        rows[i].insert(j, v);
                        cols[j].insert(i);
                    }
                }
            }
            for &j in pivot_row.keys() {
                cols[j].remove(&r);
            }
            rows[r].clear();
            alive_row[r] = false;
            alive_col[c] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows)
        .filter(|&r| alive_row[r] && !rows[r].is_empty())
        .collect();
    let live_cols: Vec<usize> = (0..m.cols)
        .filter(|&c| alive_col[c] && !cols[c].is_empty())
        .collect();
    let col_pos: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut rest = Matrix::zeros(live_rows.len(), live_cols.len());
    for (k, &r) in live_rows.iter().enumerate() {
        for (&j, &x) in &rows[r] {
            rest.set(k, col_pos[&j], BigInt::from(x));
        }
    }
    Some((units, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn two_by_two() {
        // rows (2,4),(6,8): gcd of entries 2, |det| = 8, so diag(2, 4)
        let m = Matrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(m.determinant(), BigInt::from(-8));
        let s = smith_normal_form(&m);
        assert_eq!(ints(&s.diagonal), vec![2, 4]);
        assert_eq!(s.left.mul(&m).mul(&s.right), s.normal);
        assert_eq!(s.left.determinant().abs(), BigInt::one());
        assert_eq!(s.right.determinant().abs(), BigInt::one());
    }

    #[test]
    fn zero_and_rectangular() {
        let z = Matrix::zeros(1, 2);
        assert!(smith_normal_form(&z).diagonal.is_empty());
        let m = Matrix::from_rows(&[vec![0, 3, 0], vec![2, 0, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(ints(&s.diagonal), vec![1, 6]);
        assert_eq!(s.left.mul(&m).mul(&s.right), s.normal);
    }

    #[test]
    fn sparse_path_matches_dense() {
        let mut sp = SparseMatrix::new(3, 3);
        for (i, j, x) in [(0, 0, 1), (0, 1, 2), (1, 1, 4), (2, 2, 6), (2, 0, 3)] {
            sp.add(i, j, x);
        }
        let fast = invariant_factors(&sp);
        let dense = smith_normal_form(&sp.to_dense()).diagonal;
        assert_eq!(fast, dense);
    }
}
