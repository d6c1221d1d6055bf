//! Dense arbitrary-precision matrices and the Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<BigInt> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols, "ragged rows");
        DenseMatrix { rows: r, cols, data }
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

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
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

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * f;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * f;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }
}

/// `S · A · T = D` with `D` diagonal, nonnegative, each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub s: DenseMatrix,
    pub d: DenseMatrix,
    pub t: DenseMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|v| !v.is_zero()).count()
    }
}

/// Working state of a Smith reduction. Row operations are mirrored on
/// `left` (an `S`-matrix or right-hand sides), column operations on `right`.
pub(crate) struct SmithReduction {
    pub a: DenseMatrix,
    pub left: Option<DenseMatrix>,
    pub right: Option<DenseMatrix>,
}

impl SmithReduction {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(l) = &mut self.left {
            l.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(r) = &mut self.right {
            r.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row(dst, src, f);
        if let Some(l) = &mut self.left {
            l.add_row(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col(dst, src, f);
        if let Some(r) = &mut self.right {
            r.add_col(dst, src, f);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(l) = &mut self.left {
            l.negate_row(i);
        }
    }

    fn smallest_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = self.a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < self.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Diagonalizes in place; returns the rank.
    pub fn run(&mut self) -> usize {
        let (rows, cols) = (self.a.rows, self.a.cols);
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.smallest_from(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if !self.a.get(i, t).is_zero() {
                        let q = self.a.get(i, t) / self.a.get(t, t);
                        self.add_row(i, t, &-q);
                        clean &= self.a.get(i, t).is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.a.get(t, j).is_zero() {
                        let q = self.a.get(t, j) / self.a.get(t, t);
                        self.add_col(j, t, &-q);
                        clean &= self.a.get(t, j).is_zero();
                    }
                }
                if !clean {
                    // a remainder smaller than the pivot is left in row or column t
                    let (mut bi, mut bj) = (t, t);
                    for i in t + 1..rows {
                        let v = self.a.get(i, t);
                        if !v.is_zero() && v.abs() < self.a.get(bi, bj).abs() {
                            (bi, bj) = (i, t);
                        }
                    }
                    for j in t + 1..cols {
                        let v = self.a.get(t, j);
                        if !v.is_zero() && v.abs() < self.a.get(bi, bj).abs() {
                            (bi, bj) = (t, j);
                        }
                    }
                    self.swap_rows(t, bi);
                    self.swap_cols(t, bj);
                    continue;
                }
                let p = self.a.get(t, t).clone();
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a.get(i, j).is_multiple_of(&p)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

pub fn smith_normal_form_dense(a: &DenseMatrix) -> SnfResult {
    let mut red = SmithReduction {
        a: a.clone(),
        left: Some(DenseMatrix::identity(a.rows)),
        right: Some(DenseMatrix::identity(a.cols)),
    };
    red.run();
    let result = SnfResult { s: red.left.unwrap(), d: red.a, t: red.right.unwrap() };
    debug_assert!(verify_snf(a, &result), "Smith normal form failed verification");
    result
}

/// Checks `S·A·T = D`, the diagonal shape and divisibility chain, and that
/// `S`, `T` are unimodular.
pub fn verify_snf(a: &DenseMatrix, snf: &SnfResult) -> bool {
    if snf.s.mul(a).mul(&snf.t) != snf.d || !snf.d.is_diagonal() {
        return false;
    }
    let diag = snf.diagonal();
    let chain = diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        }
    });
    let unit = |m: &DenseMatrix| m.determinant().abs().is_one();
    chain && diag.iter().all(|v| !v.is_negative()) && unit(&snf.s) && unit(&snf.t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> DenseMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(), cols)
    }

    #[test]
    fn small_forms() {
        let snf = smith_normal_form_dense(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        let z = smith_normal_form_dense(&DenseMatrix::zeros(2, 3));
        assert_eq!(z.s, DenseMatrix::identity(2));
        assert_eq!(z.t, DenseMatrix::identity(3));
        let id = smith_normal_form_dense(&DenseMatrix::identity(3));
        assert_eq!(id.d, DenseMatrix::identity(3));
    }

    #[test]
    fn divisibility_chain_needs_mixing() {
        // diag(2, 3) is not in normal form; the answer is diag(1, 6)
        let a = m(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form_dense(&a);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert!(verify_snf(&a, &snf));
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[2, 1], &[7, 4]]).determinant(), BigInt::from(1));
        assert_eq!(m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]).determinant(), BigInt::from(-5));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), BigInt::from(0));
    }
}
