//! Row reduction over ℚ and ℤ/p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// ℤ/p; the modulus is the only thing that changes between characteristics.
    Prime(u64),
}

trait Scalar: Clone + PartialEq {
    fn from_int(v: i64, field: Field) -> Self;
    fn is_zero(&self) -> bool;
    fn sub_mul(&self, f: &Self, x: &Self, field: Field) -> Self;
    fn mul(&self, other: &Self, field: Field) -> Self;
    fn inverse(&self, field: Field) -> Self;
    fn to_rational(&self) -> BigRational;
}

impl Scalar for BigRational {
    fn from_int(v: i64, _: Field) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub_mul(&self, f: &Self, x: &Self, _: Field) -> Self {
        self - f * x
    }
    fn mul(&self, other: &Self, _: Field) -> Self {
        self * other
    }
    fn inverse(&self, _: Field) -> Self {
        self.recip()
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

fn modulus(field: Field) -> u64 {
    match field {
        Field::Prime(p) => p,
        Field::Rationals => unreachable!("modular scalar over the rationals"),
    }
}

impl Scalar for u64 {
    fn from_int(v: i64, field: Field) -> Self {
        v.rem_euclid(modulus(field) as i64) as u64
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn sub_mul(&self, f: &Self, x: &Self, field: Field) -> Self {
        let p = modulus(field) as u128;
        let prod = (*f as u128 * *x as u128) % p;
        ((*self as u128 + p - prod) % p) as u64
    }
    fn mul(&self, other: &Self, field: Field) -> Self {
        ((*self as u128 * *other as u128) % modulus(field) as u128) as u64
    }
    fn inverse(&self, field: Field) -> Self {
        let p = modulus(field);
        let (mut acc, mut b, mut e) = (1u128, *self as u128, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        acc as u64
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<S: Scalar>(m: &mut [Vec<S>], cols: usize, field: Field) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].inverse(field);
        for v in m[r].iter_mut() {
            *v = v.mul(&inv, field);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = v.sub_mul(&f, p, field);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

fn dense_rows<S: Scalar>(a: &IntMatrix, extra: Option<&[i64]>, field: Field) -> Vec<Vec<S>> {
    let width = a.cols() + usize::from(extra.is_some());
    let mut m = vec![vec![S::from_int(0, field); width]; a.rows()];
    for &(i, j, v) in a.entries() {
        m[i][j] = S::from_int(v, field);
    }
    if let Some(b) = extra {
        for (i, &v) in b.iter().enumerate() {
            m[i][a.cols()] = S::from_int(v, field);
        }
    }
    m
}

/// Row-reduced form of an integer matrix read in a field.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    field: Field,
    matrix: IntMatrix,
    pivots: Vec<usize>,
    /// Entries of the reduced matrix; over ℤ/p these are the representatives `0..p`.
    reduced: Vec<Vec<BigRational>>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduced(&self) -> &[Vec<BigRational>] {
        &self.reduced
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Some `x` with `A x = b`, or `None` if `b` is not in the column span.
    pub fn solve(&self, b: &[i64]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.matrix.rows(), "right-hand side length");
        let cols = self.matrix.cols();
        let (pivots, rows) = match self.field {
            Field::Rationals => {
                let mut m = dense_rows::<BigRational>(&self.matrix, Some(b), self.field);
                let p = rref(&mut m, cols + 1, self.field);
                (p, m)
            }
            Field::Prime(_) => {
                let mut m = dense_rows::<u64>(&self.matrix, Some(b), self.field);
                let p = rref(&mut m, cols + 1, self.field);
                (p, m.into_iter().map(|r| r.iter().map(Scalar::to_rational).collect()).collect())
            }
        };
        if pivots.last() == Some(&cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rows[r][cols].clone();
        }
        Some(x)
    }
}

pub fn row_reduce(a: &IntMatrix, field: Field) -> RowEchelon {
    let (pivots, reduced) = match field {
        Field::Rationals => {
            let mut m = dense_rows::<BigRational>(a, None, field);
            let p = rref(&mut m, a.cols(), field);
            (p, m)
        }
        Field::Prime(_) => {
            let mut m = dense_rows::<u64>(a, None, field);
            let p = rref(&mut m, a.cols(), field);
            (p, m.into_iter().map(|r| r.iter().map(Scalar::to_rational).collect()).collect())
        }
    };
    RowEchelon { field, matrix: a.clone(), pivots, reduced }
}

/// Rank over ℚ of a small dense block given as sparse rows.
pub(crate) fn rational_rank(rows: &[Vec<(usize, i64)>], cols: usize) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut dense = vec![BigRational::zero(); cols];
            for &(c, v) in r {
                dense[c] = BigRational::from_integer(BigInt::from(v));
            }
            dense
        })
        .collect();
    rref(&mut m, cols, Field::Rationals).len()
}
