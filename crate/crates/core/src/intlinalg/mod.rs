//! Exact linear algebra over ℤ, ℚ and ℤ/p.
//!
//! Large matrices go through sparse unit-pivot elimination first; whatever
//! is left is handed to the dense Smith reduction or row reduction.

mod dense;
mod field;
mod sparse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use dense::{verify_snf, DenseMatrix, SnfResult};
pub use field::{row_reduce, Field, RowEchelon};

use crate::error::{Error, Result};
use dense::SmithReduction;
use sparse::{eliminate, Ring};

/// Sparse integer matrix; entries sorted by (row, column), no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: Vec::new() }
    }

    /// Duplicate positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, mut entries: Vec<(usize, usize, i64)>) -> Self {
        entries.sort_unstable_by_key(|e| (e.0, e.1));
        let mut merged: Vec<(usize, usize, i64)> = Vec::with_capacity(entries.len());
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "entry ({i}, {j}) outside {rows}x{cols}");
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (i, j) => last.2 += v,
                _ => merged.push((i, j, v)),
            }
        }
        merged.retain(|e| e.2 != 0);
        IntMatrix { rows, cols, entries: merged }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::ShapeError(format!("row {bad} has {} entries, expected {cols}", rows[bad].len())));
        }
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|e| *e.1 != 0).map(move |(j, &v)| (i, j, v)))
            .collect();
        Ok(IntMatrix { rows: rows.len(), cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries
            .binary_search_by_key(&(i, j), |e| (e.0, e.1))
            .map_or(0, |k| self.entries[k].2)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for &(i, j, v) in &self.entries {
            m.set(i, j, BigInt::from(v));
        }
        m
    }

    /// `self · other`, with checked arithmetic.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeError(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for &(i, j, v) in &other.entries {
            by_row[i].push((j, v));
        }
        let mut out = Vec::new();
        for &(i, k, a) in &self.entries {
            for &(j, b) in &by_row[k] {
                let p = a.checked_mul(b).ok_or_else(|| Error::ShapeError("entry overflow".into()))?;
                out.push((i, j, p));
            }
        }
        Ok(IntMatrix::from_triplets(self.rows, other.cols, out))
    }

    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.cols {
            return Err(Error::ShapeError(format!("vector of length {} for {} columns", x.len(), self.cols)));
        }
        let mut y = vec![0i64; self.rows];
        for &(i, j, v) in &self.entries {
            y[i] += v * x[j];
        }
        Ok(y)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    dense::smith_normal_form_dense(&a.to_dense())
}

/// Smallest `n ≥ 1` with `A x = n y` solvable over ℤ, and a witness `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinMultiple {
    pub n: BigInt,
    pub witness: Vec<BigInt>,
}

pub fn solve_min_multiple(a: &IntMatrix, y: &[i64]) -> Result<Option<MinMultiple>> {
    if y.len() != a.rows() {
        return Err(Error::ShapeError(format!("right-hand side has length {}, matrix has {} rows", y.len(), a.rows())));
    }
    let snf = smith_normal_form(a);
    let y: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
    let yp = snf.s.mul_vec(&y);
    let diag = snf.diagonal();
    let rank = snf.rank();
    if yp[rank..].iter().any(|v| !v.is_zero()) {
        return Ok(None);
    }
    let mut n = BigInt::one();
    for (d, v) in diag.iter().zip(&yp).take(rank) {
        n = n.lcm(&(d / d.gcd(v)));
    }
    let mut z = vec![BigInt::zero(); a.cols()];
    for i in 0..rank {
        z[i] = &n * &yp[i] / &diag[i];
    }
    let witness = snf.t.mul_vec(&z);
    Ok(Some(MinMultiple { n, witness }))
}

/// Rank and nontrivial invariant factors of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerInvariants {
    pub rank: usize,
    /// Invariant factors greater than one, ascending (each divides the next).
    pub torsion: Vec<BigInt>,
}

fn remainder_block(rows: &[(usize, Vec<(usize, i64)>)]) -> (DenseMatrix, Vec<Vec<(usize, i64)>>, usize) {
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.1.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let compact: Vec<Vec<(usize, i64)>> = rows
        .iter()
        .map(|(_, r)| r.iter().map(|&(c, v)| (cols.binary_search(&c).expect("collected column"), v)).collect())
        .collect();
    let mut m = DenseMatrix::zeros(rows.len(), cols.len());
    for (i, r) in compact.iter().enumerate() {
        for &(c, v) in r {
            m.set(i, c, BigInt::from(v));
        }
    }
    (m, compact, cols.len())
}

pub fn integer_invariants(a: &IntMatrix) -> IntegerInvariants {
    let elim = eliminate(a, Ring::Integers, None);
    if elim.remainder.is_empty() {
        return IntegerInvariants { rank: elim.pivots, torsion: Vec::new() };
    }
    let (block, _, _) = remainder_block(&elim.remainder);
    let mut red = SmithReduction { a: block, left: None, right: None };
    let r = red.run();
    let torsion = (0..r).map(|i| red.a.get(i, i).clone()).filter(|d| !d.is_one()).collect();
    IntegerInvariants { rank: elim.pivots + r, torsion }
}

pub fn rank_over(a: &IntMatrix, field: Field) -> usize {
    match field {
        Field::Prime(p) => {
            let elim = eliminate(a, Ring::Mod(p), None);
            debug_assert!(elim.remainder.is_empty());
            elim.pivots
        }
        Field::Rationals => {
            let elim = eliminate(a, Ring::Integers, None);
            if elim.remainder.is_empty() {
                return elim.pivots;
            }
            let (_, compact, cols) = remainder_block(&elim.remainder);
            elim.pivots + field::rational_rank(&compact, cols)
        }
    }
}

/// How a cycle `y` sits in `coker A`: its order and how far it divides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassAnalysis {
    /// Smallest `n ≥ 1` with `n y ∈ im A`; `None` if the class has infinite order.
    pub order: Option<BigInt>,
    /// Largest `m` with `[y] = m [z]`. For a class of infinite order this is
    /// bounded by its free coordinates; for a torsion class only divisors of
    /// the exponent of the torsion are considered. `None` when `[y] = 0`.
    pub divisibility: Option<BigInt>,
}

fn divisors_descending(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.into_iter().chain(small.into_iter().rev()).collect()
}

pub fn analyze_class(a: &IntMatrix, y: &[i64]) -> Result<ClassAnalysis> {
    if y.len() != a.rows() {
        return Err(Error::ShapeError(format!("right-hand side has length {}, matrix has {} rows", y.len(), a.rows())));
    }
    let elim = eliminate(a, Ring::Integers, Some(y));
    let rhs = elim.rhs.expect("rhs was tracked");
    let mut free_gcd = BigInt::zero();
    for &r in &elim.zero_rows {
        free_gcd = free_gcd.gcd(&BigInt::from(rhs[r]));
    }
    // (d_i, y_i) pairs with d_i > 0
    let mut factors: Vec<(BigInt, BigInt)> = Vec::new();
    if !elim.remainder.is_empty() {
        let (block, _, _) = remainder_block(&elim.remainder);
        let column = elim.remainder.iter().map(|(r, _)| vec![BigInt::from(rhs[*r])]).collect();
        let mut red = SmithReduction {
            a: block,
            left: Some(DenseMatrix::from_rows(column, 1)),
            right: None,
        };
        let rank = red.run();
        let yy = red.left.expect("tracked");
        for i in 0..yy.rows() {
            if i < rank {
                factors.push((red.a.get(i, i).clone(), yy.get(i, 0).clone()));
            } else {
                free_gcd = free_gcd.gcd(yy.get(i, 0));
            }
        }
    }
    let divides = |m: &BigInt| factors.iter().all(|(d, v)| v.is_multiple_of(&m.gcd(d)));
    if !free_gcd.is_zero() {
        let m = divisors_descending(&free_gcd).into_iter().find(|m| divides(m)).unwrap_or_else(BigInt::one);
        return Ok(ClassAnalysis { order: None, divisibility: Some(m) });
    }
    let order = factors.iter().fold(BigInt::one(), |acc, (d, v)| acc.lcm(&(d / d.gcd(v))));
    if order.is_one() {
        return Ok(ClassAnalysis { order: Some(order), divisibility: None });
    }
    let exponent = factors.iter().fold(BigInt::one(), |acc, (d, _)| acc.lcm(d));
    let m = divisors_descending(&exponent).into_iter().find(|m| divides(m)).unwrap_or_else(BigInt::one);
    Ok(ClassAnalysis { order: Some(order), divisibility: Some(m) })
}
