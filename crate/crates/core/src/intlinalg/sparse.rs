//! Sparse elimination on unit pivots.
//!
//! Pivoting on a ±1 entry and clearing its column is a unimodular row
//! operation followed by deleting the pivot row and column, so the Smith
//! invariants of what is left, together with one `1` per pivot, are those
//! of the original matrix. Cube differentials are mostly ±1 entries and
//! collapse to a small (often empty) remainder this way.

use std::collections::BTreeSet;

use super::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Ring {
    Integers,
    /// Every nonzero entry is a pivot; values kept in `0..p`.
    Mod(u64),
}

pub(crate) struct Elimination {
    pub pivots: usize,
    /// Rows that still carry entries, by original row index.
    pub remainder: Vec<(usize, Vec<(usize, i64)>)>,
    /// Rows that became (or started) empty without being pivots.
    pub zero_rows: Vec<usize>,
    /// The right-hand side after the same row operations.
    pub rhs: Option<Vec<i64>>,
}

struct State {
    ring: Ring,
    rows: Vec<Vec<(usize, i64)>>,
    cols: Vec<BTreeSet<usize>>,
    eliminated: Vec<bool>,
    candidates: BTreeSet<(usize, usize)>,
    rhs: Option<Vec<i64>>,
}

impl State {
    fn is_unit(&self, v: i64) -> bool {
        match self.ring {
            Ring::Integers => v == 1 || v == -1,
            Ring::Mod(_) => v != 0,
        }
    }

    fn has_unit(&self, row: usize) -> bool {
        self.rows[row].iter().any(|&(_, v)| self.is_unit(v))
    }

    fn inverse(&self, v: i64) -> i64 {
        match self.ring {
            Ring::Integers => v,
            Ring::Mod(p) => mod_pow(v as u64, p - 2, p) as i64,
        }
    }

    /// `row - f * pivot_row`, or `None` on overflow.
    fn combine(&self, row: &[(usize, i64)], f: i64, pivot: &[(usize, i64)]) -> Option<Vec<(usize, i64)>> {
        let mut out = Vec::with_capacity(row.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < pivot.len() {
            let ci = row.get(i).map_or(usize::MAX, |e| e.0);
            let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
            let (col, v) = if ci < cj {
                i += 1;
                (ci, row[i - 1].1)
            } else {
                let prod = self.mul(f, pivot[j].1)?;
                let v = if ci == cj {
                    i += 1;
                    self.sub(row[i - 1].1, prod)?
                } else {
                    self.sub(0, prod)?
                };
                j += 1;
                (cj, v)
            };
            if v != 0 {
                out.push((col, v));
            }
        }
        Some(out)
    }

    fn mul(&self, a: i64, b: i64) -> Option<i64> {
        match self.ring {
            Ring::Integers => a.checked_mul(b),
            Ring::Mod(p) => Some(((a as u128 * b as u128) % p as u128) as i64),
        }
    }

    fn sub(&self, a: i64, b: i64) -> Option<i64> {
        match self.ring {
            Ring::Integers => a.checked_sub(b),
            Ring::Mod(p) => Some(((a + p as i64 - b) as u64 % p) as i64),
        }
    }

    fn pick_pivot(&self) -> Option<(usize, usize, i64)> {
        let &(_, row) = self.candidates.first()?;
        self.rows[row]
            .iter()
            .filter(|&&(_, v)| self.is_unit(v))
            .min_by_key(|&&(c, _)| (self.cols[c].len(), c))
            .map(|&(c, v)| (row, c, v))
    }

    /// Returns false if an operation would overflow; the state is then left
    /// exactly as before the call.
    fn pivot(&mut self, p: usize, col: usize, u: i64) -> bool {
        let pivot_row = std::mem::take(&mut self.rows[p]);
        let inv = self.inverse(u);
        let others: Vec<usize> = self.cols[col].iter().copied().filter(|&r| r != p).collect();
        let mut updates = Vec::with_capacity(others.len());
        for &r in &others {
            let a = self.rows[r].iter().find(|e| e.0 == col).expect("column index is in sync").1;
            let Some(f) = self.mul(a, inv) else { return self.restore(p, pivot_row) };
            let Some(new_row) = self.combine(&self.rows[r], f, &pivot_row) else { return self.restore(p, pivot_row) };
            let new_rhs = match &self.rhs {
                Some(y) => match self.mul(f, y[p]).and_then(|fy| self.sub(y[r], fy)) {
                    Some(v) => Some(v),
                    None => return self.restore(p, pivot_row),
                },
                None => None,
            };
            updates.push((r, new_row, new_rhs));
        }
        for &(c, _) in &pivot_row {
            self.cols[c].remove(&p);
        }
        self.candidates.remove(&(pivot_row.len(), p));
        self.eliminated[p] = true;
        for (r, new_row, new_rhs) in updates {
            let old = std::mem::replace(&mut self.rows[r], new_row);
            self.candidates.remove(&(old.len(), r));
            for &(c, _) in &old {
                self.cols[c].remove(&r);
            }
            for &(c, _) in &self.rows[r] {
                self.cols[c].insert(r);
            }
            if self.has_unit(r) {
                self.candidates.insert((self.rows[r].len(), r));
            }
            if let (Some(y), Some(v)) = (&mut self.rhs, new_rhs) {
                y[r] = v;
            }
        }
        true
    }

    fn restore(&mut self, p: usize, pivot_row: Vec<(usize, i64)>) -> bool {
        self.rows[p] = pivot_row;
        false
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub(crate) fn eliminate(a: &IntMatrix, ring: Ring, rhs: Option<&[i64]>) -> Elimination {
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); a.rows()];
    let reduce = |v: i64| match ring {
        Ring::Integers => v,
        Ring::Mod(p) => v.rem_euclid(p as i64),
    };
    for &(i, j, v) in a.entries() {
        let v = reduce(v);
        if v != 0 {
            rows[i].push((j, v));
        }
    }
    let mut cols = vec![BTreeSet::new(); a.cols()];
    for (i, row) in rows.iter().enumerate() {
        for &(j, _) in row {
            cols[j].insert(i);
        }
    }
    let mut state = State {
        ring,
        rows,
        cols,
        eliminated: vec![false; a.rows()],
        candidates: BTreeSet::new(),
        rhs: rhs.map(|y| y.iter().map(|&v| reduce(v)).collect()),
    };
    for r in 0..a.rows() {
        if state.has_unit(r) {
            state.candidates.insert((state.rows[r].len(), r));
        }
    }
    let mut pivots = 0;
    while let Some((p, col, u)) = state.pick_pivot() {
        if !state.pivot(p, col, u) {
            break;
        }
        pivots += 1;
    }
    let mut remainder = Vec::new();
    let mut zero_rows = Vec::new();
    for (r, row) in state.rows.into_iter().enumerate() {
        if state.eliminated[r] {
            continue;
        }
        if row.is_empty() {
            zero_rows.push(r);
        } else {
            remainder.push((r, row));
        }
    }
    Elimination { pivots, remainder, zero_rows, rhs: state.rhs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_pivots_clear_identity_like_matrices() {
        let a = IntMatrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let e = eliminate(&a, Ring::Integers, None);
        // determinant is 2: two unit pivots and a 1x1 remainder of ±2
        assert_eq!(e.pivots, 2);
        assert_eq!(e.remainder.len(), 1);
        assert_eq!(e.remainder[0].1.len(), 1);
        assert_eq!(e.remainder[0].1[0].1.abs(), 2);
        let e2 = eliminate(&a, Ring::Mod(2), None);
        assert_eq!(e2.pivots, 2);
        assert!(e2.remainder.is_empty());
        assert_eq!(e2.zero_rows.len(), 1);
    }

    #[test]
    fn rhs_follows_row_operations() {
        let a = IntMatrix::from_rows(vec![vec![1], vec![1]]).unwrap();
        let e = eliminate(&a, Ring::Integers, Some(&[3, 5]));
        assert_eq!(e.pivots, 1);
        let y = e.rhs.unwrap();
        assert_eq!(y[e.zero_rows[0]].abs(), 2);
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_pow(3, 5, 7) * 3 % 7, 1);
    }
}
