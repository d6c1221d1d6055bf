//! The cube of resolutions with a sign on every edge making each face
//! anticommute.
//!
//! Signs are assigned recursively on the last crossing: the bottom half
//! (last crossing 0-smoothed) is signed recursively, the edges along the
//! last crossing get +1, and an edge `e₁` of the top half gets
//! `-sign(e₀) · t(S)`, where `e₀` is the edge below it and `t(S)` is +1 for
//! squares of type C/Y and -1 for A/X. Unwinding the recursion, the sign of
//! `(α, c)` is a product over the set bits of `α` above `c`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Range;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::planar::{self, EdgeAction, SquareType};

/// Above this many crossings the full sign table is not materialized.
const FULL_TABLE_LIMIT: usize = 24;

#[derive(Debug)]
enum SignTable {
    /// Indexed by `vertex * n + crossing`; 0 marks a non-edge.
    Dense(Vec<i8>),
    Sparse(HashMap<u64, Vec<i8>>),
}

#[derive(Debug)]
pub struct SignedCube {
    braid: BraidWord,
    /// Edges are stored for source vertices with `|α|` in this range.
    source_heights: Range<u32>,
    signs: SignTable,
    squares: Mutex<HashMap<(u64, u8, u8), SquareType>>,
}

fn highest_bit_above(vertex: u64, crossing: usize) -> Option<usize> {
    let above = vertex >> crossing >> 1;
    (above != 0).then(|| 63 - above.leading_zeros() as usize + crossing + 1)
}

fn circles_of(braid: &BraidWord) -> impl Fn(u64) -> planar::VertexCircles + '_ {
    move |v| planar::vertex_circles(braid, v)
}

impl SignedCube {
    /// Signs every edge of the cube.
    pub fn build(braid: &BraidWord) -> Self {
        let n = braid.len();
        Self::build_heights(braid, 0..n as u32)
    }

    /// Signs only the edges leaving vertices with `|α|` in `heights`.
    pub fn build_heights(braid: &BraidWord, heights: Range<u32>) -> Self {
        let n = braid.len();
        assert!(n < 64, "at most 63 crossings");
        let lo = heights.start.min(n as u32);
        let hi = heights.end.min(n as u32).max(lo);
        let full = lo == 0 && hi as usize == n && n <= FULL_TABLE_LIMIT;
        let signs = if full {
            SignTable::Dense(dense_signs(braid))
        } else {
            SignTable::Sparse(sparse_signs(braid, lo..hi))
        };
        SignedCube { braid: braid.clone(), source_heights: lo..hi, signs, squares: Mutex::new(HashMap::new()) }
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn crossings(&self) -> usize {
        self.braid.len()
    }

    pub fn source_heights(&self) -> Range<u32> {
        self.source_heights.clone()
    }

    pub fn contains_edge(&self, vertex: u64, crossing: usize) -> bool {
        crossing < self.crossings()
            && vertex >> crossing & 1 == 0
            && vertex < 1u64 << self.crossings()
            && self.source_heights.contains(&vertex.count_ones())
    }

    /// Sign of the edge leaving `vertex` along `crossing`.
    pub fn sign(&self, vertex: u64, crossing: usize) -> Option<i64> {
        if !self.contains_edge(vertex, crossing) {
            return None;
        }
        let s = match &self.signs {
            SignTable::Dense(t) => t[vertex as usize * self.crossings() + crossing],
            SignTable::Sparse(m) => m.get(&vertex)?[crossing],
        };
        Some(s as i64)
    }

    /// Negates one stored sign. Meant for exercising [`SignedCube::verify_skew`].
    pub fn flip_sign(&mut self, vertex: u64, crossing: usize) -> Result<()> {
        if !self.contains_edge(vertex, crossing) {
            return Err(Error::NoArcAtSite(crossing));
        }
        let n = self.crossings();
        let slot = match &mut self.signs {
            SignTable::Dense(t) => &mut t[vertex as usize * n + crossing],
            SignTable::Sparse(m) => &mut m.get_mut(&vertex).expect("stored vertex")[crossing],
        };
        *slot = -*slot;
        Ok(())
    }

    pub fn edge_action(&self, vertex: u64, crossing: usize) -> Result<EdgeAction> {
        planar::resolve(&self.braid, vertex).arc_action(crossing)
    }

    pub fn square_type(&self, root: u64, c1: usize, c2: usize) -> Result<SquareType> {
        let key = (root, c1.min(c2) as u8, c1.max(c2) as u8);
        if let Some(&t) = self.squares.lock().expect("square cache").get(&key) {
            return Ok(t);
        }
        let t = planar::classify_square(&self.braid, root, c1, c2)?;
        self.squares.lock().expect("square cache").insert(key, t);
        Ok(t)
    }

    /// Stored edges, ordered by (vertex, crossing).
    pub fn edges(&self) -> Vec<(u64, usize)> {
        let n = self.crossings();
        let mut out = Vec::new();
        for v in 0..(1u64 << n) {
            if self.source_heights.contains(&v.count_ones()) {
                out.extend((0..n).filter(|&c| v >> c & 1 == 0).map(|c| (v, c)));
            }
        }
        out
    }

    /// Checks every stored square: the signed composites along its two paths
    /// must be negatives of each other.
    pub fn verify_skew(&self) -> bool {
        let n = self.crossings();
        let roots: Vec<u64> = (0..(1u64 << n))
            .filter(|v| {
                let h = v.count_ones();
                self.source_heights.contains(&h) && self.source_heights.contains(&(h + 1))
            })
            .collect();
        let circles = circles_of(&self.braid);
        roots.par_iter().all(|&root| {
            let free: Vec<usize> = (0..n).filter(|&c| root >> c & 1 == 0).collect();
            free.iter().enumerate().all(|(i, &c1)| {
                free[i + 1..].iter().all(|&c2| {
                    let s = |v: u64, c: usize| self.sign(v, c).expect("stored edge");
                    let path1 = s(root, c1) * s(root | 1 << c1, c2);
                    let path2 = s(root, c2) * s(root | 1 << c2, c1);
                    planar::square_compositions(&self.braid, root, c1, c2, &circles)
                        .iter()
                        .all(|(p, q)| {
                            let lhs: Vec<(u64, i64)> = p.iter().map(|&(m, x)| (m, x * path1)).collect();
                            let rhs: Vec<(u64, i64)> = q.iter().map(|&(m, x)| (m, -x * path2)).collect();
                            lhs == rhs
                        })
                })
            })
        })
    }

    /// One line per stored edge: `bits crossing sign merge|split`, where
    /// `bits` lists the smoothing at crossings `0..n` left to right.
    pub fn dump(&self) -> String {
        let n = self.crossings();
        let mut out = String::new();
        for (v, c) in self.edges() {
            let bits: String = (0..n).map(|j| if v >> j & 1 == 1 { '1' } else { '0' }).collect();
            let kind = match self.edge_action(v, c).expect("stored edge has an arc") {
                EdgeAction::Merge { .. } => "merge",
                EdgeAction::Split { .. } => "split",
            };
            let sign = self.sign(v, c).expect("stored edge");
            writeln!(out, "{bits} {c} {sign:+} {kind}").expect("writing to a String");
        }
        out
    }
}

pub fn build_cube(braid: &BraidWord) -> SignedCube {
    SignedCube::build(braid)
}

pub fn verify_skew(cube: &SignedCube) -> bool {
    cube.verify_skew()
}

/// `-t(S)` for the square met when peeling the top bit `h` off `vertex`.
fn peel_factor(braid: &BraidWord, vertex: u64, crossing: usize, h: usize) -> i8 {
    let circles = circles_of(braid);
    let t = planar::classify_with(braid, vertex & !(1 << h), crossing, h, &circles);
    -t.sign() as i8
}

fn dense_signs(braid: &BraidWord) -> Vec<i8> {
    let n = braid.len();
    let count = 1usize << n;
    // factor[(v, c)] depends only on the square below, so these are independent
    let factors: Vec<i8> = (0..count)
        .into_par_iter()
        .flat_map_iter(|v| {
            let v = v as u64;
            (0..n).map(move |c| {
                if v >> c & 1 == 1 {
                    0
                } else {
                    match highest_bit_above(v, c) {
                        None => 1,
                        Some(h) => peel_factor(braid, v, c, h),
                    }
                }
            })
        })
        .collect();
    let mut signs = factors;
    for v in 0..count as u64 {
        for c in 0..n {
            if v >> c & 1 == 0 {
                if let Some(h) = highest_bit_above(v, c) {
                    let below = signs[(v & !(1 << h)) as usize * n + c];
                    signs[v as usize * n + c] *= below;
                }
            }
        }
    }
    signs
}

fn chain_sign(braid: &BraidWord, vertex: u64, crossing: usize) -> i8 {
    let mut v = vertex;
    let mut sign = 1i8;
    while let Some(h) = highest_bit_above(v, crossing) {
        sign *= peel_factor(braid, v, crossing, h);
        v &= !(1 << h);
    }
    sign
}

fn sparse_signs(braid: &BraidWord, heights: Range<u32>) -> HashMap<u64, Vec<i8>> {
    let n = braid.len();
    let vertices: Vec<u64> =
        (0..(1u64 << n)).filter(|v| heights.contains(&v.count_ones())).collect();
    vertices
        .into_par_iter()
        .map(|v| {
            let row = (0..n).map(|c| if v >> c & 1 == 1 { 0 } else { chain_sign(braid, v, c) }).collect();
            (v, row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> BraidWord {
        BraidWord::new(letters.to_vec(), None).unwrap()
    }

    #[test]
    fn single_crossing() {
        let cube = build_cube(&w(&[1]));
        assert_eq!(cube.edges(), vec![(0, 0)]);
        assert_eq!(cube.sign(0, 0), Some(1));
        assert!(matches!(cube.edge_action(0, 0), Ok(EdgeAction::Merge { .. })));
        assert_eq!(cube.dump(), "0 0 +1 merge\n");
    }

    #[test]
    fn type_a_square_signs() {
        let cube = build_cube(&w(&[1, 1]));
        assert_eq!(cube.square_type(0, 0, 1), Ok(SquareType::A));
        for (v, c) in cube.edges() {
            assert_eq!(cube.sign(v, c), Some(1), "edge {v:b} {c}");
        }
        assert!(cube.verify_skew());
    }

    #[test]
    fn empty_cube() {
        let cube = build_cube(&BraidWord::unknot());
        assert!(cube.edges().is_empty());
        assert!(cube.verify_skew());
    }

    #[test]
    fn skew_on_assorted_braids() {
        for word in [
            vec![1, 2, 1, 2, 1, 2],
            vec![1, -2, 1, -2, 1],
            vec![-1, 2, -1, 3, -2, 3, 1],
            vec![2, 2, -1, 3, -2, 1, 1, -3],
        ] {
            let b = w(&word);
            assert!(build_cube(&b).verify_skew(), "{word:?}");
        }
    }

    #[test]
    fn partial_matches_full() {
        let b = w(&[1, -2, 1, 2, -1, 2, 2]);
        let full = build_cube(&b);
        let part = SignedCube::build_heights(&b, 2..4);
        for (v, c) in part.edges() {
            assert_eq!(part.sign(v, c), full.sign(v, c));
        }
        assert!(part.verify_skew());
        assert_eq!(part.sign(0, 0), None);
    }

    #[test]
    fn corruption_is_detected() {
        let b = w(&[1, 3]);
        let mut cube = build_cube(&b);
        assert_eq!(cube.square_type(0, 0, 1), Ok(SquareType::C));
        assert!(cube.verify_skew());
        cube.flip_sign(0, 0).unwrap();
        assert!(!cube.verify_skew());
    }

    #[test]
    fn deterministic_dump() {
        let b = w(&[1, -2, 1, -2]);
        assert_eq!(build_cube(&b).dump(), build_cube(&b).dump());
    }
}
