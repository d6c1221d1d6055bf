//! Bigraded chain complexes built on the cube of resolutions.
//!
//! A generator is a vertex `α` together with a monomial, stored as a bitmask
//! over the generators of that vertex's algebra:
//!
//! - odd: the circles of the resolution, monomials in the exterior algebra;
//! - odd reduced: the differences `w_t = v_t - v_{t+1}`, `t < k-1`, which
//!   span the kernel of the augmentation `v_i ↦ 1`;
//! - even: one tensor factor per circle, the bit set meaning `x` (else `1`).
//!
//! With `g` algebra generators at `α` and a monomial of degree `m`, the
//! gradings are `r = |α| - n₋` and `Q = g - 2m + |α| + n₊ - 2n₋`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;

use crate::braid::BraidWord;
use crate::cube::SignedCube;
use crate::error::{Error, Result};
use crate::exterior::{self, Binomials};
use crate::intlinalg::{Field, IntMatrix};
use crate::planar::{self, EdgeKind, EdgeMap, VertexCircles};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    Odd,
    OddReduced,
    Even,
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "odd" => Ok(Theory::Odd),
            "odd-reduced" | "reduced" => Ok(Theory::OddReduced),
            "even" => Ok(Theory::Even),
            other => Err(Error::Parse(format!("unknown theory {other:?} (expected odd, odd-reduced or even)"))),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Odd => "odd",
            Theory::OddReduced => "odd-reduced",
            Theory::Even => "even",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Coefficients {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) && p < 1 << 31 {
            Ok(Coefficients::PrimeField(p))
        } else {
            Err(Error::Parse(format!("{p} is not a supported prime")))
        }
    }

    /// The field to row-reduce over, or `None` for ℤ.
    pub fn field(self) -> Option<Field> {
        match self {
            Coefficients::Integers => None,
            Coefficients::Rationals => Some(Field::Rationals),
            Coefficients::PrimeField(p) => Some(Field::Prime(p)),
        }
    }
}

/// Accepts `Z`, `Q`, `Fp:<p>`, `F<p>` and `Z/<p>`.
impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "z" => return Ok(Coefficients::Integers),
            "Q" | "q" => return Ok(Coefficients::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("Z/"))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unknown coefficients {t:?} (expected Z, Q or Fp:<p>)")))?;
        let p = digits.parse::<u64>().map_err(|e| Error::Parse(format!("bad modulus {digits:?}: {e}")))?;
        Coefficients::prime_field(p)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("Z"),
            Coefficients::Rationals => f.write_str("Q"),
            Coefficients::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// (homological degree r, quantum degree Q)
pub type Bigrading = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub vertex: u64,
    pub monomial: u64,
}

/// All monomials of one degree at one vertex, contiguous in the basis.
#[derive(Debug, Clone, Copy)]
struct Block {
    vertex: u64,
    offset: usize,
    generators: u8,
    degree: u8,
}

/// Basis of one bigrading: vertices ascending, then monomials ascending.
#[derive(Debug, Clone, Default)]
pub struct ChainGroup {
    blocks: Vec<Block>,
    dim: usize,
}

impl ChainGroup {
    pub fn dim(&self) -> usize {
        self.dim
    }

    fn block_of(&self, vertex: u64) -> Option<&Block> {
        self.blocks.binary_search_by_key(&vertex, |b| b.vertex).ok().map(|i| &self.blocks[i])
    }

    fn index_in(&self, vertex: u64, monomial: u64, binom: &Binomials) -> Option<usize> {
        let b = self.block_of(vertex)?;
        (monomial.count_ones() == b.degree as u32 && monomial >> b.generators == 0)
            .then(|| b.offset + exterior::colex_rank(monomial, binom))
    }

    pub fn index_of(&self, g: Generator) -> Option<usize> {
        self.index_in(g.vertex, g.monomial, &Binomials::new(64))
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.blocks.iter().flat_map(|b| {
            exterior::masks_with_popcount(b.generators as usize, b.degree as usize)
                .map(move |monomial| Generator { vertex: b.vertex, monomial })
        })
    }
}

/// Sparse chain in one bigrading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainVector {
    pub bigrading: Bigrading,
    /// (basis index, coefficient), ascending by index, no zeros.
    pub coords: Vec<(usize, i64)>,
}

impl ChainVector {
    pub fn to_dense(&self, dim: usize) -> Vec<i64> {
        let mut v = vec![0; dim];
        for &(i, c) in &self.coords {
            v[i] = c;
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Finite Laurent polynomial in `q` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPolynomial {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = LaurentPolynomial::default();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: i64, coefficient: i64) {
        let c = self.terms.entry(exponent).or_insert(0);
        *c += coefficient;
        if *c == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn coefficient(&self, exponent: i64) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    /// `p(q⁻¹)`
    pub fn invert_variable(&self) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GradedComplex {
    theory: Theory,
    coefficients: Coefficients,
    braid: BraidWord,
    heights: RangeInclusive<u32>,
    groups: BTreeMap<Bigrading, ChainGroup>,
    /// `d_{r,Q}: C_{r,Q} → C_{r+1,Q}`, keyed by the source.
    differentials: BTreeMap<Bigrading, IntMatrix>,
}

/// `v'_a - v'_b` in the basis `w'_s = v'_s - v'_{s+1}`.
fn difference(a: usize, b: usize) -> Vec<(usize, i64)> {
    use std::cmp::Ordering;
    match a.cmp(&b) {
        Ordering::Less => (a..b).map(|s| (s, 1)).collect(),
        Ordering::Greater => (b..a).map(|s| (s, -1)).collect(),
        Ordering::Equal => Vec::new(),
    }
}

fn even_image(edge: &EdgeMap, mask: u64) -> Vec<(u64, i64)> {
    let remap = |m: u64| -> u64 {
        let mut out = 0u64;
        let mut rest = m;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << edge.map[i];
        }
        out
    };
    match edge.kind {
        EdgeKind::Merge { tail, head, .. } => {
            if mask >> tail & 1 == 1 && mask >> head & 1 == 1 {
                Vec::new()
            } else {
                vec![(remap(mask), 1)]
            }
        }
        EdgeKind::Split { from, a0, a1 } => {
            let base = remap(mask & !(1 << from));
            if mask >> from & 1 == 1 {
                vec![(base | 1 << a0 | 1 << a1, 1)]
            } else {
                vec![(base | 1 << a0, 1), (base | 1 << a1, 1)]
            }
        }
    }
}

struct Builder<'a> {
    braid: &'a BraidWord,
    theory: Theory,
    cube: Option<&'a SignedCube>,
    circles: HashMap<u64, VertexCircles>,
    binom: Binomials,
}

impl<'a> Builder<'a> {
    fn generators_at(&self, vertex: u64) -> usize {
        let k = self.circles[&vertex].len();
        match self.theory {
            Theory::OddReduced => k - 1,
            _ => k,
        }
    }

    fn edge_sign(&self, vertex: u64, crossing: usize) -> i64 {
        match self.theory {
            Theory::Even => {
                if (vertex & ((1 << crossing) - 1)).count_ones().is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
            _ => self
                .cube
                .and_then(|c| c.sign(vertex, crossing))
                .expect("cube covers every edge of the complex"),
        }
    }

    fn image(&self, edge: &EdgeMap, mask: u64) -> Vec<(u64, i64)> {
        match self.theory {
            Theory::Odd => {
                let mut out = Vec::with_capacity(2);
                edge.apply_odd(mask, &mut out);
                out
            }
            Theory::Even => even_image(edge, mask),
            Theory::OddReduced => {
                let gens: Vec<Vec<(usize, i64)>> = (0..edge.map.len().saturating_sub(1))
                    .map(|t| difference(edge.map[t] as usize, edge.map[t + 1] as usize))
                    .collect();
                match edge.kind {
                    EdgeKind::Merge { .. } => exterior::apply_linear(mask, &gens, None),
                    EdgeKind::Split { a0, a1, .. } => {
                        exterior::apply_linear(mask, &gens, Some(&difference(a0 as usize, a1 as usize)))
                    }
                }
            }
        }
    }

    fn differential(&self, source: &ChainGroup, target: Option<&ChainGroup>) -> IntMatrix {
        let n = self.braid.len();
        let letters = self.braid.letters();
        let rows = target.map_or(0, ChainGroup::dim);
        let triplets: Vec<(usize, usize, i64)> = source
            .blocks
            .par_iter()
            .flat_map_iter(|b| {
                let mut out = Vec::new();
                let src = &self.circles[&b.vertex];
                for c in (0..n).filter(|&c| b.vertex >> c & 1 == 0) {
                    let w = b.vertex | 1 << c;
                    let edge = EdgeMap::between(letters[c], c, src, &self.circles[&w]);
                    let sign = self.edge_sign(b.vertex, c);
                    let tb = target.and_then(|t| t.block_of(w));
                    for (i, mask) in exterior::masks_with_popcount(b.generators as usize, b.degree as usize).enumerate() {
                        let img = self.image(&edge, mask);
                        let Some(tb) = tb else {
                            debug_assert!(img.is_empty(), "image outside the target bigrading");
                            continue;
                        };
                        for (m2, coef) in img {
                            debug_assert_eq!(m2.count_ones(), tb.degree as u32, "differential must preserve Q");
                            let row = tb.offset + exterior::colex_rank(m2, &self.binom);
                            out.push((row, b.offset + i, coef * sign));
                        }
                    }
                }
                out
            })
            .collect();
        IntMatrix::from_triplets(rows, source.dim, triplets)
    }
}

impl GradedComplex {
    /// Builds the complex on every vertex whose outgoing edges the cube signs
    /// (plus the layer they land in).
    pub fn build(cube: &SignedCube, theory: Theory, coefficients: Coefficients) -> Self {
        let h = cube.source_heights();
        let top = if h.is_empty() { h.start } else { h.end };
        Self::assemble(cube.braid(), Some(cube), h.start..=top, theory, coefficients, None)
    }

    /// Full complex of a braid closure.
    pub fn from_braid(braid: &BraidWord, theory: Theory, coefficients: Coefficients) -> Self {
        let n = braid.len() as u32;
        if theory == Theory::Even {
            return Self::assemble(braid, None, 0..=n, theory, coefficients, None);
        }
        let cube = SignedCube::build(braid);
        Self::assemble(braid, Some(&cube), 0..=n, theory, coefficients, None)
    }

    /// Only the quantum degree of the invariant and homological degrees
    /// -1, 0, 1: enough to read off the invariant's class.
    pub fn around_invariant(braid: &BraidWord, theory: Theory, coefficients: Coefficients) -> Self {
        let n = braid.len() as u32;
        let mid = braid.negative_count() as u32;
        let heights = mid.saturating_sub(1)..=(mid + 1).min(n);
        let q = psi_bigrading(braid, theory).1;
        if theory == Theory::Even {
            return Self::assemble(braid, None, heights, theory, coefficients, Some(q));
        }
        let cube = SignedCube::build_heights(braid, *heights.start()..*heights.end());
        Self::assemble(braid, Some(&cube), heights, theory, coefficients, Some(q))
    }

    fn assemble(
        braid: &BraidWord,
        cube: Option<&SignedCube>,
        heights: RangeInclusive<u32>,
        theory: Theory,
        coefficients: Coefficients,
        only_q: Option<i64>,
    ) -> Self {
        let n = braid.len();
        let vertices: Vec<u64> =
            (0..(1u64 << n)).filter(|v| heights.contains(&v.count_ones())).collect();
        let circles: HashMap<u64, VertexCircles> =
            vertices.par_iter().map(|&v| (v, planar::vertex_circles(braid, v))).collect();
        let builder = Builder { braid, theory, cube, circles, binom: Binomials::new(64) };
        let (np, nm) = (braid.positive_count() as i64, braid.negative_count() as i64);
        let mut groups: BTreeMap<Bigrading, ChainGroup> = BTreeMap::new();
        for &v in &vertices {
            let h = v.count_ones() as i64;
            let g = builder.generators_at(v);
            for m in 0..=g {
                let q = g as i64 - 2 * m as i64 + h + np - 2 * nm;
                if only_q.is_some_and(|want| want != q) {
                    continue;
                }
                let group = groups.entry((h - nm, q)).or_default();
                group.blocks.push(Block { vertex: v, offset: group.dim, generators: g as u8, degree: m as u8 });
                group.dim += builder.binom.get(g, m);
            }
        }
        let top = *heights.end() as i64 - nm;
        let differentials = groups
            .iter()
            .filter(|((r, _), _)| *r < top)
            .map(|(&(r, q), src)| ((r, q), builder.differential(src, groups.get(&(r + 1, q)))))
            .collect();
        GradedComplex { theory, coefficients, braid: braid.clone(), heights, groups, differentials }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    /// Homological degrees whose incoming and outgoing differentials are
    /// both present, so homology there is exact.
    pub fn complete_degrees(&self) -> RangeInclusive<i64> {
        let nm = self.braid.negative_count() as i64;
        let (lo, hi) = (*self.heights.start() as i64, *self.heights.end() as i64);
        let n = self.braid.len() as i64;
        let first = if lo == 0 { lo } else { lo + 1 };
        let last = if hi == n { hi } else { hi - 1 };
        first - nm..=last - nm
    }

    pub fn bigradings(&self) -> impl Iterator<Item = Bigrading> + '_ {
        self.groups.keys().copied()
    }

    pub fn group(&self, bigrading: Bigrading) -> Option<&ChainGroup> {
        self.groups.get(&bigrading)
    }

    pub fn dim(&self, bigrading: Bigrading) -> usize {
        self.groups.get(&bigrading).map_or(0, ChainGroup::dim)
    }

    /// `d: C_{r,Q} → C_{r+1,Q}`; an empty matrix of the right shape when
    /// either side vanishes.
    pub fn differential(&self, bigrading: Bigrading) -> IntMatrix {
        let (r, q) = bigrading;
        self.differentials
            .get(&bigrading)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.dim((r + 1, q)), self.dim(bigrading)))
    }

    pub fn apply_differential(&self, x: &ChainVector) -> ChainVector {
        let (r, q) = x.bigrading;
        let d = self.differential(x.bigrading);
        let y = d.mul_vec(&x.to_dense(d.cols())).expect("vector lives in the source group");
        ChainVector { bigrading: (r + 1, q), coords: y.into_iter().enumerate().filter(|e| e.1 != 0).collect() }
    }

    /// True if every stored composite `d_{r+1} ∘ d_r` vanishes.
    pub fn d_squared_vanishes(&self) -> bool {
        self.differentials.iter().all(|(&(r, q), d)| match self.differentials.get(&(r + 1, q)) {
            Some(next) => next.mul(d).map(|p| p.is_zero()).unwrap_or(false),
            None => true,
        })
    }

    /// The invariant as a chain: the top monomial at the braid-like resolution.
    pub fn psi_chain(&self) -> Option<ChainVector> {
        let bigrading = psi_bigrading(&self.braid, self.theory);
        let alpha = self.braid.oriented_resolution();
        let group = self.groups.get(&bigrading)?;
        let block = group.block_of(alpha)?;
        let full = (1u64 << block.generators) - 1;
        let index = group.index_in(alpha, full, &Binomials::new(64))?;
        Some(ChainVector { bigrading, coords: vec![(index, 1)] })
    }

    /// Expands a chain of this reduced complex in the generators of `full`
    /// (the unreduced odd complex of the same braid). The quantum degree goes
    /// up by one.
    pub fn embed_reduced(&self, x: &ChainVector, full: &GradedComplex) -> Result<ChainVector> {
        if self.theory != Theory::OddReduced || full.theory != Theory::Odd {
            return Err(Error::ShapeError("embedding goes from the reduced to the odd complex".into()));
        }
        let (r, q) = x.bigrading;
        let src = self.groups.get(&x.bigrading).ok_or_else(|| Error::ShapeError(format!("no group at {:?}", x.bigrading)))?;
        let tgt = full.groups.get(&(r, q + 1)).ok_or_else(|| Error::ShapeError(format!("no group at {:?}", (r, q + 1))))?;
        let binom = Binomials::new(64);
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(i, c) in &x.coords {
            let b = src.blocks[src.blocks.partition_point(|b| b.offset <= i) - 1];
            let mask = exterior::masks_with_popcount(b.generators as usize, b.degree as usize)
                .nth(i - b.offset)
                .expect("index inside its block");
            let gens: Vec<Vec<(usize, i64)>> = (0..b.generators as usize).map(|t| vec![(t, 1), (t + 1, -1)]).collect();
            for (m, v) in exterior::apply_linear(mask, &gens, None) {
                let j = tgt.index_in(b.vertex, m, &binom).expect("expanded monomial is a basis element");
                *acc.entry(j).or_insert(0) += c * v;
            }
        }
        Ok(ChainVector { bigrading: (r, q + 1), coords: acc.into_iter().filter(|e| e.1 != 0).collect() })
    }

    /// Σ (-1)^r dim C_{r,Q} q^Q over the stored groups.
    pub fn euler_characteristic(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.groups.iter().map(|(&(r, q), g)| {
            let sign = if r.rem_euclid(2) == 0 { 1 } else { -1 };
            (q, sign * g.dim as i64)
        }))
    }

    /// Per differential: a header `r Q rows cols`, then `i j value` lines.
    pub fn dump_matrices(&self) -> String {
        let mut out = String::new();
        for (&(r, q), d) in &self.differentials {
            writeln!(out, "{r} {q} {} {}", d.rows(), d.cols()).expect("writing to a String");
            for &(i, j, v) in d.entries() {
                writeln!(out, "{i} {j} {v}").expect("writing to a String");
            }
        }
        out
    }
}

pub fn build_complex(cube: &SignedCube, theory: Theory, coefficients: Coefficients) -> GradedComplex {
    GradedComplex::build(cube, theory, coefficients)
}

/// Where the invariant lives: `(0, sl)`, or `(0, sl + 1)` for the reduced theory.
pub fn psi_bigrading(braid: &BraidWord, theory: Theory) -> Bigrading {
    let sl = braid.self_linking();
    match theory {
        Theory::OddReduced => (0, sl + 1),
        _ => (0, sl),
    }
}

pub fn euler_characteristic(complex: &GradedComplex) -> LaurentPolynomial {
    complex.euler_characteristic()
}

/// Unnormalized Jones polynomial in `q` (the unknot gives `q^-1 + q`), as a
/// state sum over circle counts; no chain groups are built.
pub fn jones_polynomial(braid: &BraidWord) -> LaurentPolynomial {
    let n = braid.len();
    let shift = braid.positive_count() as i64 - 2 * braid.negative_count() as i64;
    let nm = braid.negative_count() as i64;
    let counts: Vec<(i64, usize)> = (0..(1u64 << n))
        .into_par_iter()
        .map(|v| (v.count_ones() as i64, planar::vertex_circles(braid, v).len()))
        .collect();
    let binom = Binomials::new(64);
    let mut poly = LaurentPolynomial::default();
    for (h, k) in counts {
        let sign = if (h - nm).rem_euclid(2) == 0 { 1 } else { -1 };
        for m in 0..=k {
            poly.add_term(k as i64 - 2 * m as i64 + h + shift, sign * binom.get(k, m) as i64);
        }
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> BraidWord {
        BraidWord::new(letters.to_vec(), None).unwrap()
    }

    #[test]
    fn unknot_chains() {
        let c = GradedComplex::from_braid(&BraidWord::unknot(), Theory::Odd, Coefficients::Integers);
        assert_eq!(c.bigradings().collect::<Vec<_>>(), vec![(0, -1), (0, 1)]);
        assert_eq!((c.dim((0, -1)), c.dim((0, 1))), (1, 1));
        let psi = c.psi_chain().unwrap();
        assert_eq!(psi.bigrading, (0, -1));
        assert_eq!(c.euler_characteristic().to_string(), "q^-1 + q");
        let red = GradedComplex::from_braid(&BraidWord::unknot(), Theory::OddReduced, Coefficients::Integers);
        assert_eq!(red.bigradings().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn one_crossing_dimensions() {
        let c = GradedComplex::from_braid(&w(&[1]), Theory::Odd, Coefficients::Integers);
        let at = |r: i64| c.bigradings().filter(|b| b.0 == r).map(|b| c.dim(b)).sum::<usize>();
        assert_eq!((at(0), at(1)), (4, 2));
        assert!(c.d_squared_vanishes());
    }

    #[test]
    fn d_squared_all_theories() {
        for word in [vec![1, 1, 1], vec![1, -2, 1, -2], vec![2, -1, 2, 3, -2, -3, 1], vec![1, 2, 1, 2, 1, 2]] {
            for theory in [Theory::Odd, Theory::OddReduced, Theory::Even] {
                let c = GradedComplex::from_braid(&w(&word), theory, Coefficients::Integers);
                assert!(c.d_squared_vanishes(), "{word:?} {theory}");
                let psi = c.psi_chain().expect("invariant exists");
                assert!(c.apply_differential(&psi).is_zero(), "{word:?} {theory}");
            }
        }
    }

    #[test]
    fn reduced_is_a_subcomplex() {
        let b = w(&[1, -2, 1, 2, -1, 2]);
        let full = GradedComplex::from_braid(&b, Theory::Odd, Coefficients::Integers);
        let red = GradedComplex::from_braid(&b, Theory::OddReduced, Coefficients::Integers);
        for bg in red.bigradings().collect::<Vec<_>>() {
            for i in 0..red.dim(bg) {
                let x = ChainVector { bigrading: bg, coords: vec![(i, 1)] };
                let lhs = full.apply_differential(&red.embed_reduced(&x, &full).unwrap());
                let dx = red.apply_differential(&x);
                let rhs = if red.group(dx.bigrading).is_some() {
                    red.embed_reduced(&dx, &full).unwrap()
                } else {
                    ChainVector { bigrading: (bg.0 + 1, bg.1 + 1), coords: vec![] }
                };
                assert_eq!(lhs, rhs, "{bg:?} {i}");
            }
        }
    }

    #[test]
    fn euler_characteristics() {
        let t = w(&[1, 1, 1]);
        let chi = GradedComplex::from_braid(&t, Theory::Odd, Coefficients::Rationals).euler_characteristic();
        let chi_m = GradedComplex::from_braid(&t.mirror(), Theory::Odd, Coefficients::Rationals).euler_characteristic();
        assert_eq!(chi_m, chi.invert_variable());
        let even = GradedComplex::from_braid(&t, Theory::Even, Coefficients::Rationals).euler_characteristic();
        assert_eq!(chi, even);
        assert_eq!(jones_polynomial(&t), chi);
        // right trefoil: q + q^3 + q^5 - q^9
        assert_eq!(jones_polynomial(&t).to_string(), "q + q^3 + q^5 - q^9");
        assert_eq!(jones_polynomial(&BraidWord::unknot()).to_string(), "q^-1 + q");
    }

    #[test]
    fn partial_build_agrees() {
        let b = w(&[1, -2, 1, -2, 1, 2]);
        let full = GradedComplex::from_braid(&b, Theory::Odd, Coefficients::Integers);
        let part = GradedComplex::around_invariant(&b, Theory::Odd, Coefficients::Integers);
        let bg = psi_bigrading(&b, Theory::Odd);
        assert_eq!(part.differential(bg), full.differential(bg));
        assert_eq!(part.differential((-1, bg.1)), full.differential((-1, bg.1)));
        assert!(part.complete_degrees().contains(&0));
    }

    #[test]
    fn text_forms() {
        assert_eq!("odd-reduced".parse::<Theory>().unwrap(), Theory::OddReduced);
        assert_eq!("Fp:3".parse::<Coefficients>().unwrap(), Coefficients::PrimeField(3));
        assert_eq!("F2".parse::<Coefficients>().unwrap(), Coefficients::PrimeField(2));
        assert!("Fp:4".parse::<Coefficients>().is_err());
        assert_eq!(LaurentPolynomial::from_terms([(0, -2), (3, 1), (-2, 1)]).to_string(), "q^-2 - 2 + q^3");
        assert_eq!(LaurentPolynomial::default().to_string(), "0");
    }
}
