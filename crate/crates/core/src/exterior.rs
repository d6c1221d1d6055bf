//! Monomials of an exterior algebra encoded as bitmasks over the generators,
//! with the sign bookkeeping needed by the cube maps.

/// Sparse linear combination of monomials, kept sorted by mask with no zero
/// coefficients.
pub(crate) type Combo = Vec<(u64, i64)>;

/// `v_g ∧ m` rewritten in increasing order: `Some(sign)` or `None` if `g ∈ m`.
#[inline]
pub(crate) fn wedge_left(mask: u64, g: usize) -> Option<i64> {
    if mask >> g & 1 == 1 {
        return None;
    }
    let below = (mask & ((1u64 << g) - 1)).count_ones();
    Some(if below.is_multiple_of(2) { 1 } else { -1 })
}

/// `m ∧ v_g` rewritten in increasing order.
#[inline]
pub(crate) fn wedge_right(mask: u64, g: usize) -> Option<i64> {
    if mask >> g & 1 == 1 {
        return None;
    }
    let above = (mask >> g).count_ones();
    Some(if above.is_multiple_of(2) { 1 } else { -1 })
}

/// Image of a monomial under the algebra map induced by `v_i ↦ v'_{map[i]}`;
/// `None` when two factors land on the same generator.
#[inline]
pub(crate) fn map_monomial(mask: u64, map: &[u8]) -> Option<(i64, u64)> {
    let mut out = 0u64;
    let mut inversions = 0u32;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        let g = map[i] as u32;
        if out >> g & 1 == 1 {
            return None;
        }
        // earlier factors with a larger image must be passed over
        inversions += (out >> g).count_ones();
        out |= 1 << g;
    }
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, out))
}

pub(crate) fn normalize(mut terms: Vec<(u64, i64)>) -> Combo {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Combo = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 += c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

/// Linear map on generators, `gens[i]` = image of generator `i` as a sparse
/// vector over target generators; extended multiplicatively to monomials,
/// then optionally wedged on the left by `left`.
pub(crate) fn apply_linear(mask: u64, gens: &[Vec<(usize, i64)>], left: Option<&[(usize, i64)]>) -> Combo {
    let mut acc: Vec<(u64, i64)> = vec![(0, 1)];
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        let mut next = Vec::with_capacity(acc.len() * gens[i].len());
        for &(am, ac) in &acc {
            for &(g, gc) in &gens[i] {
                if let Some(s) = wedge_right(am, g) {
                    next.push((am | 1 << g, ac * gc * s));
                }
            }
        }
        acc = normalize(next);
        if acc.is_empty() {
            return acc;
        }
    }
    if let Some(left) = left {
        let mut next = Vec::with_capacity(acc.len() * left.len());
        for &(am, ac) in &acc {
            for &(g, gc) in left {
                if let Some(s) = wedge_left(am, g) {
                    next.push((am | 1 << g, ac * gc * s));
                }
            }
        }
        acc = normalize(next);
    }
    acc
}

/// Iterates masks of `k` bits with exactly `m` set, in increasing numeric order.
pub(crate) fn masks_with_popcount(k: usize, m: usize) -> impl Iterator<Item = u64> {
    let limit = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
    let first = if m == 0 { 0 } else if m > k { u64::MAX } else { (1u64 << m) - 1 };
    let mut cur = Some(first).filter(|&f| m <= k && f <= limit);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 {
            None
        } else {
            // Gosper's hack
            let c = out & out.wrapping_neg();
            let r = out + c;
            let next = (((r ^ out) >> 2) / c) | r;
            (next <= limit && next > out).then_some(next)
        };
        Some(out)
    })
}

/// Position of `mask` among the masks with the same popcount, in increasing
/// numeric order (combinatorial number system).
pub(crate) fn colex_rank(mask: u64, binom: &Binomials) -> usize {
    let mut rank = 0usize;
    let mut m = mask;
    let mut i = 1;
    while m != 0 {
        let pos = m.trailing_zeros() as usize;
        m &= m - 1;
        rank += binom.get(pos, i);
        i += 1;
    }
    rank
}

pub(crate) struct Binomials {
    table: Vec<Vec<usize>>,
}

impl Binomials {
    pub(crate) fn new(n: usize) -> Self {
        let mut table = vec![vec![0usize; n + 2]; n + 2];
        for i in 0..=n + 1 {
            table[i][0] = 1;
            for j in 1..=i {
                table[i][j] = table[i - 1][j - 1] + if j < i { table[i - 1][j] } else { 0 };
            }
        }
        Binomials { table }
    }

    #[inline]
    pub(crate) fn get(&self, n: usize, k: usize) -> usize {
        if k > n {
            0
        } else {
            self.table[n][k]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        // v1 ∧ (v0 ∧ v2) = -(v0 ∧ v1 ∧ v2)
        assert_eq!(wedge_left(0b101, 1), Some(-1));
        assert_eq!(wedge_right(0b101, 1), Some(-1));
        assert_eq!(wedge_left(0b101, 3), Some(1));
        assert_eq!(wedge_left(0b101, 0), None);
    }

    #[test]
    fn monomial_maps() {
        // v0 ∧ v1 ↦ v1 ∧ v0 = -(v0 ∧ v1)
        assert_eq!(map_monomial(0b11, &[1, 0]), Some((-1, 0b11)));
        assert_eq!(map_monomial(0b11, &[0, 0]), None);
        assert_eq!(map_monomial(0b101, &[2, 0, 0]), Some((-1, 0b101)));
    }

    #[test]
    fn linear_maps_agree_with_monomial_maps() {
        let gens = vec![vec![(2, 1)], vec![(0, 1)], vec![(1, 1)]];
        for mask in 0..8u64 {
            let lin = apply_linear(mask, &gens, None);
            let mono = map_monomial(mask, &[2, 0, 1]).map(|(s, m)| vec![(m, s)]).unwrap();
            assert_eq!(lin, mono);
        }
        // (v0 - v1) ∧ (v0 - v1) = 0
        let diff = vec![vec![(0, 1), (1, -1)]];
        assert!(apply_linear(1, &diff, Some(&[(0, 1), (1, -1)])).is_empty());
    }

    #[test]
    fn popcount_enumeration_and_rank() {
        let binom = Binomials::new(10);
        let masks: Vec<u64> = masks_with_popcount(5, 2).collect();
        assert_eq!(masks.len(), 10);
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
        for (i, &m) in masks.iter().enumerate() {
            assert_eq!(colex_rank(m, &binom), i);
        }
        assert_eq!(masks_with_popcount(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(masks_with_popcount(3, 4).count(), 0);
        assert_eq!(masks_with_popcount(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(masks_with_popcount(0, 0).collect::<Vec<_>>(), vec![0]);
    }
}
