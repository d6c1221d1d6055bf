//! Braid words and word-level surgeries.
//!
//! A letter `k > 0` is the Artin generator σ_k (a positive crossing between
//! strands `k` and `k+1`), `k < 0` is σ_k⁻¹. Letters are numbered `0..n` from
//! the top of the braid; that numbering is the crossing order used by every
//! later stage.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<i32>,
    strands: usize,
}

/// Moves that preserve the transverse link type of the closure, plus the
/// negative stabilization (which preserves only the topological type).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkovMove {
    Conjugate(i32),
    StabilizePositive,
    StabilizeNegative,
    BraidRelation(usize),
}

impl BraidWord {
    pub fn new(letters: Vec<i32>, strands: Option<usize>) -> Result<Self> {
        if let Some(pos) = letters.iter().position(|&l| l == 0) {
            return Err(Error::MalformedWord(format!("zero letter at position {pos}")));
        }
        let needed = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
        let strands = match strands {
            Some(0) => return Err(Error::MalformedWord("strand count must be positive".into())),
            Some(b) => {
                if let Some(&bad) = letters.iter().find(|l| l.unsigned_abs() as usize >= b) {
                    return Err(Error::StrandOutOfRange { letter: bad, strands: b });
                }
                b
            }
            None => needed,
        };
        Ok(BraidWord { letters, strands })
    }

    /// The one-strand empty braid, whose closure is the standard transverse unknot.
    pub fn unknot() -> Self {
        BraidWord { letters: Vec::new(), strands: 1 }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// Number of crossings.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn positive_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l > 0).count()
    }

    pub fn negative_count(&self) -> usize {
        self.letters.iter().filter(|&&l| l < 0).count()
    }

    /// sl = -b + n₊ - n₋.
    pub fn self_linking(&self) -> i64 {
        -(self.strands as i64) + self.positive_count() as i64 - self.negative_count() as i64
    }

    /// Bitmask of the negative crossings: the braid-like resolution α′ where
    /// the closure falls apart into `b` parallel circles.
    pub fn oriented_resolution(&self) -> u64 {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &l)| l < 0)
            .fold(0u64, |acc, (i, _)| acc | (1 << i))
    }

    pub fn mirror(&self) -> Self {
        BraidWord { letters: self.letters.iter().map(|l| -l).collect(), strands: self.strands }
    }

    pub fn reverse(&self) -> Self {
        BraidWord { letters: self.letters.iter().rev().copied().collect(), strands: self.strands }
    }

    pub fn delete_letter(&self, index: usize) -> Result<Self> {
        if index >= self.letters.len() {
            return Err(Error::IndexError { index, len: self.letters.len() });
        }
        let mut letters = self.letters.clone();
        letters.remove(index);
        Ok(BraidWord { letters, strands: self.strands })
    }

    /// Braid whose closure is the connected sum of the two closures: the
    /// second braid is placed on strands `b₁..b₁+b₂-1`, sharing strand `b₁`.
    pub fn connect_sum(&self, other: &BraidWord) -> Self {
        let shift = self.strands as i32 - 1;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&l| if l > 0 { l + shift } else { l - shift }));
        BraidWord { letters, strands: self.strands + other.strands - 1 }
    }

    pub fn apply(&self, mv: MarkovMove) -> Result<Self> {
        match mv {
            MarkovMove::Conjugate(k) => {
                if k == 0 || k.unsigned_abs() as usize >= self.strands {
                    return Err(Error::StrandOutOfRange { letter: k, strands: self.strands });
                }
                let mut letters = Vec::with_capacity(self.letters.len() + 2);
                letters.push(-k);
                letters.extend_from_slice(&self.letters);
                letters.push(k);
                Ok(BraidWord { letters, strands: self.strands })
            }
            MarkovMove::StabilizePositive | MarkovMove::StabilizeNegative => {
                let b = self.strands as i32;
                let mut letters = self.letters.clone();
                letters.push(if mv == MarkovMove::StabilizePositive { b } else { -b });
                Ok(BraidWord { letters, strands: self.strands + 1 })
            }
            MarkovMove::BraidRelation(site) => self.braid_relation(site),
        }
    }

    pub fn stabilize_positive(&self) -> Self {
        self.apply(MarkovMove::StabilizePositive).expect("stabilization always applies")
    }

    pub fn stabilize_negative(&self) -> Self {
        self.apply(MarkovMove::StabilizeNegative).expect("stabilization always applies")
    }

    /// Sites where [`MarkovMove::BraidRelation`] applies.
    pub fn relation_sites(&self) -> Vec<usize> {
        (0..self.letters.len()).filter(|&s| self.braid_relation(s).is_ok()).collect()
    }

    fn braid_relation(&self, site: usize) -> Result<Self> {
        let w = &self.letters;
        let mut letters = w.clone();
        if site + 1 < w.len() && w[site].abs().abs_diff(w[site + 1].abs()) >= 2 {
            letters.swap(site, site + 1);
            return Ok(BraidWord { letters, strands: self.strands });
        }
        if site + 2 < w.len() {
            let (a, b, c) = (w[site], w[site + 1], w[site + 2]);
            let same_sign = a.signum() == b.signum() && b.signum() == c.signum();
            if same_sign && a == c && a.abs().abs_diff(b.abs()) == 1 {
                letters[site] = b;
                letters[site + 1] = a;
                letters[site + 2] = b;
                return Ok(BraidWord { letters, strands: self.strands });
            }
        }
        Err(Error::RelationNotApplicable(site))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", word.join(","))
    }
}

/// Parses `"3,3,-2,1"` or `"1,1,1@3"` (explicit strand count after `@`).
impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (word, strands) = match s.split_once('@') {
            Some((w, b)) => {
                let b = b
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| Error::MalformedWord(format!("bad strand count {b:?}: {e}")))?;
                (w, Some(b))
            }
            None => (s, None),
        };
        let word = word.trim().trim_start_matches('[').trim_end_matches(']');
        let letters = if word.trim().is_empty() {
            Vec::new()
        } else {
            word.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i32>()
                        .map_err(|e| Error::MalformedWord(format!("bad letter {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        BraidWord::new(letters, strands)
    }
}
