//! Bigraded homology and its text and JSON reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{Bigrading, Coefficients, GradedComplex, LaurentPolynomial, Theory};
use crate::intlinalg::{integer_invariants, rank_over, IntegerInvariants};

/// One bigraded piece: `ℤ^free ⊕ ⊕ ℤ/d`, or a vector space of dimension `free`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub free: usize,
    /// Ascending, each dividing the next; empty over a field.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedGroup {
    pub theory: Theory,
    pub coefficients: Coefficients,
    /// Only nonzero groups are stored.
    groups: BTreeMap<Bigrading, HomologyGroup>,
}

impl BigradedGroup {
    pub fn from_groups(
        theory: Theory,
        coefficients: Coefficients,
        groups: impl IntoIterator<Item = (Bigrading, HomologyGroup)>,
    ) -> Self {
        let groups = groups.into_iter().filter(|(_, g)| !g.is_zero()).collect();
        BigradedGroup { theory, coefficients, groups }
    }

    pub fn get(&self, bigrading: Bigrading) -> HomologyGroup {
        self.groups.get(&bigrading).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bigrading, &HomologyGroup)> {
        self.groups.iter().map(|(&b, g)| (b, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Σ (-1)^r rank H_{r,Q} q^Q.
    pub fn euler_characteristic(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.groups.iter().map(|(&(r, q), g)| {
            let sign = if r.rem_euclid(2) == 0 { 1 } else { -1 };
            (q, sign * g.free as i64)
        }))
    }

    /// Distinct values of `Q - 2r` over the support.
    pub fn diagonals(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.groups.keys().map(|&(r, q)| q - 2 * r).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

enum Reduction {
    Integer(IntegerInvariants),
    Rank(usize),
}

impl Reduction {
    fn rank(&self) -> usize {
        match self {
            Reduction::Integer(inv) => inv.rank,
            Reduction::Rank(r) => *r,
        }
    }
}

/// Homology in every degree where the complex is complete.
pub fn homology(complex: &GradedComplex) -> BigradedGroup {
    let degrees = complex.complete_degrees();
    let wanted: Vec<Bigrading> = complex.bigradings().filter(|(r, _)| degrees.contains(r)).collect();
    let mut sources: Vec<Bigrading> = wanted.iter().flat_map(|&(r, q)| [(r - 1, q), (r, q)]).collect();
    sources.sort_unstable();
    sources.dedup();
    let coefficients = complex.coefficients();
    let reductions: BTreeMap<Bigrading, Reduction> = sources
        .par_iter()
        .map(|&bg| {
            let d = complex.differential(bg);
            let red = match coefficients.field() {
                None => Reduction::Integer(integer_invariants(&d)),
                Some(field) => Reduction::Rank(rank_over(&d, field)),
            };
            (bg, red)
        })
        .collect();
    let groups = wanted.into_iter().map(|(r, q)| {
        let outgoing = reductions[&(r, q)].rank();
        let incoming = &reductions[&(r - 1, q)];
        let free = complex.dim((r, q)) - outgoing - incoming.rank();
        let torsion = match incoming {
            Reduction::Integer(inv) => inv.torsion.clone(),
            Reduction::Rank(_) => Vec::new(),
        };
        ((r, q), HomologyGroup { free, torsion })
    });
    BigradedGroup::from_groups(complex.theory(), coefficients, groups)
}

/// Extra lines for [`format_report`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub self_linking: Option<i64>,
    pub sigma: Option<i64>,
    /// Whether the reduced homology spans more than one diagonal.
    pub wide: Option<bool>,
}

fn prefix(theory: Theory) -> &'static str {
    match theory {
        Theory::Odd => "KH'",
        Theory::OddReduced => "rKH'",
        Theory::Even => "KH",
    }
}

fn ring_symbol(c: Coefficients) -> String {
    match c {
        Coefficients::Integers => "Z".into(),
        Coefficients::Rationals => "Q".into(),
        Coefficients::PrimeField(p) => format!("F{p}"),
    }
}

fn summand_text(g: &HomologyGroup, ring: &str) -> String {
    let mut parts = Vec::new();
    if g.free > 0 {
        parts.push(format!("{ring}^{}", g.free));
    }
    parts.extend(g.torsion.iter().map(|d| format!("Z/{d}")));
    if parts.len() > 1 {
        format!("({})", parts.join(" + "))
    } else {
        parts.concat()
    }
}

/// One line per homological degree, quantum degrees descending:
/// `KH'_( 5)(L) = Z^1[17] + (Z^1 + Z/3)[15] + Z/3[13]`.
pub fn format_report(groups: &BigradedGroup, options: &ReportOptions) -> String {
    let mut out = String::new();
    let ring = ring_symbol(groups.coefficients);
    let degrees: Vec<i64> = groups.groups.keys().map(|b| b.0).collect();
    if let (Some(&lo), Some(&hi)) = (degrees.iter().min(), degrees.iter().max()) {
        for r in lo..=hi {
            let mut terms: Vec<(i64, &HomologyGroup)> =
                groups.groups.range((r, i64::MIN)..=(r, i64::MAX)).map(|(&(_, q), g)| (q, g)).collect();
            terms.reverse();
            let body = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.iter().map(|(q, g)| format!("{}[{q:2}]", summand_text(g, &ring))).collect::<Vec<_>>().join(" + ")
            };
            writeln!(out, "{}_({r:2})(L) = {body}", prefix(groups.theory)).expect("writing to a String");
        }
    }
    let mut tail = Vec::new();
    if let Some(s) = options.sigma {
        tail.push(format!("sigma = {s}"));
    }
    if let Some(sl) = options.self_linking {
        tail.push(format!("sl = {sl}"));
    }
    let wide = options.wide == Some(true);
    if wide || !tail.is_empty() {
        let mut line = String::new();
        if wide {
            line.push_str("Wide knot");
            if !tail.is_empty() {
                line.push_str(", ");
            }
        }
        line.push_str(&tail.join(", "));
        line.push('.');
        writeln!(out, "{line}").expect("writing to a String");
    }
    out
}

fn big_to_json(d: &BigInt) -> Value {
    match d.to_u64() {
        Some(v) => json!(v),
        None => json!(d.to_string()),
    }
}

pub fn to_json(groups: &BigradedGroup) -> Value {
    let list: Vec<Value> = groups
        .iter()
        .map(|((r, q), g)| {
            json!({
                "r": r,
                "q": q,
                "free": g.free,
                "torsion": g.torsion.iter().map(big_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "theory": groups.theory.to_string(),
        "coefficients": groups.coefficients.to_string(),
        "groups": list,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn kh(letters: &[i32], theory: Theory, c: Coefficients) -> BigradedGroup {
        let b = BraidWord::new(letters.to_vec(), None).unwrap();
        homology(&GradedComplex::from_braid(&b, theory, c))
    }

    #[test]
    fn unknot() {
        let h = homology(&GradedComplex::from_braid(&BraidWord::unknot(), Theory::Odd, Coefficients::Integers));
        let expect = HomologyGroup { free: 1, torsion: vec![] };
        assert_eq!(h.get((0, -1)), expect);
        assert_eq!(h.get((0, 1)), expect);
        assert_eq!(h.iter().count(), 2);
        assert_eq!(format_report(&h, &ReportOptions::default()), "KH'_( 0)(L) = Z^1[ 1] + Z^1[-1]\n");
        // one crossing on two strands is still the unknot
        assert_eq!(kh(&[1], Theory::Odd, Coefficients::Integers).iter().collect::<Vec<_>>(), h.iter().collect::<Vec<_>>());
    }

    #[test]
    fn trefoil_even_has_torsion() {
        // even Khovanov homology of the right trefoil: ℤ/2 at (3, 7)
        let h = kh(&[1, 1, 1], Theory::Even, Coefficients::Integers);
        assert_eq!(h.get((3, 7)).torsion, vec![BigInt::from(2)]);
        assert_eq!(h.get((0, 1)).free, 1);
        assert_eq!(h.get((0, 3)).free, 1);
        assert_eq!(h.get((2, 5)).free, 1);
        assert_eq!(h.get((3, 9)).free, 1);
    }

    #[test]
    fn odd_trefoil_and_its_reduction() {
        let h = kh(&[1, 1, 1], Theory::Odd, Coefficients::Integers);
        let r = kh(&[1, 1, 1], Theory::OddReduced, Coefficients::Integers);
        // a thin knot: reduced homology on a single diagonal, free of rank 3
        assert_eq!(r.diagonals().len(), 1);
        assert_eq!(r.iter().map(|(_, g)| g.free).sum::<usize>(), 3);
        assert_eq!(h.euler_characteristic(), kh(&[1, 1, 1], Theory::Even, Coefficients::Integers).euler_characteristic());
    }

    #[test]
    fn report_layout() {
        let g = |free, t: &[i64]| HomologyGroup { free, torsion: t.iter().map(|&d| BigInt::from(d)).collect() };
        let h = BigradedGroup::from_groups(
            Theory::Odd,
            Coefficients::Integers,
            [((0, 7), g(1, &[])), ((0, 5), g(1, &[])), ((2, 15), g(1, &[3])), ((2, 13), g(0, &[3]))],
        );
        let text = format_report(&h, &ReportOptions { self_linking: Some(5), sigma: Some(6), wide: Some(true) });
        assert_eq!(
            text,
            "KH'_( 0)(L) = Z^1[ 7] + Z^1[ 5]\nKH'_( 1)(L) = 0\nKH'_( 2)(L) = (Z^1 + Z/3)[15] + Z/3[13]\nWide knot, sigma = 6, sl = 5.\n"
        );
        let js = to_json(&h);
        assert_eq!(js["groups"][2]["torsion"][0], 3);
        assert_eq!(js["theory"], "odd");
    }
}
