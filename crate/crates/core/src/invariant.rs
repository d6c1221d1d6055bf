//! The transverse invariant in homology: vanishing, torsion order and
//! divisibility, plus the survey driver over a corpus of braids and grids.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::braid::BraidWord;
use crate::complex::{psi_bigrading, Coefficients, GradedComplex, Theory};
use crate::exterior::{map_monomial, normalize, wedge_left};
use crate::grid::GridDiagram;
use crate::intlinalg::{analyze_class, row_reduce};
use crate::planar::vertex_circles;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantClass {
    Zero,
    /// Smallest `n ≥ 2` with `n ψ` a boundary.
    Torsion(BigInt),
    NonTorsion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantStatus {
    pub class: InvariantClass,
    /// Largest `m` with `ψ = m z` in homology; `None` for the zero class.
    pub divisibility: Option<BigInt>,
}

impl InvariantStatus {
    pub fn is_zero(&self) -> bool {
        self.class == InvariantClass::Zero
    }

    /// `Zero` or `NonZero`, torsion folded into the latter.
    pub fn short(&self) -> &'static str {
        if self.is_zero() {
            "Zero"
        } else {
            "NonZero"
        }
    }

    pub fn to_json(&self) -> Value {
        let num = |d: &BigInt| d.to_u64().map_or_else(|| json!(d.to_string()), |v| json!(v));
        let (class, order) = match &self.class {
            InvariantClass::Zero => ("zero", Value::Null),
            InvariantClass::Torsion(n) => ("torsion", num(n)),
            InvariantClass::NonTorsion => ("non-torsion", Value::Null),
        };
        json!({
            "class": class,
            "order": order,
            "divisibility": self.divisibility.as_ref().map_or(Value::Null, num),
            "nonzero": !self.is_zero(),
        })
    }
}

/// The status line: `Inv Zero`, `Inv Torsion n` or `Inv NonZero`.
impl fmt::Display for InvariantStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.class {
            InvariantClass::Zero => f.pad("Inv Zero"),
            InvariantClass::Torsion(n) => f.pad(&format!("Inv Torsion {n}")),
            InvariantClass::NonTorsion => f.pad("Inv NonZero"),
        }
    }
}

/// Status of ψ (ψ̄ for the reduced theory) over ℤ.
pub fn invariant_status(braid: &BraidWord, theory: Theory) -> InvariantStatus {
    invariant_status_over(braid, theory, Coefficients::Integers)
}

/// Over a field there is no torsion: the class is either zero or not.
pub fn invariant_status_over(braid: &BraidWord, theory: Theory, coefficients: Coefficients) -> InvariantStatus {
    let complex = GradedComplex::around_invariant(braid, theory, coefficients);
    status_in(&complex)
}

/// Reads the invariant's class off any complex that contains degrees -1 and 0
/// at its quantum grading.
pub fn status_in(complex: &GradedComplex) -> InvariantStatus {
    let braid = complex.braid();
    let bigrading = psi_bigrading(braid, complex.theory());
    assert_eq!(bigrading, expected_bigrading(braid, complex.theory()), "invariant grading");
    let psi = complex.psi_chain().expect("the invariant's group is part of the complex");
    assert!(complex.apply_differential(&psi).is_zero(), "the invariant is a cycle");
    let y = psi.to_dense(complex.dim(bigrading));
    let a = complex.differential((bigrading.0 - 1, bigrading.1));
    if let Some(field) = complex.coefficients().field() {
        return match row_reduce(&a, field).solve(&y) {
            Some(_) => InvariantStatus { class: InvariantClass::Zero, divisibility: None },
            None => InvariantStatus { class: InvariantClass::NonTorsion, divisibility: Some(BigInt::from(1)) },
        };
    }
    let analysis = analyze_class(&a, &y).expect("vector matches the target of the differential");
    let class = match analysis.order {
        None => InvariantClass::NonTorsion,
        Some(n) if n == BigInt::from(1) => InvariantClass::Zero,
        Some(n) => InvariantClass::Torsion(n),
    };
    InvariantStatus { class, divisibility: analysis.divisibility }
}

/// `(0, sl)` recomputed from the circles of the braid-like resolution.
fn expected_bigrading(braid: &BraidWord, theory: Theory) -> (i64, i64) {
    let alpha = braid.oriented_resolution();
    let k = vertex_circles(braid, alpha).len() as i64;
    let g = if theory == Theory::OddReduced { k - 1 } else { k };
    let h = alpha.count_ones() as i64;
    let (np, nm) = (braid.positive_count() as i64, braid.negative_count() as i64);
    (h - nm, g - 2 * g + h + np - 2 * nm)
}

/// True iff the invariant of the negative stabilization vanishes.
pub fn check_negative_stabilization(braid: &BraidWord) -> bool {
    invariant_status(&braid.stabilize_negative(), Theory::Odd).is_zero()
}

/// Chain-level check that the 1-handle at a positive crossing followed by the
/// R1 move carries ψ̃(B) to ±ψ̃ of the braid with that letter deleted.
pub fn check_positive_resolution(braid: &BraidWord, index: usize) -> Result<bool> {
    let letter = *braid.letters().get(index).ok_or(Error::IndexError { index, len: braid.len() })?;
    if letter <= 0 {
        return Err(Error::NotPositiveCrossing(index));
    }
    let smoothed = braid.delete_letter(index)?;
    let src = vertex_circles(braid, braid.oriented_resolution());
    let tgt = vertex_circles(&smoothed, smoothed.oriented_resolution());
    let b = braid.strands();
    if src.len() != b || tgt.len() != b {
        return Ok(false);
    }
    let full = (1u64 << b) - 1;
    // the handle splits off a small circle, numbered b, from the circle on the
    // left of the crossing: x ↦ (v_c - v_b) ∧ x
    let c = src.sites[index][0] as usize;
    let mut terms = Vec::new();
    for (g, coef) in [(c, 1i64), (b, -1)] {
        if let Some(s) = wedge_left(full, g) {
            terms.push((full | 1 << g, coef * s));
        }
    }
    let image = normalize(terms);
    let [(mask, coef)] = image[..] else { return Ok(false) };
    if mask >> b & 1 == 0 {
        return Ok(false);
    }
    // R1: v_b ∧ x ↦ x
    let rest = mask & !(1u64 << b);
    let coef = coef * wedge_left(rest, b).expect("v_b is not in the rest");
    let map: Vec<u8> = src.labels.iter().map(|l| tgt.labels.binary_search(l).map_or(u8::MAX, |i| i as u8)).collect();
    if map.contains(&u8::MAX) {
        return Ok(false);
    }
    Ok(match map_monomial(rest, &map) {
        Some((s, m)) => m == full && (s * coef).abs() == 1,
        None => false,
    })
}

/// One corpus line: `{"name":…, "braid":"…"}` or `{"name":…, "grid":"xs;os"}`,
/// optionally with `"sigma"` and `"alternating"`.
#[derive(Debug, Clone, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(default)]
    pub braid: Option<WordSpec>,
    #[serde(default)]
    pub grid: Option<String>,
    #[serde(default)]
    pub sigma: Option<i64>,
    #[serde(default)]
    pub alternating: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum WordSpec {
    Text(String),
    Letters(Vec<i32>),
}

impl CorpusEntry {
    pub fn braid_word(&self) -> Result<BraidWord> {
        match (&self.braid, &self.grid) {
            (Some(WordSpec::Text(s)), None) => s.parse(),
            (Some(WordSpec::Letters(l)), None) => BraidWord::new(l.clone(), None),
            (None, Some(g)) => Ok(g.parse::<GridDiagram>()?.braid()),
            _ => Err(Error::Parse(format!("entry {:?} needs exactly one of braid or grid", self.name))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyRow {
    pub name: String,
    pub strands: usize,
    pub crossings: usize,
    pub negative_ratio: f64,
    pub self_linking: i64,
    pub sigma: Option<i64>,
    pub odd: InvariantStatus,
    pub reduced: InvariantStatus,
    pub even: InvariantStatus,
    /// `sl = σ - 1`, when σ is known.
    pub sl_is_sigma_minus_one: Option<bool>,
    /// For alternating entries with known σ: `sl + 1 ≠ σ` forces a zero invariant.
    pub alternating_consistent: Option<bool>,
}

impl SurveyRow {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "strands": self.strands,
            "crossings": self.crossings,
            "negative_ratio": self.negative_ratio,
            "sl": self.self_linking,
            "sigma": self.sigma,
            "odd": self.odd.to_json(),
            "reduced": self.reduced.to_json(),
            "even": self.even.to_json(),
            "sl_is_sigma_minus_one": self.sl_is_sigma_minus_one,
            "alternating_consistent": self.alternating_consistent,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SurveyReport {
    pub rows: Vec<SurveyRow>,
    /// One line per skipped corpus entry.
    pub diagnostics: Vec<String>,
}

impl SurveyReport {
    pub fn to_table(&self) -> String {
        let flag = |f: Option<bool>| match f {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "-",
        };
        let mut out = format!(
            "{:<16} {:>2} {:>3} {:>7} {:>4} {:>5}  {:<8}{:<8}{:<8}{:<10}{}\n",
            "name", "b", "n", "n-/n", "sl", "sigma", "odd", "reduced", "even", "sl=s-1", "alt-check"
        );
        for r in &self.rows {
            let sigma = r.sigma.map_or("-".to_string(), |s| s.to_string());
            out.push_str(&format!(
                "{:<16} {:>2} {:>3} {:>7.4} {:>4} {:>5}  {:<8}{:<8}{:<8}{:<10}{}\n",
                r.name,
                r.strands,
                r.crossings,
                r.negative_ratio,
                r.self_linking,
                sigma,
                r.odd.short(),
                r.reduced.short(),
                r.even.short(),
                flag(r.sl_is_sigma_minus_one),
                flag(r.alternating_consistent)
            ));
        }
        out
    }
}

pub fn survey_row(name: &str, braid: &BraidWord, sigma: Option<i64>, alternating: bool) -> SurveyRow {
    let n = braid.len();
    let sl = braid.self_linking();
    let odd = invariant_status(braid, Theory::Odd);
    let alternating_consistent = match sigma {
        Some(s) if alternating => Some(sl + 1 == s || odd.is_zero()),
        _ => None,
    };
    SurveyRow {
        name: name.to_string(),
        strands: braid.strands(),
        crossings: n,
        negative_ratio: if n == 0 { 0.0 } else { braid.negative_count() as f64 / n as f64 },
        self_linking: sl,
        sigma,
        reduced: invariant_status(braid, Theory::OddReduced),
        even: invariant_status(braid, Theory::Even),
        odd,
        sl_is_sigma_minus_one: sigma.map(|s| sl == s - 1),
        alternating_consistent,
    }
}

/// Runs every corpus line (JSON lines; blank lines and `#` comments ignored).
/// Rows come back in corpus order.
pub fn survey(corpus: &str, max_crossings: usize) -> SurveyReport {
    let mut diagnostics = Vec::new();
    let mut jobs = Vec::new();
    for (lineno, line) in corpus.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed = serde_json::from_str::<CorpusEntry>(line)
            .map_err(|e| Error::Parse(e.to_string()))
            .and_then(|e| e.braid_word().map(|b| (e, b)));
        match parsed {
            Ok((_, b)) if b.len() > max_crossings => diagnostics.push(format!(
                "line {}: {}",
                lineno + 1,
                Error::TooManyCrossings { crossings: b.len(), limit: max_crossings }
            )),
            Ok(job) => jobs.push(job),
            Err(e) => diagnostics.push(format!("line {}: {e}", lineno + 1)),
        }
    }
    let rows = jobs
        .par_iter()
        .map(|(e, b)| survey_row(&e.name, b, e.sigma, e.alternating.unwrap_or(false)))
        .collect();
    SurveyReport { rows, diagnostics }
}
