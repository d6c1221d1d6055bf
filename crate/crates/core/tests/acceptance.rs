//! Acceptance checks. Runs without the test harness so every criterion
//! prints its own PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use oddkh::braid::BraidWord;
use oddkh::complex::{psi_bigrading, Coefficients, GradedComplex, Theory};
use oddkh::cube::SignedCube;
use oddkh::grid::{Direction, GridDiagram};
use oddkh::homology::{format_report, homology, BigradedGroup, HomologyGroup, ReportOptions};
use oddkh::intlinalg::{smith_normal_form, solve_min_multiple, verify_snf, Field, IntMatrix, row_reduce};
use oddkh::invariant::{check_positive_resolution, invariant_status, InvariantClass};
use oddkh::planar::SquareType;
use rand::Rng;

use common::{random_braid, random_transverse_move, rng, word};

type Outcome = Result<(), String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(free: usize, torsion: &[i64]) -> HomologyGroup {
    HomologyGroup { free, torsion: torsion.iter().map(|&d| BigInt::from(d)).collect() }
}

fn groups_of(h: &BigradedGroup) -> BTreeMap<(i64, i64), HomologyGroup> {
    h.iter().map(|(b, g)| (b, g.clone())).collect()
}

fn eight_nineteen() -> Outcome {
    let grid = GridDiagram::new(vec![0, 1, 6, 2, 5, 7, 8, 3, 4, 9], vec![6, 7, 8, 9, 1, 4, 5, 0, 2, 3]).unwrap();
    let braid = grid.to_braid(Direction::Right);
    ensure(braid.self_linking() == 5, || format!("sl = {}", braid.self_linking()))?;
    let h = homology(&GradedComplex::from_braid(&braid, Theory::Odd, Coefficients::Integers));
    let expected: BTreeMap<(i64, i64), HomologyGroup> = [
        ((0, 5), group(1, &[])),
        ((0, 7), group(1, &[])),
        ((2, 9), group(1, &[])),
        ((2, 11), group(1, &[])),
        ((4, 11), group(0, &[2])),
        ((4, 13), group(0, &[2])),
        ((5, 13), group(0, &[3])),
        ((5, 15), group(1, &[3])),
        ((5, 17), group(1, &[])),
    ]
    .into_iter()
    .collect();
    ensure(groups_of(&h) == expected, || format!("groups {:?}", groups_of(&h)))?;
    let report = format_report(&h, &ReportOptions { self_linking: Some(5), sigma: Some(6), wide: None });
    let listing = "KH'_( 0)(L) = Z^1[ 7] + Z^1[ 5]\n\
                   KH'_( 1)(L) = 0\n\
                   KH'_( 2)(L) = Z^1[11] + Z^1[ 9]\n\
                   KH'_( 3)(L) = 0\n\
                   KH'_( 4)(L) = Z/2[13] + Z/2[11]\n\
                   KH'_( 5)(L) = Z^1[17] + (Z^1 + Z/3)[15] + Z/3[13]\n";
    ensure(report.starts_with(listing), || format!("report:\n{report}"))?;
    ensure(report.ends_with("sigma = 6, sl = 5.\n"), || format!("report:\n{report}"))
}

fn invariant_fixtures() -> Outcome {
    let zero = ["3,3,3,3,-2,1,3,-2,1", "3,3,3,-2,1,3,-2,1,1"];
    let nonzero = ["4,4,3,-4,3,3,2,1,-3,-3,-2,1,3,2"];
    let grids = ["8,7,1,3,5,4,2,6,0;3,2,4,6,8,7,0,1,5", "8,7,0,3,5,4,6,1,2;3,1,4,6,8,7,2,5,0"];
    for w in zero {
        let s = invariant_status(&w.parse().unwrap(), Theory::Odd);
        ensure(s.is_zero(), || format!("{w}: {s}"))?;
    }
    for w in nonzero {
        let s = invariant_status(&w.parse().unwrap(), Theory::Odd);
        ensure(!s.is_zero(), || format!("{w}: {s}"))?;
    }
    for g in grids {
        let s = invariant_status(&g.parse::<GridDiagram>().unwrap().braid(), Theory::Odd);
        ensure(!s.is_zero(), || format!("{g}: {s}"))?;
    }
    Ok(())
}

fn unknot() -> Outcome {
    let u = BraidWord::unknot();
    let h = homology(&GradedComplex::from_braid(&u, Theory::Odd, Coefficients::Integers));
    let expected: BTreeMap<_, _> = [((0, -1), group(1, &[])), ((0, 1), group(1, &[]))].into_iter().collect();
    ensure(groups_of(&h) == expected, || format!("groups {:?}", groups_of(&h)))?;
    ensure(psi_bigrading(&u, Theory::Odd) == (0, -1), || "ψ not at (0,-1)".into())?;
    // a class of infinite order with divisibility 1 in ℤ generates it
    let s = invariant_status(&u, Theory::Odd);
    ensure(s.class == InvariantClass::NonTorsion && s.divisibility == Some(BigInt::from(1)), || format!("{s:?}"))
}

fn parity_of_three_cubes(cube: &SignedCube) -> bool {
    let n = cube.crossings();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let fixed = (1u64 << a) | (1 << b) | (1 << c);
                for root in (0..(1u64 << n)).filter(|r| r & fixed == 0) {
                    let faces = [
                        (root, a, b),
                        (root | 1 << c, a, b),
                        (root, a, c),
                        (root | 1 << b, a, c),
                        (root, b, c),
                        (root | 1 << a, b, c),
                    ];
                    let odd = faces
                        .iter()
                        .filter(|&&(r, x, y)| matches!(cube.square_type(r, x, y).unwrap(), SquareType::A | SquareType::X))
                        .count();
                    if odd % 2 == 1 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn property_suite() -> Outcome {
    let mut rng = rng(4);
    for _ in 0..200 {
        let braid = random_braid(&mut rng, 5, 8);
        let cube = SignedCube::build(&braid);
        ensure(cube.verify_skew(), || format!("[{braid}] not skew"))?;
        ensure(parity_of_three_cubes(&cube), || format!("[{braid}] has a 3-cube with odd A/X count"))?;
        let sl = braid.self_linking();
        for theory in [Theory::Odd, Theory::OddReduced, Theory::Even] {
            let c = GradedComplex::from_braid(&braid, theory, Coefficients::Integers);
            ensure(c.d_squared_vanishes(), || format!("[{braid}] {theory}: d∘d ≠ 0"))?;
            let psi = c.psi_chain().ok_or_else(|| format!("[{braid}] {theory}: no invariant"))?;
            ensure(c.apply_differential(&psi).is_zero(), || format!("[{braid}] {theory}: not a cycle"))?;
            let want = if theory == Theory::OddReduced { (0, sl + 1) } else { (0, sl) };
            ensure(psi.bigrading == want, || format!("[{braid}] {theory}: at {:?}", psi.bigrading))?;
        }
    }
    Ok(())
}

fn invariance_suite() -> Outcome {
    let mut rng = rng(5);
    for _ in 0..50 {
        let start = random_braid(&mut rng, 4, 5);
        let mut braid = start.clone();
        for _ in 0..rng.gen_range(1..=3) {
            braid = braid.apply(random_transverse_move(&mut rng, &braid)).unwrap();
        }
        let h0 = homology(&GradedComplex::from_braid(&start, Theory::Odd, Coefficients::Integers));
        let h1 = homology(&GradedComplex::from_braid(&braid, Theory::Odd, Coefficients::Integers));
        ensure(groups_of(&h0) == groups_of(&h1), || format!("[{start}] → [{braid}]: homology differs"))?;
        let (s0, s1) = (invariant_status(&start, Theory::Odd), invariant_status(&braid, Theory::Odd));
        ensure(s0 == s1, || format!("[{start}] → [{braid}]: {s0:?} vs {s1:?}"))?;
        let neg = invariant_status(&start.stabilize_negative(), Theory::Odd);
        ensure(neg.is_zero(), || format!("[{start}] negatively stabilized: {neg}"))?;
    }
    for letters in [&[1, 1, 1][..], &[1, 2, 1, 2]] {
        let b = word(letters);
        for i in 0..b.len() {
            ensure(check_positive_resolution(&b, i) == Ok(true), || format!("[{b}] at {i}"))?;
        }
    }
    let mut sites = 0;
    while sites < 10 {
        let b = random_braid(&mut rng, 5, 8);
        let positive: Vec<usize> = (0..b.len()).filter(|&i| b.letters()[i] > 0).collect();
        if positive.is_empty() {
            continue;
        }
        let i = positive[rng.gen_range(0..positive.len())];
        ensure(check_positive_resolution(&b, i) == Ok(true), || format!("[{b}] at {i}"))?;
        sites += 1;
    }
    Ok(())
}

fn reduced_suite() -> Outcome {
    let mut rng = rng(6);
    let mut braids: Vec<BraidWord> = (0..60).map(|_| random_braid(&mut rng, 5, 8)).collect();
    braids.extend([word(&[1, 1, 1]), word(&[1, -2, 1, -2]), word(&[1, 2, 3, 1, 2, 2, 3, 3])]);
    for braid in &braids {
        for k in [Coefficients::Rationals, Coefficients::PrimeField(2)] {
            let full = homology(&GradedComplex::from_braid(braid, Theory::Odd, k));
            let red = homology(&GradedComplex::from_braid(braid, Theory::OddReduced, k));
            let mut degrees: Vec<(i64, i64)> = full.iter().map(|(b, _)| b).collect();
            degrees.extend(red.iter().flat_map(|((r, q), _)| [(r, q - 1), (r, q + 1)]));
            for (r, q) in degrees {
                let lhs = full.get((r, q)).free;
                let rhs = red.get((r, q - 1)).free + red.get((r, q + 1)).free;
                ensure(lhs == rhs, || format!("[{braid}] over {k} at ({r},{q}): {lhs} vs {rhs}"))?;
            }
        }
        let (a, b) = (invariant_status(braid, Theory::Odd), invariant_status(braid, Theory::OddReduced));
        ensure(a.class == b.class, || format!("[{braid}]: {a:?} vs {b:?}"))?;
    }
    Ok(())
}

/// Column-echelon basis of the lattice spanned by the columns, by Euclid.
fn lattice_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut cols: Vec<Vec<BigInt>> =
        (0..a.cols()).map(|j| (0..a.rows()).map(|i| BigInt::from(a.get(i, j))).collect()).collect();
    let mut basis = Vec::new();
    for i in 0..a.rows() {
        loop {
            let mut live: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j][i].is_zero()).collect();
            if live.len() <= 1 {
                if let Some(&j) = live.first() {
                    basis.push(cols.swap_remove(j));
                }
                break;
            }
            live.sort_by(|&x, &y| cols[x][i].abs().cmp(&cols[y][i].abs()));
            let p = live[0];
            for &j in &live[1..] {
                let f = &cols[j][i] / &cols[p][i];
                let pivot = cols[p].clone();
                for (v, w) in cols[j].iter_mut().zip(&pivot) {
                    *v -= &f * w;
                }
            }
        }
    }
    basis
}

fn in_lattice(basis: &[Vec<BigInt>], b: &[BigInt]) -> bool {
    let mut rest = b.to_vec();
    for col in basis {
        let i = col.iter().position(|v| !v.is_zero()).expect("basis columns are nonzero");
        if !(&rest[i] % &col[i]).is_zero() {
            return false;
        }
        let f = &rest[i] / &col[i];
        for (v, w) in rest.iter_mut().zip(col) {
            *v -= &f * w;
        }
    }
    rest.iter().all(Zero::is_zero)
}

fn linear_algebra_oracle() -> Outcome {
    ensure(cfg!(debug_assertions), || "debug assertions are off, SNF is not self-verifying".into())?;
    let mut rng = rng(7);
    for _ in 0..500 {
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let a = IntMatrix::from_rows(rows).unwrap();
        let snf = smith_normal_form(&a);
        ensure(verify_snf(&a.to_dense(), &snf), || format!("SNF check failed on {a:?}"))?;
        let y: Vec<i64> = (0..m).map(|_| rng.gen_range(-5..=5)).collect();
        let got = solve_min_multiple(&a, &y).unwrap();
        let in_span = row_reduce(&a, Field::Rationals).solve(&y).is_some();
        let basis = lattice_basis(&a);
        let multiple = |k: i64| -> Vec<BigInt> { y.iter().map(|&v| BigInt::from(v * k)).collect() };
        match got {
            None => ensure(!in_span, || format!("{a:?}, {y:?}: none reported, but y is in the rational span"))?,
            Some(mm) => {
                let n = i64::try_from(&mm.n).unwrap();
                let ax: Vec<BigInt> = (0..m)
                    .map(|i| (0..a.cols()).map(|j| BigInt::from(a.get(i, j)) * &mm.witness[j]).sum())
                    .collect();
                ensure(ax == multiple(n), || format!("{a:?}, {y:?}: witness is wrong"))?;
                ensure(in_lattice(&basis, &multiple(n)), || format!("{a:?}, {y:?}: n = {n} not in lattice"))?;
                for k in 1..n {
                    ensure(!in_lattice(&basis, &multiple(k)), || format!("{a:?}, {y:?}: {k} < {n} works"))?;
                }
            }
        }
    }
    Ok(())
}

fn program_parity() -> Outcome {
    let trefoil = word(&[1, 1, 1]);
    let left = trefoil.mirror();
    ensure(left.letters() == [-1, -1, -1], || format!("mirror gave [{left}]"))?;
    let sum = trefoil.connect_sum(&left);
    ensure(sum.letters() == [1, 1, 1, -2, -2, -2], || format!("connect sum gave [{sum}]"))?;
    let mut out = Vec::new();
    let code = oddkh::cli::run(
        ["oddkh", "invariant", "--grid", "8,7,1,3,5,4,2,6,0;3,2,4,6,8,7,0,1,5"],
        &mut out,
        &mut std::io::sink(),
    );
    ensure(code == 0 && out == b"Inv NonZero\n", || format!("cli printed {:?}", String::from_utf8_lossy(&out)))?;
    let chiral: BraidWord = "3,3,-2,3,-2,1,3,-2,1".parse().unwrap();
    ensure(chiral.self_linking() == 0, || {
        format!("self-linking of [{chiral}] is {} on {} strands, expected 0", chiral.self_linking(), chiral.strands())
    })
}

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("8_19 odd homology", eight_nineteen),
        ("invariant fixtures", invariant_fixtures),
        ("unknot", unknot),
        ("property suite", property_suite),
        ("invariance suite", invariance_suite),
        ("reduced theory", reduced_suite),
        ("linear algebra oracle", linear_algebra_oracle),
        ("program parity", program_parity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = started.elapsed();
        match outcome {
            Ok(()) => println!("PASS {} {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
