//! Unreduced odd homology over a field is two shifted copies of the reduced one.

use oddkh::complex::{Coefficients, GradedComplex, Theory};
use oddkh::homology::{format_report, homology, ReportOptions};

fn main() -> oddkh::Result<()> {
    let braid = "1,-2,1,-2,1".parse()?;
    for coefficients in [Coefficients::Rationals, Coefficients::PrimeField(2)] {
        let full = homology(&GradedComplex::from_braid(&braid, Theory::Odd, coefficients));
        let reduced = homology(&GradedComplex::from_braid(&braid, Theory::OddReduced, coefficients));
        print!("{}", format_report(&reduced, &ReportOptions::default()));
        for ((r, q), g) in full.iter() {
            let split = reduced.get((r, q - 1)).free + reduced.get((r, q + 1)).free;
            println!("  ({r},{q}): {} = {split}", g.free);
        }
    }
    Ok(())
}
