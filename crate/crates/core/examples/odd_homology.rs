//! Odd Khovanov homology of 8_19 from a grid diagram.
//!
//! cargo run --release --example odd_homology

use oddkh::complex::{Coefficients, GradedComplex, Theory};
use oddkh::grid::{Direction, GridDiagram};
use oddkh::homology::{format_report, homology, ReportOptions};

fn main() -> oddkh::Result<()> {
    let grid = GridDiagram::new(vec![0, 1, 6, 2, 5, 7, 8, 3, 4, 9], vec![6, 7, 8, 9, 1, 4, 5, 0, 2, 3])?;
    let braid = grid.to_braid(Direction::Right);
    println!("braid: {:?}", braid.letters());
    let started = std::time::Instant::now();
    let odd = homology(&GradedComplex::from_braid(&braid, Theory::Odd, Coefficients::Integers));
    let reduced = homology(&GradedComplex::from_braid(&braid, Theory::OddReduced, Coefficients::Integers));
    let options = ReportOptions {
        self_linking: Some(braid.self_linking()),
        sigma: Some(6),
        wide: Some(reduced.diagonals().len() > 1),
    };
    print!("{}", format_report(&odd, &options));
    eprintln!("{:.2?}", started.elapsed());
    Ok(())
}
