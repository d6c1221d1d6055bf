//! Status of the transverse invariant on the published fixtures.
//!
//! cargo run --release --example invariant

use oddkh::braid::BraidWord;
use oddkh::complex::Theory;
use oddkh::grid::GridDiagram;
use oddkh::invariant::invariant_status;

fn main() -> oddkh::Result<()> {
    let words = ["3,3,3,3,-2,1,3,-2,1", "3,3,3,-2,1,3,-2,1,1", "4,4,3,-4,3,3,2,1,-3,-3,-2,1,3,2"];
    let grids = ["8,7,1,3,5,4,2,6,0;3,2,4,6,8,7,0,1,5", "8,7,0,3,5,4,6,1,2;3,1,4,6,8,7,2,5,0"];
    let mut braids: Vec<(String, BraidWord)> = Vec::new();
    for w in words {
        braids.push((w.to_string(), w.parse()?));
    }
    for g in grids {
        braids.push((g.to_string(), g.parse::<GridDiagram>()?.braid()));
    }
    for (label, braid) in &braids {
        let started = std::time::Instant::now();
        let odd = invariant_status(braid, Theory::Odd);
        let reduced = invariant_status(braid, Theory::OddReduced);
        println!("{label:<40} sl = {:>2}  odd: {odd:<16} reduced: {reduced:<16} ({:.2?})", braid.self_linking(), started.elapsed());
    }
    Ok(())
}
