//! Jones polynomials as graded Euler characteristics.

use oddkh::braid::BraidWord;
use oddkh::complex::{jones_polynomial, Coefficients, GradedComplex, Theory};
use oddkh::homology::homology;

fn main() -> oddkh::Result<()> {
    for word in ["", "1,1,1", "-1,-1,-1", "1,-2,1,-2", "1,1,1,1,1"] {
        let braid: BraidWord = word.parse()?;
        let jones = jones_polynomial(&braid);
        let chi = homology(&GradedComplex::from_braid(&braid, Theory::Odd, Coefficients::Rationals)).euler_characteristic();
        assert_eq!(jones, chi);
        println!("[{braid}]: {jones}");
    }
    Ok(())
}
