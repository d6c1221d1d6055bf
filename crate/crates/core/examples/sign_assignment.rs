//! The signed cube of resolutions: square types, edge signs, skew check.

use oddkh::braid::BraidWord;
use oddkh::cube::SignedCube;
use oddkh::planar::resolve;

fn main() -> oddkh::Result<()> {
    let braid: BraidWord = "1,2,1,2".parse()?;
    let cube = SignedCube::build(&braid);
    for c1 in 0..braid.len() {
        for c2 in c1 + 1..braid.len() {
            println!("square at 0 on ({c1},{c2}): {:?}", cube.square_type(0, c1, c2)?);
        }
    }
    println!("skew: {}", cube.verify_skew());
    let alpha = braid.oriented_resolution();
    println!("braid-like resolution has {} circles", resolve(&braid, alpha).circles.len());
    print!("{}", cube.dump().lines().take(8).collect::<Vec<_>>().join("\n"));
    println!();
    Ok(())
}
