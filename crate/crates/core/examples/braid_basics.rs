//! Braid words: self-linking, mirror, connected sum, Markov moves.

use oddkh::braid::{BraidWord, MarkovMove};

fn main() -> oddkh::Result<()> {
    let chiral: BraidWord = "3,3,-2,3,-2,1,3,-2,1".parse()?;
    println!("[{chiral}] on {} strands, sl = {}", chiral.strands(), chiral.self_linking());
    println!("mirror  [{}]", chiral.mirror());
    println!("reverse [{}]", chiral.reverse());

    let right = BraidWord::new(vec![1, 1, 1], None)?;
    let left = right.mirror();
    println!("[{right}] # [{left}] = [{}]", right.connect_sum(&left));

    let moved = right
        .apply(MarkovMove::Conjugate(1))?
        .apply(MarkovMove::StabilizePositive)?;
    println!("after conjugation and stabilization: [{moved}], sl = {}", moved.self_linking());
    println!("negative stabilization: sl = {}", right.stabilize_negative().self_linking());
    Ok(())
}
