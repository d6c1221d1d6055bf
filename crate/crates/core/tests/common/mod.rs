#![allow(dead_code)]

use oddkh::braid::{BraidWord, MarkovMove};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random word with `1..=max_len` letters on at most `max_strands` strands.
pub fn random_braid(rng: &mut StdRng, max_strands: usize, max_len: usize) -> BraidWord {
    let b = rng.gen_range(2..=max_strands);
    let n = rng.gen_range(1..=max_len);
    let letters = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..b) as i32;
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect();
    BraidWord::new(letters, Some(b)).unwrap()
}

/// A move that keeps the transverse type, chosen among those that apply.
pub fn random_transverse_move(rng: &mut StdRng, braid: &BraidWord) -> MarkovMove {
    let sites = braid.relation_sites();
    loop {
        match rng.gen_range(0..3) {
            0 if braid.strands() > 1 => {
                let k = rng.gen_range(1..braid.strands()) as i32;
                return MarkovMove::Conjugate(if rng.gen_bool(0.5) { k } else { -k });
            }
            1 => return MarkovMove::StabilizePositive,
            2 if !sites.is_empty() => return MarkovMove::BraidRelation(sites[rng.gen_range(0..sites.len())]),
            _ => {}
        }
    }
}

pub fn word(letters: &[i32]) -> BraidWord {
    BraidWord::new(letters.to_vec(), None).unwrap()
}
