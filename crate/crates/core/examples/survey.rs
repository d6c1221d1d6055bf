//! Invariant statuses over the bundled corpus.
//!
//! cargo run --release --example survey

use oddkh::invariant::survey;

fn main() {
    let corpus = include_str!("corpus.jsonl");
    let report = survey(corpus, 20);
    for d in &report.diagnostics {
        eprintln!("skipped {d}");
    }
    print!("{}", report.to_table());
}
