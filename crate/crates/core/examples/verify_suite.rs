//! Runs the verification suite with an optional seed.

use m1n::verify::{run_all, DEFAULT_SEED};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let results = run_all(seed);
    for r in &results {
        println!("{r}");
    }
    if results.iter().any(|r| !r.passed) {
        std::process::exit(1);
    }
}
