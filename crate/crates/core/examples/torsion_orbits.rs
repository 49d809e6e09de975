//! Orbits of the two shears on (ℤ/a)² and exact-order counts.

use m1n::arith::eta;
use m1n::sigma_fn;
use m1n::torsion::{exact_order_count, monodromy_orbits, orbits_csv};

fn main() -> m1n::Result<()> {
    let a = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    let orbits = monodromy_orbits(a)?;
    println!(
        "a = {a}: {} orbits, η(a) = {}",
        orbits.len(),
        eta(a as i64)?
    );
    print!("{}", orbits_csv(&orbits));

    for t in [1u64, 2, 3, 4, 6, 12] {
        println!(
            "points of exact order {t:>2} in (Z/{t})^2: {:>3}   σ({t}) = {}",
            exact_order_count(t, t)?,
            sigma_fn(t as i64)?
        );
    }
    Ok(())
}
