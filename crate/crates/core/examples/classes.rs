//! Basic classes and their arithmetic: λ, δ_irr, ψ_i, K, relabeling, JSON.

use m1n::class_algebra::{canonical_class, delta_irr_class, psi_class, relabel, Permutation};
use m1n::rational::frac;

fn main() -> m1n::Result<()> {
    let n = 4;
    let k = canonical_class(n)?;
    println!("K      = {k}");
    println!("δ_irr  = {}", delta_irr_class(n)?);
    for i in 1..=n {
        println!("ψ_{i}    = {}", psi_class(n, i)?);
    }

    // ψ_1 - (1/12)δ_irr lies in the span of the boundary.
    let d = psi_class(n, 1)?.combine(&frac(-1, 12), &delta_irr_class(n)?)?;
    println!("ψ_1 - δ_irr/12 = {d}");

    let swap = Permutation::transposition(n as usize, 1, 4)?;
    println!(
        "ψ_1 relabeled by (1 4) = {}",
        relabel(&swap, &psi_class(n, 1)?)?
    );

    println!("{}", serde_json::to_string(&k).unwrap());
    Ok(())
}
