//! A non-primitive signature splits into one component per divisor of its gcd.

use m1n::hain::{component_count, decompose, sigma_fn, sum_components};
use m1n::validate_signature;

fn main() -> m1n::Result<()> {
    let sig = validate_signature(&[6, -2, -4])?;
    println!("D{sig} has {} components", component_count(&sig)?);
    let parts = decompose(&sig)?;
    for (t, c) in &parts {
        println!("  t = {t} (σ = {:>2}): {c}", sigma_fn(*t as i64)?);
    }
    let total = sum_components(sig.n(), &parts)?;
    println!("sum     = {total}");
    println!("D{sig} = {}", m1n::hain_class(&sig)?);

    // Two points: the diagonal is a boundary divisor, not a component.
    for m in [2, 4, 6, 12] {
        let s = validate_signature(&[m, -m])?;
        println!("D{s}: {} components", component_count(&s)?);
    }
    Ok(())
}
