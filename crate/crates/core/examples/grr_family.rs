//! Degree of D_a on the base of a one-parameter family of pointed curves,
//! two ways: the Riemann–Roch expression and the pairing with the base curve.

use m1n::hain::{family_invariants, grr_degree, FamilyData};
use m1n::subset::Subset;
use m1n::{hain_class, pair, validate_signature};

fn main() -> m1n::Result<()> {
    let n = 4;
    let f = FamilyData::new(
        n,
        24,
        [
            (Subset::from_labels([1, 2], n)?, 3),
            (Subset::from_labels([2, 3, 4], n)?, 1),
            (Subset::full(n), 2),
        ],
    )?;
    println!("{}", serde_json::to_string(&f).unwrap());
    println!(
        "{}",
        serde_json::to_string(&family_invariants(&f, 1, 2)?).unwrap()
    );

    for a in [[1, 2, -4, 1], [3, -1, -1, -1], [2, -2, 1, -1]] {
        let sig = validate_signature(&a)?;
        let grr = grr_degree(&sig, &f)?;
        let b = pair(&f.curve_class(), &hain_class(&sig)?)?;
        println!("a = {sig}: GRR {grr}, B·D_a {b}, difference {}", &grr - &b);
    }
    Ok(())
}
