//! Pulling classes back along forgetful maps.

use m1n::class_algebra::DivisorClass;
use m1n::forgetful::{pullback, pulled_back_hain_triple};
use m1n::{hain_class, validate_signature};

fn main() -> m1n::Result<()> {
    let d12 = DivisorClass::boundary_labels(3, &[1, 2])?;
    println!(
        "π*δ{{1,2}} (3 -> 4 points) = {}",
        pullback(&d12, 4, &[1, 2, 3])?
    );
    println!(
        "same, keeping points 4,2,1 = {}",
        pullback(&d12, 4, &[4, 2, 1])?
    );

    let a = validate_signature(&[2, -1, -1])?;
    let base = hain_class(&a)?;
    let up = pullback(&base, 5, &[1, 2, 3])?;
    println!("π*D{a} on 5 points = {up}");
    assert_eq!(up, pulled_back_hain_triple(5, 2, -1)?);

    // Padding with zeros gives the same class.
    let padded = validate_signature(&[2, -1, -1, 0, 0])?;
    assert_eq!(hain_class(&padded)?, up);
    println!("equal to D{padded}");
    Ok(())
}
