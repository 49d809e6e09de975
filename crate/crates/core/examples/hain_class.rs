//! The class of the locus `Σ a_i p_i = 0` for a few signatures, with and
//! without zero entries.

use m1n::{hain_class, validate_signature};

fn main() -> m1n::Result<()> {
    for a in [
        &[1, 1, -2][..],
        &[2, -1, -1],
        &[3, -5, 2],
        &[1, 2, -3, 0],
        &[1, 1, 1, -3],
        &[4, -4],
    ] {
        let sig = validate_signature(a)?;
        println!("D{sig} = {}", hain_class(&sig)?);
    }
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    if !args.is_empty() {
        let sig = validate_signature(&args)?;
        println!("D{sig} = {}", hain_class(&sig)?);
    }
    Ok(())
}
