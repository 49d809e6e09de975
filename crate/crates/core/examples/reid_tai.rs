//! Ages of automorphisms and the Reid–Tai verdict.

use m1n::reid_tai::{age, combined_fixtures, fixtures, reid_tai_check, AgeProfile};

fn main() -> m1n::Result<()> {
    for f in fixtures() {
        println!("{:<36} {}  age {}", f.case, f.profile, age(&f.profile));
    }
    for p in combined_fixtures() {
        println!("combined {p}: age {}", age(&p));
    }

    let report = reid_tai_check(&[
        AgeProfile::new(2, vec![1, 1])?,
        AgeProfile::new(2, vec![1, 0, 0])?,
        AgeProfile::new(4, vec![2, 0])?,
        AgeProfile::new(5, vec![1, 1, 0])?,
    ]);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}
