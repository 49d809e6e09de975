//! Extremality certificates: the curve X against D_a on three points, the
//! pulled-back version on more points, and the infinite ray family.

use m1n::forgetful::pulled_back_certificate;
use m1n::test_curves::{certify_extremal, certify_triple, extremal_ray_family, x_curve};
use m1n::validate_signature;

fn main() -> m1n::Result<()> {
    for a in [[1, 1, -2], [2, -1, -1], [5, -3, -2], [4, -2, -2]] {
        let r = certify_triple(&validate_signature(&a)?)?;
        println!("{a:?}: X·D = {}  {:?}", r.pairing, r.verdict);
    }

    // Without the geometric assumptions a negative number certifies nothing.
    let a = validate_signature(&[1, 1, -2])?;
    let bare = certify_extremal(&m1n::hain_class(&a)?, &x_curve(&a)?, None, None)?;
    println!(
        "no assumptions: pairing {} -> {:?}",
        bare.pairing, bare.verdict
    );

    let c = pulled_back_certificate(6, 3, -1)?;
    println!(
        "pulled back to 6 points: pairing {} {:?}",
        c.pairing, c.verdict
    );

    for k in 1..=4 {
        let m = extremal_ray_family(k)?;
        println!("k = {k}: D{} = {} · ({})", m.signature, k * (k + 1), m.ray);
    }
    Ok(())
}
