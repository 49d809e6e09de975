//! Classes on the quotient by the symmetric group and the moving curves
//! that force an effective class into the boundary cone.

use m1n::class_algebra::canonical_class;
use m1n::rational::{display_q, frac, q};
use m1n::sym::{
    boundary_cone_member, certificate_curves, nonboundary_constraints_check, symmetrize,
    SymDivisorClass,
};

fn main() -> m1n::Result<()> {
    let n = 5;
    for c in certificate_curves(n, 1)? {
        let p: Vec<String> = c.pairings.iter().map(display_q).collect();
        println!(
            "{:<4} δ̃irr {:>2}   δ̃2..δ̃{n}: {}",
            c.name,
            display_q(&c.irr),
            p.join(" ")
        );
    }

    let k = symmetrize(&canonical_class(n as i64)?)?;
    println!(
        "K ↦ {k}, in the boundary cone: {}",
        boundary_cone_member(&k)
    );

    for d in [
        SymDivisorClass::new(n, q(1), vec![q(0), q(1), q(2), q(3)])?,
        SymDivisorClass::new(n, frac(1, 12), vec![q(1), q(1), q(1), q(2)])?,
        SymDivisorClass::delta(n, 3)?,
    ] {
        let r = nonboundary_constraints_check(&d, 1)?;
        let vals: Vec<String> = r.entries.iter().map(|e| display_q(&e.pairing)).collect();
        println!(
            "{d}: pairings [{}], all >= 0: {}, boundary generator: {}",
            vals.join(", "),
            r.all_nonnegative,
            r.boundary_exempt
        );
    }
    Ok(())
}
