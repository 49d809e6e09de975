//! The automorphism f of the 3-pointed space: its matrix, the pushforward
//! identities, and the reduction of any primitive triple to (1,1,-2).

use m1n::cremona::{
    f_inverse_pushforward, f_matrix, f_pushforward, reduce_signature, BASIS_LABELS,
};
use m1n::rational::display_q;
use m1n::{hain_class, validate_signature};

fn main() -> m1n::Result<()> {
    println!("f_* in the basis {BASIS_LABELS:?} (columns are images):");
    for row in f_matrix() {
        let cells: Vec<String> = row.iter().map(|x| format!("{:>3}", display_q(x))).collect();
        println!("  [{}]", cells.join(" "));
    }
    let d = hain_class(&validate_signature(&[2, -1, -1])?)?;
    println!("f_*D(2,-1,-1)    = {}", f_pushforward(&d)?);
    let d = hain_class(&validate_signature(&[-1, 2, -1])?)?;
    println!("f⁻¹_*D(-1,2,-1)  = {}", f_inverse_pushforward(&d)?);

    let sig = validate_signature(&[13, -21, 8])?;
    let trace = reduce_signature(&sig)?;
    println!("{} reduces in {} f-steps:", sig, trace.f_steps());
    for (m, s) in trace.steps.iter().zip(trace.replay()?.iter().skip(1)) {
        println!("  {:<40} -> {s}", serde_json::to_string(m).unwrap());
    }
    Ok(())
}
