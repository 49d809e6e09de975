//! Exact rational arithmetic for divisor and curve classes on the moduli
//! space of stable genus-one curves with `n` marked points.
//!
//! Classes live in the basis `λ, δ_{0;S}` (`|S| ≥ 2`), with `δ_irr = 12λ`.
//! On top of that sit the classes of the loci `Σ a_i p_i = 0`, forgetful
//! pullbacks, test curves with negative-pairing certificates, the Cremona-type
//! automorphism of the 3-pointed space, the quotient by the symmetric group,
//! torus torsion counts, and the age arithmetic of the Reid–Tai criterion.
//!
//! ```
//! use m1n::{hain_class, validate_signature};
//!
//! let d = hain_class(&validate_signature(&[1, 1, -2]).unwrap()).unwrap();
//! assert_eq!(d.to_string(), "2λ - δ{1,2} + 2δ{1,3} + 2δ{2,3} + 2δ{1,2,3}");
//! ```

pub mod arith;
pub mod class_algebra;
pub mod cli;
pub mod cremona;
pub mod error;
pub mod forgetful;
pub mod hain;
pub mod rational;
pub mod reid_tai;
pub mod subset;
pub mod sym;
pub mod test_curves;
pub mod torsion;
pub mod verify;

pub use class_algebra::{
    canonical_class, delta_irr_class, pair, psi_class, relabel, CurveClass, DivisorClass,
    Permutation,
};
pub use error::{Error, Result};
pub use hain::{
    component_class, component_count, decompose, grr_degree, hain_class, sigma_fn,
    validate_signature, FamilyData, Signature,
};
pub use rational::Q;
pub use subset::Subset;
