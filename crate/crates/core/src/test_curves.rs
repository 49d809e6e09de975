//! Test curves and the negative-pairing extremality certificate.
//!
//! A moving curve `C` in an irreducible effective divisor `D` with `C·D < 0`
//! forces `D` to be extremal and rigid. Irreducibility and movingness are
//! geometric facts the caller supplies as cited assumptions; the checker
//! computes the pairing and refuses a valid verdict when either is missing.

use serde::Serialize;

use crate::class_algebra::{pair, CurveClass, DivisorClass};
use crate::error::{Error, Result};
use crate::hain::{hain_class, validate_signature, Signature};
use crate::rational::{frac, q, Q};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssumptionKind {
    IrreducibleDivisor,
    MovingCurve,
}

/// A geometric fact taken on trust, with the justification the caller cites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assumption {
    pub kind: AssumptionKind,
    pub citation: String,
}

impl Assumption {
    pub fn irreducible(citation: impl Into<String>) -> Self {
        Assumption {
            kind: AssumptionKind::IrreducibleDivisor,
            citation: citation.into(),
        }
    }

    pub fn moving(citation: impl Into<String>) -> Self {
        Assumption {
            kind: AssumptionKind::MovingCurve,
            citation: citation.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Invalid,
}

impl Verdict {
    pub fn is_valid(self) -> bool {
        self == Verdict::Valid
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub pairing: Q,
    pub divisor: DivisorClass,
    pub curve: CurveClass,
    pub assumptions: Vec<Assumption>,
    pub verdict: Verdict,
}

/// The curve `X` in the 3-pointed space obtained by fixing `(E, p₁)` and
/// moving `p₂, p₃` with `a₁p₁ + a₂p₂ + a₃p₃ = 0`:
/// `X·δ_irr = 0`, `X·δ_{0;{i,j}} = a_k² − 1`, `X·δ_{0;{1,2,3}} = 1`.
pub fn x_curve(a: &Signature) -> Result<CurveClass> {
    if a.n() != 3 {
        return Err(Error::WrongPointCount {
            expected: 3,
            got: a.n(),
        });
    }
    if let Some(i) = a.entries().iter().position(|&x| x == 0) {
        return Err(Error::ZeroEntry(i + 1));
    }
    let e = a.entries();
    let pairs = [(0b011u32, e[2]), (0b101, e[1]), (0b110, e[0])];
    let mut terms: Vec<(Subset, Q)> = pairs
        .iter()
        .map(|&(bits, ak)| (Subset::from_bits(bits), q(ak * ak - 1)))
        .collect();
    terms.push((Subset::full(3), q(1)));
    CurveClass::from_delta_irr_pairing(3, q(0), terms)
}

/// Pairs `curve` with `divisor` and issues a verdict. Valid iff the pairing
/// is negative and both an irreducibility and a movingness assumption are
/// supplied.
pub fn certify_extremal(
    divisor: &DivisorClass,
    curve: &CurveClass,
    irreducible: Option<Assumption>,
    moving: Option<Assumption>,
) -> Result<CertificateReport> {
    let pairing = pair(curve, divisor)?;
    let irreducible = irreducible.filter(|a| a.kind == AssumptionKind::IrreducibleDivisor);
    let moving = moving.filter(|a| a.kind == AssumptionKind::MovingCurve);
    let complete = irreducible.is_some() && moving.is_some();
    let verdict = if complete && pairing < Q::from_integer(0.into()) {
        Verdict::Valid
    } else {
        Verdict::Invalid
    };
    Ok(CertificateReport {
        pairing,
        divisor: divisor.clone(),
        curve: curve.clone(),
        assumptions: irreducible.into_iter().chain(moving).collect(),
        verdict,
    })
}

/// The certificate for `D_a` on the 3-pointed space against its own curve `X`.
pub fn certify_triple(a: &Signature) -> Result<CertificateReport> {
    let d = hain_class(a)?;
    let x = x_curve(a)?;
    let irreducible = if a.is_primitive() {
        Some(Assumption::irreducible(
            "D_a is irreducible for n >= 3 when gcd(a) = 1",
        ))
    } else {
        None
    };
    certify_extremal(
        &d,
        &x,
        irreducible,
        Some(Assumption::moving(
            "deformations of X, obtained by varying the complex structure of E, cover a dense subset of D_a",
        )),
    )
}

/// One member of the infinite family of extremal rays on the 3-pointed space.
#[derive(Clone, Debug, Serialize)]
pub struct RayMember {
    pub k: u64,
    pub signature: Signature,
    pub hain: DivisorClass,
    /// `λ + δ_{0;{1,2,3}} + δ_{0;{1,2}} + (1/k)δ_{0;{1,3}} − (1/(k+1))δ_{0;{2,3}}`
    pub ray: DivisorClass,
}

/// Signature `(k+1, −k, −1)`, its class, and the normalized ray representative.
/// The class equals `k(k+1)` times the ray.
pub fn extremal_ray_family(k: i64) -> Result<RayMember> {
    if k <= 0 {
        return Err(Error::NonPositive(k));
    }
    let signature = validate_signature(&[k + 1, -k, -1])?;
    let hain = hain_class(&signature)?;
    let ray = DivisorClass::from_parts(
        3,
        q(1),
        [
            (Subset::full(3), q(1)),
            (Subset::from_bits(0b011), q(1)),
            (Subset::from_bits(0b101), frac(1, k)),
            (Subset::from_bits(0b110), frac(-1, k + 1)),
        ],
    )?;
    Ok(RayMember {
        k: k as u64,
        signature,
        hain,
        ray,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(a: &[i64]) -> Signature {
        validate_signature(a).unwrap()
    }

    fn pairings(c: &CurveClass) -> [Q; 4] {
        [0b011u32, 0b101, 0b110, 0b111].map(|b| c.boundary_pairing(Subset::from_bits(b)))
    }

    fn cited() -> (Option<Assumption>, Option<Assumption>) {
        (
            Some(Assumption::irreducible("cited")),
            Some(Assumption::moving("cited")),
        )
    }

    #[test]
    fn x_curve_examples() {
        let x = x_curve(&sig(&[1, 1, -2])).unwrap();
        assert_eq!(pairings(&x), [q(3), q(0), q(0), q(1)]);
        assert_eq!(x.delta_irr_pairing(), q(0));
        let x = x_curve(&sig(&[2, -1, -1])).unwrap();
        assert_eq!(pairings(&x), [q(0), q(0), q(3), q(1)]);
        assert_eq!(x_curve(&sig(&[1, -1, 0])), Err(Error::ZeroEntry(3)));
        assert!(x_curve(&sig(&[1, -1])).is_err());
    }

    #[test]
    fn certify_examples() {
        let a = sig(&[1, 1, -2]);
        let x = x_curve(&a).unwrap();
        let (i, m) = cited();
        let r = certify_extremal(&hain_class(&a).unwrap(), &x, i.clone(), m.clone()).unwrap();
        assert_eq!(r.pairing, q(-1));
        assert_eq!(r.verdict, Verdict::Valid);
        assert_eq!(r.assumptions.len(), 2);

        let d12 = DivisorClass::boundary_labels(3, &[1, 2]).unwrap();
        let r = certify_extremal(&d12, &x, i.clone(), m.clone()).unwrap();
        assert_eq!(r.pairing, q(3));
        assert_eq!(r.verdict, Verdict::Invalid);

        let r =
            certify_extremal(&DivisorClass::zero(3).unwrap(), &x, i.clone(), m.clone()).unwrap();
        assert_eq!(r.pairing, q(0));
        assert_eq!(r.verdict, Verdict::Invalid);

        // Negative pairing without the geometric input is not a certificate.
        let r = certify_extremal(&hain_class(&a).unwrap(), &x, None, m.clone()).unwrap();
        assert_eq!(r.verdict, Verdict::Invalid);
        let r = certify_extremal(&hain_class(&a).unwrap(), &x, m.clone(), i.clone()).unwrap();
        assert_eq!(r.verdict, Verdict::Invalid);

        assert!(certify_extremal(&DivisorClass::zero(4).unwrap(), &x, i, m).is_err());
    }

    #[test]
    fn report_json_keeps_assumptions() {
        let r = certify_triple(&sig(&[2, -1, -1])).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["pairing"], "-1/1");
        assert_eq!(v["verdict"], "valid");
        assert_eq!(v["assumptions"][0]["kind"], "irreducible-divisor");
        assert_eq!(v["assumptions"][1]["kind"], "moving-curve");
        assert!(v["assumptions"][0]["citation"]
            .as_str()
            .unwrap()
            .contains("gcd"));
        // Non-primitive signatures do not get the irreducibility assumption.
        let r = certify_triple(&sig(&[2, 2, -4])).unwrap();
        assert_eq!(r.verdict, Verdict::Invalid);
    }

    #[test]
    fn ray_examples() {
        let r1 = extremal_ray_family(1).unwrap();
        assert_eq!(r1.signature.entries(), &[2, -1, -1]);
        assert_eq!(r1.hain, r1.ray.scale(&q(2)));
        let r2 = extremal_ray_family(2).unwrap();
        assert_eq!(r2.hain, r2.ray.scale(&q(6)));
        assert!(!r1.ray.is_proportional(&r2.ray));
        assert_eq!(extremal_ray_family(0).unwrap_err(), Error::NonPositive(0));
    }

    proptest! {
        #[test]
        fn verdict_invariant_under_positive_scaling(a1 in -30i64..30, a2 in -30i64..30, p in 1i64..50, d in 1i64..50) {
            let a3 = -a1 - a2;
            prop_assume!(a1 != 0 && a2 != 0 && a3 != 0);
            let a = sig(&[a1, a2, a3]);
            let x = x_curve(&a).unwrap();
            let (i, m) = cited();
            let dcl = hain_class(&a).unwrap();
            let r1 = certify_extremal(&dcl, &x, i.clone(), m.clone()).unwrap();
            let r2 = certify_extremal(&dcl.scale(&frac(p, d)), &x, i, m).unwrap();
            prop_assert_eq!(r1.verdict, r2.verdict);
        }
    }
}
