//! Pullback of divisor classes along maps that forget marked points.
//!
//! A map `π: M̄_{1,n} → M̄_{1,m}` is described by an injective `keep` map
//! sending each label of the target space to the label it carries upstairs.
//! `π*λ = λ` and `π*δ_{0;T} = Σ δ_{0;S}` over all `S` with
//! `S ∩ image(keep) = keep(T)`.

use serde::Serialize;

use crate::class_algebra::{check_n, pair, DivisorClass};
use crate::error::{Error, Result};
use crate::hain::{hain_class, validate_signature};
use crate::rational::Q;
use crate::subset::{boundary_subsets, Subset};
use crate::test_curves::{certify_extremal, x_curve, Assumption, CertificateReport, Verdict};

fn image_of(keep: &[usize], t: Subset) -> Subset {
    t.labels().fold(Subset::EMPTY, |acc, l| {
        acc.union(Subset::singleton(keep[l - 1]))
    })
}

/// Checks that `keep` is an injective map `{1..m} → {1..n}`.
pub fn validate_keep(m: usize, n: usize, keep: &[usize]) -> Result<()> {
    if keep.len() != m {
        return Err(Error::InvalidKeepMap(format!(
            "keep map has {} entries for a {m}-pointed class",
            keep.len()
        )));
    }
    if m > n {
        return Err(Error::InvalidKeepMap(format!(
            "cannot pull back from {m} to {n} points"
        )));
    }
    let mut seen = Subset::EMPTY;
    for &k in keep {
        if k == 0 || k > n {
            return Err(Error::InvalidKeepMap(format!(
                "label {k} out of range 1..={n}"
            )));
        }
        if seen.contains(k) {
            return Err(Error::InvalidKeepMap(format!("label {k} used twice")));
        }
        seen = seen.union(Subset::singleton(k));
    }
    Ok(())
}

/// `π*D` for the map forgetting every label of `{1..n}` outside `keep`.
pub fn pullback(d: &DivisorClass, n: usize, keep: &[usize]) -> Result<DivisorClass> {
    let n = check_n(n as i64)?;
    validate_keep(d.n(), n, keep)?;
    let kept = image_of(keep, Subset::full(d.n()));
    let forgotten = Subset::full(n).difference(kept);
    let mut terms: Vec<(Subset, Q)> = Vec::new();
    for (t, c) in d.boundary_terms() {
        let base = image_of(keep, t);
        for extra in forgotten.submasks() {
            terms.push((base.union(extra), c.clone()));
        }
    }
    DivisorClass::from_parts(n, d.lambda_coeff().clone(), terms)
}

/// The inclusion `{1..m} → {1..n}`, `i ↦ i`.
pub fn inclusion(m: usize) -> Vec<usize> {
    (1..=m).collect()
}

/// `π*D_{(a₁, a₂, −a₁−a₂)}` on `n` points, expanded directly:
/// `(−1 + a₁² + a₂² + a₁a₂)(λ + Σ_{{1,2,3}⊆S} δ_{0;S}) − a₁a₂ Σ_{S∩{1,2,3}={1,2}} δ_{0;S}
///  + a₁(a₁+a₂) Σ_{S∩{1,2,3}={1,3}} δ_{0;S} + a₂(a₁+a₂) Σ_{S∩{1,2,3}={2,3}} δ_{0;S}`.
///
/// Every entry of the triple must be nonzero; with a zero entry the expansion
/// would include the boundary divisor where the two remaining points meet.
pub fn pulled_back_hain_triple(n: usize, a1: i64, a2: i64) -> Result<DivisorClass> {
    let n = check_n(n as i64)?;
    if n < 3 {
        return Err(Error::WrongPointCount {
            expected: 3,
            got: n,
        });
    }
    let triple = [a1, a2, -a1 - a2];
    validate_signature(&triple)?;
    if let Some(i) = triple.iter().position(|&x| x == 0) {
        return Err(Error::ZeroEntry(i + 1));
    }
    let (x1, x2) = (a1 as i128, a2 as i128);
    let big = |v: i128| Q::from_integer(v.into());
    let top = big(-1 + x1 * x1 + x2 * x2 + x1 * x2);
    let first3 = Subset::full(3);
    let s12 = Subset::from_bits(0b011);
    let s13 = Subset::from_bits(0b101);
    let s23 = Subset::from_bits(0b110);
    let terms = boundary_subsets(n).into_iter().filter_map(|s| {
        let core = s.intersection(first3);
        let c = if core == first3 {
            top.clone()
        } else if core == s12 {
            big(-x1 * x2)
        } else if core == s13 {
            big(x1 * (x1 + x2))
        } else if core == s23 {
            big(x2 * (x1 + x2))
        } else {
            return None;
        };
        Some((s, c))
    });
    DivisorClass::from_parts(n, top.clone(), terms)
}

/// Extremality certificate for `π*D_{(a₁,a₂,−a₁−a₂)}` on `n ≥ 3` points.
///
/// The moving curve upstairs pushes forward to the curve `X` on the
/// 3-pointed space, so by the projection formula its pairing with the
/// pulled-back class is `X·D_{(a₁,a₂,−a₁−a₂)}`, computed on the base.
#[derive(Clone, Debug, Serialize)]
pub struct PulledBackCertificate {
    pub n: usize,
    pub a1: i64,
    pub a2: i64,
    /// Pulled-back class on `n` points.
    pub divisor: DivisorClass,
    /// The certificate on the 3-pointed base.
    pub base: CertificateReport,
    /// Pairing of the lifted curve with `divisor`, via the projection formula.
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub pairing: Q,
    pub verdict: Verdict,
}

pub fn pulled_back_certificate(n: usize, a1: i64, a2: i64) -> Result<PulledBackCertificate> {
    let g = crate::arith::gcd_of(&[a1, a2]);
    if g != 1 {
        return Err(Error::NotPrimitive(g));
    }
    let divisor = pulled_back_hain_triple(n, a1, a2)?;
    let sig = validate_signature(&[a1, a2, -a1 - a2])?;
    let base_divisor = hain_class(&sig)?;
    let x = x_curve(&sig)?;
    let base = certify_extremal(
        &base_divisor,
        &x,
        Some(Assumption::irreducible(
            "pullback of an irreducible divisor along a map with irreducible general fibers, gcd(a1, a2) = 1",
        )),
        Some(Assumption::moving(
            "p1, p2 vary on a fixed curve with p3..pn fixed in general position; deformations of the curve cover the divisor",
        )),
    )?;
    // Projection formula: (lifted X)·π*D = (π_*X)·D.
    let pairing = pair(&x, &base_divisor)?;
    debug_assert_eq!(pairing, base.pairing);
    let verdict = base.verdict;
    Ok(PulledBackCertificate {
        n,
        a1,
        a2,
        divisor,
        base,
        pairing,
        verdict,
    })
}

/// Pullback agrees with the class formula after zero entries are stripped.
pub fn zero_dropping_consistent(a: &crate::hain::Signature) -> Result<bool> {
    let (stripped, keep) = a.stripped();
    let lhs = hain_class(a)?;
    let rhs = pullback(&hain_class(&stripped)?, a.n(), &keep)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hain::Signature;
    use crate::rational::{frac, q};
    use proptest::prelude::*;

    fn sub(labels: &[usize], n: usize) -> Subset {
        Subset::from_labels(labels.iter().copied(), n).unwrap()
    }

    #[test]
    fn identity_pullback() {
        let d = hain_class(&validate_signature(&[2, -5, 3]).unwrap()).unwrap();
        assert_eq!(pullback(&d, 3, &[1, 2, 3]).unwrap(), d);
    }

    #[test]
    fn displayed_instances() {
        let d12 = DivisorClass::boundary_labels(3, &[1, 2]).unwrap();
        let expect = DivisorClass::from_parts(
            4,
            q(0),
            [(sub(&[1, 2], 4), q(1)), (sub(&[1, 2, 4], 4), q(1))],
        )
        .unwrap();
        assert_eq!(pullback(&d12, 4, &inclusion(3)).unwrap(), expect);

        let d123 = DivisorClass::boundary_labels(3, &[1, 2, 3]).unwrap();
        let expect = DivisorClass::from_parts(
            4,
            q(0),
            [(sub(&[1, 2, 3], 4), q(1)), (sub(&[1, 2, 3, 4], 4), q(1))],
        )
        .unwrap();
        assert_eq!(pullback(&d123, 4, &inclusion(3)).unwrap(), expect);

        let lam = DivisorClass::lambda(3).unwrap();
        assert_eq!(
            pullback(&lam, 6, &inclusion(3)).unwrap(),
            DivisorClass::lambda(6).unwrap()
        );
    }

    #[test]
    fn keep_validation() {
        let d = DivisorClass::lambda(3).unwrap();
        assert!(pullback(&d, 2, &[1, 2, 3]).is_err());
        assert!(pullback(&d, 4, &[1, 1, 2]).is_err());
        assert!(pullback(&d, 4, &[1, 2, 5]).is_err());
        assert!(pullback(&d, 4, &[1, 2]).is_err());
    }

    #[test]
    fn triple_examples() {
        assert_eq!(
            pulled_back_hain_triple(3, 1, 1).unwrap(),
            hain_class(&validate_signature(&[1, 1, -2]).unwrap()).unwrap()
        );
        let d = pulled_back_hain_triple(4, 1, 1).unwrap();
        assert_eq!(d.coeff(sub(&[1, 2, 4], 4)), q(-1));
        let d = pulled_back_hain_triple(4, 2, -1).unwrap();
        assert_eq!(d.lambda_coeff(), &q(2));
        assert!(pulled_back_hain_triple(2, 1, 1).is_err());
        assert_eq!(pulled_back_hain_triple(4, 1, -1), Err(Error::ZeroEntry(3)));
        assert_eq!(
            pulled_back_hain_triple(4, 0, 0),
            Err(Error::DegenerateSignature)
        );
    }

    #[test]
    fn certificates() {
        let r = pulled_back_certificate(5, 1, 1).unwrap();
        assert_eq!(r.pairing, q(-1));
        assert!(r.verdict.is_valid());
        assert_eq!(r.divisor, pulled_back_hain_triple(5, 1, 1).unwrap());

        let r3 = pulled_back_certificate(3, 2, -1).unwrap();
        let sig = validate_signature(&[2, -1, -1]).unwrap();
        let direct = certify_extremal(
            &hain_class(&sig).unwrap(),
            &x_curve(&sig).unwrap(),
            Some(Assumption::irreducible("gcd = 1")),
            Some(Assumption::moving("X moves in D_a")),
        )
        .unwrap();
        assert_eq!(r3.pairing, direct.pairing);
        assert_eq!(r3.divisor, hain_class(&sig).unwrap());

        assert_eq!(
            pulled_back_certificate(4, 2, 2).unwrap_err(),
            Error::NotPrimitive(2)
        );
    }

    #[test]
    fn zero_dropping_examples() {
        for a in [
            &[1i64, 1, -2, 0][..],
            &[0, 3, 0, -5, 2],
            &[4, 0, -4],
            &[0, 1, -1, 0, 0],
        ] {
            assert!(
                zero_dropping_consistent(&validate_signature(a).unwrap()).unwrap(),
                "{a:?}"
            );
        }
    }

    fn arb_class(n: usize) -> impl Strategy<Value = DivisorClass> {
        let m = boundary_subsets(n).len();
        (
            (-9i64..9, 1i64..4),
            proptest::collection::vec(((0..m), -9i64..9, 1i64..4), 0..5),
        )
            .prop_map(move |((ln, ld), e)| {
                let subs = boundary_subsets(n);
                DivisorClass::from_parts(
                    n,
                    frac(ln, ld),
                    e.into_iter().map(|(i, p, d)| (subs[i], frac(p, d))),
                )
                .unwrap()
            })
    }

    /// An injective map {1..m} → {1..n} as a shuffled prefix.
    fn arb_keep(m: usize, n: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |v| v[..m].to_vec())
    }

    proptest! {
        #[test]
        fn functoriality(
            (d, k1, k2, n) in (2usize..5).prop_flat_map(|m| (m..6).prop_flat_map(move |k| (k..8).prop_flat_map(move |n|
                (arb_class(m), arb_keep(m, k), arb_keep(k, n), Just(n)))))
        ) {
            let mid = pullback(&d, k2.len(), &k1).unwrap();
            let composite: Vec<usize> = k1.iter().map(|&i| k2[i - 1]).collect();
            let direct = pullback(&d, n, &composite).unwrap();
            prop_assert_eq!(pullback(&mid, n, &k2).unwrap(), direct);
        }

        #[test]
        fn linearity(d1 in arb_class(3), d2 in arb_class(3), keep in arb_keep(3, 6), a in -5i64..5, b in -5i64..5) {
            let combo = d1.scale(&q(a)).combine(&q(b), &d2).unwrap();
            let lhs = pullback(&combo, 6, &keep).unwrap();
            let rhs = pullback(&d1, 6, &keep).unwrap().scale(&q(a))
                .combine(&q(b), &pullback(&d2, 6, &keep).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn zero_dropping(mut v in proptest::collection::vec(-6i64..=6, 2..7), zeros in proptest::collection::vec(0usize..8, 0..3)) {
            for z in zeros {
                let at = z % (v.len() + 1);
                v.insert(at, 0);
            }
            let s: i64 = v.iter().sum();
            v.push(-s);
            if let Ok(a) = Signature::new(v) {
                prop_assert!(zero_dropping_consistent(&a).unwrap());
            }
        }
    }
}
