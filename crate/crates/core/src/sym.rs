//! Divisor classes on the quotient by the symmetric group (unordered points).
//!
//! The quotient's Picard group is spanned by `δ̃_irr` and `δ̃_{0;k}`,
//! `2 ≤ k ≤ n`, where `δ̃_{0;k}` is the image of the union of all `δ_{0;S}`
//! with `|S| = k`. An invariant class `aλ + Σ_k b_k Σ_{|S|=k} δ_{0;S}` maps to
//! `(a/12) δ̃_irr + Σ_k b_k δ̃_{0;k}`; the factor `1/12` makes `12λ = δ_irr`
//! land on `δ̃_irr` with coefficient one.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::class_algebra::DivisorClass;
use crate::error::{Error, Result};
use crate::rational::{format_linear, q, PQ, Q};
use crate::subset::boundary_subsets;

/// Output metadata stating the `δ̃_irr` normalization in use.
pub const NORMALIZATION_NOTE: &str =
    "a_irr = (coefficient of λ)/12, so the invariant class δ_irr = 12λ maps to δ̃_irr with coefficient 1";

/// Caveat attached to every constraint report.
pub const BOUNDARY_CAVEAT: &str =
    "moving-curve constraints bind irreducible effective divisors different from any boundary divisor; boundary divisors are exempt";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymDivisorClass {
    n: usize,
    a_irr: Q,
    /// `b[k - 2]` is the coefficient of `δ̃_{0;k}`.
    b: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
struct SymJson {
    n: usize,
    a_irr: PQ,
    b: BTreeMap<usize, PQ>,
}

impl SymDivisorClass {
    pub fn new(n: usize, a_irr: Q, b: Vec<Q>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n as i64));
        }
        if b.len() != n - 1 {
            return Err(Error::Parse(format!(
                "expected {} boundary coefficients for n = {n}, got {}",
                n - 1,
                b.len()
            )));
        }
        Ok(SymDivisorClass { n, a_irr, b })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, Q::zero(), vec![Q::zero(); n.saturating_sub(1)])
    }

    /// `δ̃_irr`.
    pub fn delta_irr(n: usize) -> Result<Self> {
        let mut d = Self::zero(n)?;
        d.a_irr = q(1);
        Ok(d)
    }

    /// `δ̃_{0;k}`.
    pub fn delta(n: usize, k: usize) -> Result<Self> {
        let mut d = Self::zero(n)?;
        if !(2..=n).contains(&k) {
            return Err(Error::InvalidLabel { label: k as i64, n });
        }
        d.b[k - 2] = q(1);
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a_irr(&self) -> &Q {
        &self.a_irr
    }

    /// Coefficient of `δ̃_{0;k}`, `2 ≤ k ≤ n`.
    pub fn b(&self, k: usize) -> &Q {
        &self.b[k - 2]
    }

    pub fn bs(&self) -> &[Q] {
        &self.b
    }

    pub fn scale(&self, c: &Q) -> SymDivisorClass {
        SymDivisorClass {
            n: self.n,
            a_irr: &self.a_irr * c,
            b: self.b.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &SymDivisorClass) -> Result<SymDivisorClass> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(SymDivisorClass {
            n: self.n,
            a_irr: &self.a_irr + &other.a_irr,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
        })
    }

    /// Whether this is a positive multiple of a single boundary generator.
    pub fn is_boundary_generator(&self) -> bool {
        let coords = std::iter::once(&self.a_irr).chain(&self.b);
        let nonzero: Vec<&Q> = coords.filter(|c| !c.is_zero()).collect();
        nonzero.len() == 1 && *nonzero[0] > Q::zero()
    }
}

impl std::fmt::Display for SymDivisorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = vec![(&self.a_irr, "δ̃irr".to_string())];
        for (i, c) in self.b.iter().enumerate() {
            terms.push((c, format!("δ̃{}", i + 2)));
        }
        f.write_str(&format_linear(terms))
    }
}

impl Serialize for SymDivisorClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymJson {
            n: self.n,
            a_irr: PQ(self.a_irr.clone()),
            b: self
                .b
                .iter()
                .enumerate()
                .map(|(i, c)| (i + 2, PQ(c.clone())))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymDivisorClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SymJson::deserialize(d)?;
        let expected: Vec<usize> = (2..=j.n).collect();
        if j.b.keys().copied().collect::<Vec<_>>() != expected {
            return Err(serde::de::Error::custom(format!(
                "b must have exactly the keys 2..={}",
                j.n
            )));
        }
        SymDivisorClass::new(j.n, j.a_irr.0, j.b.into_values().map(|p| p.0).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Image of an `𝔖_n`-invariant class in the quotient basis.
pub fn symmetrize(d: &DivisorClass) -> Result<SymDivisorClass> {
    let n = d.n();
    if n < 2 {
        return Err(Error::InvalidDimension(n as i64));
    }
    let mut b: Vec<Option<Q>> = vec![None; n - 1];
    for s in boundary_subsets(n) {
        let c = d.coeff(s);
        let slot = &mut b[s.len() - 2];
        match slot {
            None => *slot = Some(c),
            Some(prev) if *prev != c => return Err(Error::NotSymmetric(s.len())),
            _ => {}
        }
    }
    SymDivisorClass::new(
        n,
        d.lambda_coeff() / q(12),
        b.into_iter().map(|c| c.unwrap_or_else(Q::zero)).collect(),
    )
}

/// Average of `d` over all relabelings, i.e. the projection onto invariant classes.
pub fn symmetric_average(d: &DivisorClass) -> Result<DivisorClass> {
    let n = d.n();
    let mut sums = vec![Q::zero(); n + 1];
    for (s, c) in d.boundary_terms() {
        sums[s.len()] += c;
    }
    let binom = |k: usize| -> Q {
        let mut v = q(1);
        for i in 0..k {
            v = v * q((n - i) as i64) / q((i + 1) as i64);
        }
        v
    };
    DivisorClass::from_parts(
        n,
        d.lambda_coeff().clone(),
        boundary_subsets(n)
            .into_iter()
            .map(|s| (s, &sums[s.len()] / binom(s.len()))),
    )
}

/// The quotient is spanned by the basis itself, so membership in the
/// boundary cone is coordinatewise nonnegativity.
pub fn boundary_cone_member(d: &SymDivisorClass) -> bool {
    *d.a_irr() >= Q::zero() && d.bs().iter().all(|b| *b >= Q::zero())
}

/// A curve class on the quotient, by its pairings with `δ̃_irr` and each `δ̃_{0;k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymCurveClass {
    pub name: String,
    pub n: usize,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub irr: Q,
    /// `pairings[k - 2]` is the pairing with `δ̃_{0;k}`.
    #[serde(serialize_with = "ser_vec_q")]
    pub pairings: Vec<Q>,
}

fn ser_vec_q<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<PQ> = v.iter().cloned().map(PQ).collect();
    strs.serialize(s)
}

impl SymCurveClass {
    fn new(name: String, n: usize) -> Self {
        SymCurveClass {
            name,
            n,
            irr: Q::zero(),
            pairings: vec![Q::zero(); n - 1],
        }
    }

    fn set(&mut self, k: usize, v: i64) {
        self.pairings[k - 2] = q(v);
    }

    pub fn pairing_with(&self, k: usize) -> &Q {
        &self.pairings[k - 2]
    }

    pub fn pair(&self, d: &SymDivisorClass) -> Result<Q> {
        if self.n != d.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: d.n,
            });
        }
        let mut acc = &self.irr * &d.a_irr;
        for (c, b) in self.pairings.iter().zip(&d.b) {
            acc += c * b;
        }
        Ok(acc)
    }
}

/// The moving curves used to bound effective divisors on the quotient.
///
/// Genus one: `C` (an `n`-th point moving on a fixed curve), `C_j` for
/// `2 ≤ j ≤ n−1` (a rational tail with `j` points attached at a moving point),
/// and `C_n` (a tail with all points attached to a base point of a pencil of
/// cubics). For `n = 2` the family `C_j` is empty and `C_n = C_2`.
///
/// Other genera: only the `C_j`, with `C_j·δ̃_{0;j} = −(2g − 2 + n − j)` and
/// `C_j·δ̃_{0;j+1} = n − j`.
pub fn certificate_curves(n: usize, g: i64) -> Result<Vec<SymCurveClass>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n as i64));
    }
    if g < 0 {
        return Err(Error::NonPositive(g));
    }
    let ni = n as i64;
    let mut out = Vec::new();
    if g == 1 {
        let mut c = SymCurveClass::new("C".into(), n);
        c.set(2, ni - 1);
        out.push(c);
    }
    for j in 2..n {
        let ji = j as i64;
        let mut c = SymCurveClass::new(format!("C_{j}"), n);
        c.set(j, -(2 * g - 2 + ni - ji));
        c.set(j + 1, ni - ji);
        out.push(c);
    }
    if g == 1 {
        let mut c = SymCurveClass::new(format!("C_{n}"), n);
        c.irr = q(12);
        c.set(n, -1);
        out.push(c);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintEntry {
    pub curve: String,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub pairing: Q,
    pub nonnegative: bool,
}

/// The chain of inequalities the genus-one constraints imply.
#[derive(Clone, Debug, Serialize)]
pub struct ImpliedChain {
    pub b2_nonnegative: bool,
    pub b_nondecreasing: bool,
    pub twelve_a_at_least_bn: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintReport {
    pub n: usize,
    pub g: i64,
    pub entries: Vec<ConstraintEntry>,
    pub all_nonnegative: bool,
    pub chain: Option<ImpliedChain>,
    /// The class is a positive multiple of one boundary generator, to which
    /// the constraints do not apply.
    pub boundary_exempt: bool,
    pub caveat: &'static str,
    pub normalization: &'static str,
}

/// Pairs `d` with every certificate curve.
pub fn nonboundary_constraints_check(d: &SymDivisorClass, g: i64) -> Result<ConstraintReport> {
    let curves = certificate_curves(d.n(), g)?;
    let entries = curves
        .iter()
        .map(|c| {
            let pairing = c.pair(d)?;
            Ok(ConstraintEntry {
                curve: c.name.clone(),
                nonnegative: pairing >= Q::zero(),
                pairing,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_nonnegative = entries.iter().all(|e| e.nonnegative);
    let chain = (g == 1).then(|| ImpliedChain {
        b2_nonnegative: *d.b(2) >= Q::zero(),
        b_nondecreasing: d.bs().windows(2).all(|w| w[1] >= w[0]),
        twelve_a_at_least_bn: q(12) * d.a_irr() >= *d.b(d.n()),
    });
    Ok(ConstraintReport {
        n: d.n(),
        g,
        entries,
        all_nonnegative,
        chain,
        boundary_exempt: d.is_boundary_generator(),
        caveat: BOUNDARY_CAVEAT,
        normalization: NORMALIZATION_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_algebra::{canonical_class, delta_irr_class, psi_class};
    use crate::hain::{hain_class, validate_signature};
    use crate::rational::frac;
    use proptest::prelude::*;

    fn sd(n: usize, a: Q, b: &[i64]) -> SymDivisorClass {
        SymDivisorClass::new(n, a, b.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn symmetrize_examples() {
        let s = symmetrize(&canonical_class(4).unwrap()).unwrap();
        assert_eq!(s.a_irr(), &frac(-7, 12));
        assert_eq!(s.bs(), &[q(0), q(1), q(2)]);
        let s = symmetrize(&delta_irr_class(5).unwrap()).unwrap();
        assert_eq!(s, SymDivisorClass::delta_irr(5).unwrap());
        let h = hain_class(&validate_signature(&[1, 1, -2]).unwrap()).unwrap();
        assert_eq!(symmetrize(&h), Err(Error::NotSymmetric(2)));
        assert!(symmetrize(&psi_class(3, 1).unwrap()).is_err());
    }

    #[test]
    fn cone_membership() {
        assert!(boundary_cone_member(
            &SymDivisorClass::delta_irr(4).unwrap()
        ));
        assert!(!boundary_cone_member(
            &SymDivisorClass::delta(4, 2).unwrap().scale(&q(-1))
        ));
        assert!(!boundary_cone_member(
            &symmetrize(&canonical_class(4).unwrap()).unwrap()
        ));
    }

    #[test]
    fn curves_at_n3() {
        let cs = certificate_curves(3, 1).unwrap();
        let shape: Vec<(String, Q, Vec<Q>)> = cs
            .iter()
            .map(|c| (c.name.clone(), c.irr.clone(), c.pairings.clone()))
            .collect();
        assert_eq!(
            shape,
            vec![
                ("C".into(), q(0), vec![q(2), q(0)]),
                ("C_2".into(), q(0), vec![q(-1), q(1)]),
                ("C_3".into(), q(12), vec![q(0), q(-1)]),
            ]
        );
    }

    #[test]
    fn curves_degenerate_and_other_genus() {
        let cs = certificate_curves(2, 1).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].pairings, vec![q(1)]);
        assert_eq!(cs[1].name, "C_2");
        assert_eq!(
            (cs[1].irr.clone(), cs[1].pairings.clone()),
            (q(12), vec![q(-1)])
        );

        let cs = certificate_curves(4, 2).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].name, "C_2");
        assert_eq!(cs[0].pairings, vec![q(-4), q(2), q(0)]);
        assert!(certificate_curves(1, 1).is_err());
    }

    #[test]
    fn constraint_examples() {
        let r = nonboundary_constraints_check(&SymDivisorClass::delta(3, 2).unwrap(), 1).unwrap();
        assert_eq!(r.entries[0].pairing, q(2));
        assert_eq!(r.entries[1].pairing, q(-1));
        assert!(!r.all_nonnegative);
        assert!(r.boundary_exempt);

        let r = nonboundary_constraints_check(&sd(3, q(1), &[1, 2]), 1).unwrap();
        assert!(r.all_nonnegative);
        let chain = r.chain.unwrap();
        assert!(chain.b2_nonnegative && chain.b_nondecreasing && chain.twelve_a_at_least_bn);
        assert!(!r.boundary_exempt);

        let r = nonboundary_constraints_check(&sd(3, q(0), &[0, 1]), 1).unwrap();
        assert!(!r.all_nonnegative);
        assert!(!r.chain.unwrap().twelve_a_at_least_bn);

        let r = nonboundary_constraints_check(&sd(4, q(0), &[1, 1, 1]), 3).unwrap();
        assert!(r.chain.is_none());
        assert_eq!(r.entries.len(), 2);
    }

    #[test]
    fn json_shape() {
        let s = symmetrize(&canonical_class(4).unwrap()).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(
            js,
            r#"{"n":4,"a_irr":"-7/12","b":{"2":"0/1","3":"1/1","4":"2/1"}}"#
        );
        assert_eq!(serde_json::from_str::<SymDivisorClass>(&js).unwrap(), s);
        let big = SymDivisorClass::zero(11).unwrap();
        let js = serde_json::to_string(&big).unwrap();
        assert!(js.contains(r#""9":"0/1","10":"0/1","11":"0/1""#));
        assert!(serde_json::from_str::<SymDivisorClass>(
            r#"{"n":3,"a_irr":"0/1","b":{"2":"0/1"}}"#
        )
        .is_err());
    }

    #[test]
    fn each_cj_touches_two_coordinates() {
        for n in 3..=10 {
            for c in certificate_curves(n, 1).unwrap() {
                if let Some(j) = c
                    .name
                    .strip_prefix("C_")
                    .map(|s| s.parse::<usize>().unwrap())
                {
                    if j < n {
                        assert!(c.irr.is_zero());
                        for k in 2..=n {
                            if k != j && k != j + 1 {
                                assert!(c.pairing_with(k).is_zero());
                            }
                        }
                        assert_eq!(c.pairing_with(j), &q(-((n - j) as i64)));
                        assert_eq!(c.pairing_with(j + 1), &q((n - j) as i64));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn average_is_symmetric_and_linear(
            e1 in proptest::collection::vec((0usize..26, -9i64..9), 0..6),
            e2 in proptest::collection::vec((0usize..26, -9i64..9), 0..6),
            l in -9i64..9, c in -5i64..5,
        ) {
            let subs = boundary_subsets(5);
            let mk = |e: &[(usize, i64)]| DivisorClass::from_parts(5, q(l), e.iter().map(|&(i, v)| (subs[i], q(v)))).unwrap();
            let (d1, d2) = (mk(&e1), mk(&e2));
            let s1 = symmetrize(&symmetric_average(&d1).unwrap()).unwrap();
            let s2 = symmetrize(&symmetric_average(&d2).unwrap()).unwrap();
            let combo = d1.combine(&q(c), &d2).unwrap();
            let sc = symmetrize(&symmetric_average(&combo).unwrap()).unwrap();
            prop_assert_eq!(sc, s1.checked_add(&s2.scale(&q(c))).unwrap());
        }

        #[test]
        fn passing_constraints_implies_cone(
            n in 2usize..11,
            a in (-40i64..40, 1i64..7),
            bs in proptest::collection::vec((-40i64..40, 1i64..7), 9),
        ) {
            let d = SymDivisorClass::new(n, frac(a.0, a.1), bs[..n - 1].iter().map(|&(p, q)| frac(p, q)).collect()).unwrap();
            let r = nonboundary_constraints_check(&d, 1).unwrap();
            if r.all_nonnegative {
                prop_assert!(boundary_cone_member(&d));
            }
        }
    }
}
