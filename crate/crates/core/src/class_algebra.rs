//! Divisor and curve classes on the moduli space of `n`-pointed genus-one curves.
//!
//! The rational Picard group is spanned by `λ` and the boundary classes
//! `δ_{0;S}` for `S ⊆ {1..n}`, `|S| ≥ 2`. The class `δ_irr` is not a basis
//! element: it equals `12λ` and is converted on entry. A curve class is
//! recorded by its intersection numbers against the same basis, so the
//! pairing of a curve with a divisor is a plain dot product.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_linear, q, PQ, Q};
use crate::subset::{boundary_subsets, Subset, MAX_POINTS};

pub(crate) fn check_n(n: i64) -> Result<usize> {
    if n < 1 || n as usize > MAX_POINTS {
        return Err(Error::InvalidDimension(n));
    }
    Ok(n as usize)
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { left: a, right: b });
    }
    Ok(())
}

/// Sparse coefficient vector over `{λ} ∪ {δ_{0;S}}`. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Coords {
    n: usize,
    lambda: Q,
    boundary: BTreeMap<Subset, Q>,
}

impl Coords {
    fn zero(n: usize) -> Self {
        Coords {
            n,
            lambda: Q::zero(),
            boundary: BTreeMap::new(),
        }
    }

    fn get(&self, s: Subset) -> Q {
        self.boundary.get(&s).cloned().unwrap_or_else(Q::zero)
    }

    fn check_subset(&self, s: Subset) -> Result<()> {
        if !s.fits(self.n) || s.len() < 2 {
            return Err(Error::Parse(format!(
                "subset {s} is not a boundary index for n = {}",
                self.n
            )));
        }
        Ok(())
    }

    fn add_at(&mut self, s: Subset, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.boundary.entry(s).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.boundary.remove(&s);
        }
    }

    fn axpy(&mut self, alpha: &Q, other: &Coords) {
        self.lambda += alpha * &other.lambda;
        for (s, c) in &other.boundary {
            self.add_at(*s, &(alpha * c));
        }
    }

    fn scaled(&self, alpha: &Q) -> Coords {
        let mut out = Coords::zero(self.n);
        out.axpy(alpha, self);
        out
    }

    fn dot(&self, other: &Coords) -> Q {
        let mut acc = &self.lambda * &other.lambda;
        // Iterate over the sparser side.
        let (small, big) = if self.boundary.len() <= other.boundary.len() {
            (&self.boundary, &other.boundary)
        } else {
            (&other.boundary, &self.boundary)
        };
        for (s, c) in small {
            if let Some(d) = big.get(s) {
                acc += c * d;
            }
        }
        acc
    }

    fn is_zero(&self) -> bool {
        self.lambda.is_zero() && self.boundary.is_empty()
    }

    fn display(&self, lambda_name: &str) -> String {
        let mut terms: Vec<(&Q, String)> = vec![(&self.lambda, lambda_name.to_string())];
        for (s, c) in &self.boundary {
            terms.push((c, format!("δ{s}")));
        }
        format_linear(terms)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    #[serde(rename = "S")]
    s: Vec<usize>,
    c: PQ,
}

/// Wire form shared by divisor and curve classes.
#[derive(Serialize, Deserialize)]
struct ClassJson {
    n: usize,
    lambda: PQ,
    boundary: Vec<EntryJson>,
}

impl From<&Coords> for ClassJson {
    fn from(c: &Coords) -> Self {
        ClassJson {
            n: c.n,
            lambda: PQ(c.lambda.clone()),
            boundary: c
                .boundary
                .iter()
                .map(|(s, v)| EntryJson {
                    s: s.labels().collect(),
                    c: PQ(v.clone()),
                })
                .collect(),
        }
    }
}

impl TryFrom<ClassJson> for Coords {
    type Error = Error;

    fn try_from(j: ClassJson) -> Result<Self> {
        let n = check_n(j.n as i64)?;
        let mut c = Coords::zero(n);
        c.lambda = j.lambda.0;
        for e in j.boundary {
            let s = Subset::from_labels(e.s.iter().copied(), n)?;
            if s.len() != e.s.len() {
                return Err(Error::Parse(format!("repeated label in subset {:?}", e.s)));
            }
            c.check_subset(s)?;
            if c.boundary.contains_key(&s) {
                return Err(Error::Parse(format!("subset {s} listed twice")));
            }
            c.add_at(s, &e.c.0);
        }
        Ok(c)
    }
}

/// A rational divisor class on the `n`-pointed space.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ClassJson", try_from = "ClassJson")]
pub struct DivisorClass(Coords);

/// A numerical curve class, recorded by its pairings with `λ` and each `δ_{0;S}`.
///
/// The pairing with `δ_irr` is derived as `12·(C·λ)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ClassJson", try_from = "ClassJson")]
pub struct CurveClass(Coords);

macro_rules! wire_impls {
    ($t:ty) => {
        impl From<$t> for ClassJson {
            fn from(v: $t) -> Self {
                ClassJson::from(&v.0)
            }
        }

        impl TryFrom<ClassJson> for $t {
            type Error = Error;
            fn try_from(j: ClassJson) -> Result<Self> {
                Coords::try_from(j).map(Self)
            }
        }
    };
}

wire_impls!(DivisorClass);
wire_impls!(CurveClass);

impl DivisorClass {
    pub fn zero(n: usize) -> Result<Self> {
        Ok(DivisorClass(Coords::zero(check_n(n as i64)?)))
    }

    /// The class `λ`.
    pub fn lambda(n: usize) -> Result<Self> {
        let mut c = Coords::zero(check_n(n as i64)?);
        c.lambda = q(1);
        Ok(DivisorClass(c))
    }

    /// The basis class `δ_{0;S}`.
    pub fn boundary(n: usize, s: Subset) -> Result<Self> {
        let mut c = Coords::zero(check_n(n as i64)?);
        c.check_subset(s)?;
        c.add_at(s, &q(1));
        Ok(DivisorClass(c))
    }

    /// `δ_{0;S}` from 1-based labels.
    pub fn boundary_labels(n: usize, labels: &[usize]) -> Result<Self> {
        Self::boundary(n, Subset::from_labels(labels.iter().copied(), n)?)
    }

    /// Builds a class from a `λ` coefficient and boundary coefficients.
    pub fn from_parts<I>(n: usize, lambda: Q, boundary: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Q)>,
    {
        let mut c = Coords::zero(check_n(n as i64)?);
        c.lambda = lambda;
        for (s, v) in boundary {
            c.check_subset(s)?;
            c.add_at(s, &v);
        }
        Ok(DivisorClass(c))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn lambda_coeff(&self) -> &Q {
        &self.0.lambda
    }

    /// Coefficient of `δ_{0;S}`; zero when absent.
    pub fn coeff(&self, s: Subset) -> Q {
        self.0.get(s)
    }

    /// Nonzero boundary coefficients in canonical subset order.
    pub fn boundary_terms(&self) -> impl Iterator<Item = (Subset, &Q)> {
        self.0.boundary.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.combine(&q(1), other)
    }

    pub fn checked_sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.combine(&q(-1), other)
    }

    /// `self + alpha·other`.
    pub fn combine(&self, alpha: &Q, other: &DivisorClass) -> Result<DivisorClass> {
        check_same(self.n(), other.n())?;
        let mut c = self.0.clone();
        c.axpy(alpha, &other.0);
        Ok(DivisorClass(c))
    }

    pub fn scale(&self, alpha: &Q) -> DivisorClass {
        DivisorClass(self.0.scaled(alpha))
    }

    /// Whether `self = c·other` or `other = c·self` for some rational `c`.
    /// The zero class is proportional to everything.
    pub fn is_proportional(&self, other: &DivisorClass) -> bool {
        if self.n() != other.n() {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return true;
        }
        let pivot = if !self.0.lambda.is_zero() {
            None
        } else {
            self.0.boundary.keys().next().copied()
        };
        let (a, b) = match pivot {
            None => (self.0.lambda.clone(), other.0.lambda.clone()),
            Some(s) => (self.0.get(s), other.0.get(s)),
        };
        if b.is_zero() {
            return false;
        }
        self.scale(&(b / a)) == *other
    }
}

impl CurveClass {
    pub fn zero(n: usize) -> Result<Self> {
        Ok(CurveClass(Coords::zero(check_n(n as i64)?)))
    }

    /// Builds a curve class from `C·λ` and the pairings `C·δ_{0;S}`.
    pub fn from_parts<I>(n: usize, lambda_pairing: Q, boundary: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Q)>,
    {
        let d = DivisorClass::from_parts(n, lambda_pairing, boundary)?;
        Ok(CurveClass(d.0))
    }

    /// Builds a curve class from `C·δ_irr` rather than `C·λ`.
    pub fn from_delta_irr_pairing<I>(n: usize, delta_irr: Q, boundary: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Q)>,
    {
        Self::from_parts(n, delta_irr / q(12), boundary)
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn lambda_pairing(&self) -> &Q {
        &self.0.lambda
    }

    pub fn delta_irr_pairing(&self) -> Q {
        &self.0.lambda * q(12)
    }

    pub fn boundary_pairing(&self, s: Subset) -> Q {
        self.0.get(s)
    }

    pub fn boundary_terms(&self) -> impl Iterator<Item = (Subset, &Q)> {
        self.0.boundary.iter().map(|(s, c)| (*s, c))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display("λ"))
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivisorClass[n={}]({})", self.n(), self)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C·λ = {}", crate::rational::display_q(&self.0.lambda))?;
        for (s, c) in &self.0.boundary {
            write!(f, ", C·δ{s} = {}", crate::rational::display_q(c))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveClass[n={}]({})", self.n(), self)
    }
}

/// A bijection of `{1..n}`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// `images[i - 1]` is the image of label `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(images))
    }

    /// Caller guarantees `images` is a permutation of `1..=len`.
    pub(crate) fn new_unchecked(images: Vec<usize>) -> Self {
        Permutation(images)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The transposition swapping labels `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        for l in [i, j] {
            if l == 0 || l > n {
                return Err(Error::InvalidLabel { label: l as i64, n });
            }
        }
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(i - 1, j - 1);
        Ok(Permutation(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, label: usize) -> usize {
        self.0[label - 1]
    }

    pub fn apply_subset(&self, s: Subset) -> Subset {
        s.labels().fold(Subset::EMPTY, |acc, l| {
            acc.union(Subset::singleton(self.apply(l)))
        })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_same(self.len(), other.len())?;
        Ok(Permutation(
            other.0.iter().map(|&i| self.apply(i)).collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// `δ_irr = 12λ`.
pub fn delta_irr_class(n: i64) -> Result<DivisorClass> {
    let n = check_n(n)?;
    Ok(DivisorClass::lambda(n)?.scale(&q(12)))
}

/// `ψ_i = λ + Σ_{i ∈ S} δ_{0;S}`.
pub fn psi_class(n: i64, i: i64) -> Result<DivisorClass> {
    let n = check_n(n)?;
    if i < 1 || i as usize > n {
        return Err(Error::InvalidLabel { label: i, n });
    }
    let i = i as usize;
    DivisorClass::from_parts(
        n,
        q(1),
        boundary_subsets(n)
            .into_iter()
            .filter(|s| s.contains(i))
            .map(|s| (s, q(1))),
    )
}

/// The canonical class `(n − 11)λ + Σ_{|S|≥2} (|S| − 2) δ_{0;S}`.
pub fn canonical_class(n: i64) -> Result<DivisorClass> {
    let n = check_n(n)?;
    DivisorClass::from_parts(
        n,
        q(n as i64 - 11),
        boundary_subsets(n)
            .into_iter()
            .map(|s| (s, q(s.len() as i64 - 2))),
    )
}

/// Intersection number of a curve class with a divisor class.
pub fn pair(c: &CurveClass, d: &DivisorClass) -> Result<Q> {
    check_same(c.n(), d.n())?;
    Ok(c.0.dot(&d.0))
}

/// Relabels the marked points: the coefficient of `δ_{0;S}` moves to `δ_{0;p(S)}`.
pub fn relabel(p: &Permutation, d: &DivisorClass) -> Result<DivisorClass> {
    check_same(p.len(), d.n())?;
    let mut c = Coords::zero(d.n());
    c.lambda = d.0.lambda.clone();
    for (s, v) in &d.0.boundary {
        c.add_at(p.apply_subset(*s), v);
    }
    Ok(DivisorClass(c))
}

/// Relabeling of curve classes, for checking that pairings are preserved.
pub fn relabel_curve(p: &Permutation, cc: &CurveClass) -> Result<CurveClass> {
    check_same(p.len(), cc.n())?;
    let d = relabel(p, &DivisorClass(cc.0.clone()))?;
    Ok(CurveClass(d.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn sub(labels: &[usize], n: usize) -> Subset {
        Subset::from_labels(labels.iter().copied(), n).unwrap()
    }

    #[test]
    fn delta_irr_is_twelve_lambda() {
        let d = delta_irr_class(3).unwrap();
        assert_eq!(d.lambda_coeff(), &q(12));
        assert_eq!(d.boundary_terms().count(), 0);
        let d1 = delta_irr_class(1).unwrap();
        assert_eq!(d1, DivisorClass::lambda(1).unwrap().scale(&q(12)));
        assert_eq!(delta_irr_class(0), Err(Error::InvalidDimension(0)));
    }

    #[test]
    fn psi_examples() {
        let p = psi_class(2, 1).unwrap();
        let expect = DivisorClass::lambda(2)
            .unwrap()
            .checked_add(&DivisorClass::boundary_labels(2, &[1, 2]).unwrap())
            .unwrap();
        assert_eq!(p, expect);

        // Subsets of {1,2,3} containing 2, listed by hand.
        let p = psi_class(3, 2).unwrap();
        let expect = DivisorClass::from_parts(
            3,
            q(1),
            [sub(&[1, 2], 3), sub(&[2, 3], 3), sub(&[1, 2, 3], 3)].map(|s| (s, q(1))),
        )
        .unwrap();
        assert_eq!(p, expect);

        let swap = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(
            relabel(&swap, &psi_class(3, 2).unwrap()).unwrap(),
            psi_class(3, 1).unwrap()
        );
        assert!(matches!(psi_class(3, 4), Err(Error::InvalidLabel { .. })));
        assert!(matches!(psi_class(3, 0), Err(Error::InvalidLabel { .. })));
    }

    #[test]
    fn psi_support_small_n() {
        for n in 1..=12usize {
            for i in 1..=n {
                let p = psi_class(n as i64, i as i64).unwrap();
                assert_eq!(p.lambda_coeff(), &q(1));
                let support: Vec<Subset> = p.boundary_terms().map(|(s, _)| s).collect();
                let expect: Vec<Subset> = boundary_subsets(n)
                    .into_iter()
                    .filter(|s| s.contains(i))
                    .collect();
                assert_eq!(support, expect);
                assert!(p.boundary_terms().all(|(_, c)| *c == q(1)));
            }
        }
    }

    #[test]
    fn canonical_examples() {
        let k3 = canonical_class(3).unwrap();
        assert_eq!(k3.lambda_coeff(), &q(-8));
        assert_eq!(k3.coeff(sub(&[1, 2], 3)), q(0));
        assert_eq!(k3.coeff(sub(&[1, 2, 3], 3)), q(1));
        assert_eq!(k3.boundary_terms().count(), 1);
        assert_eq!(canonical_class(11).unwrap().lambda_coeff(), &q(0));
        let k2 = canonical_class(2).unwrap();
        assert_eq!(k2, DivisorClass::lambda(2).unwrap().scale(&q(-9)));
    }

    #[test]
    fn pairing_basics() {
        let c = CurveClass::from_parts(
            3,
            q(0),
            [(sub(&[1, 2], 3), q(3)), (sub(&[1, 2, 3], 3), q(1))],
        )
        .unwrap();
        assert_eq!(pair(&c, &DivisorClass::zero(3).unwrap()).unwrap(), q(0));
        assert_eq!(
            pair(&c, &DivisorClass::boundary_labels(3, &[1, 2]).unwrap()).unwrap(),
            q(3)
        );
        assert_eq!(pair(&c, &delta_irr_class(3).unwrap()).unwrap(), q(0));
        assert!(matches!(
            pair(&c, &DivisorClass::zero(4).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
        let c2 = CurveClass::from_delta_irr_pairing(3, q(12), []).unwrap();
        assert_eq!(c2.lambda_pairing(), &q(1));
        assert_eq!(c2.delta_irr_pairing(), q(12));
    }

    #[test]
    fn proportionality() {
        let a = canonical_class(4).unwrap();
        assert!(a.is_proportional(&a.scale(&frac(-3, 7))));
        assert!(!a.is_proportional(&psi_class(4, 1).unwrap()));
        let b = DivisorClass::boundary_labels(4, &[1, 2]).unwrap();
        assert!(b.is_proportional(&b.scale(&q(5))));
        assert!(!b.is_proportional(&DivisorClass::boundary_labels(4, &[1, 3]).unwrap()));
    }

    #[test]
    fn display_and_json() {
        let c = DivisorClass::from_parts(
            3,
            q(2),
            [(sub(&[1, 2], 3), q(-1)), (sub(&[1, 3], 3), frac(1, 2))],
        )
        .unwrap();
        assert_eq!(c.to_string(), "2λ - δ{1,2} + (1/2)δ{1,3}");
        let js = serde_json::to_string(&c).unwrap();
        assert_eq!(
            js,
            r#"{"n":3,"lambda":"2/1","boundary":[{"S":[1,2],"c":"-1/1"},{"S":[1,3],"c":"1/2"}]}"#
        );
        let back: DivisorClass = serde_json::from_str(&js).unwrap();
        assert_eq!(back, c);
        assert_eq!(DivisorClass::zero(2).unwrap().to_string(), "0");
        let zero_js = serde_json::to_string(&DivisorClass::zero(2).unwrap()).unwrap();
        assert_eq!(zero_js, r#"{"n":2,"lambda":"0/1","boundary":[]}"#);
    }

    #[test]
    fn json_rejects_bad_subsets() {
        let bad = [
            r#"{"n":3,"lambda":"0/1","boundary":[{"S":[1],"c":"1/1"}]}"#,
            r#"{"n":3,"lambda":"0/1","boundary":[{"S":[1,4],"c":"1/1"}]}"#,
            r#"{"n":3,"lambda":"0/1","boundary":[{"S":[1,1],"c":"1/1"}]}"#,
            r#"{"n":3,"lambda":"0/1","boundary":[{"S":[1,2],"c":"1/1"},{"S":[2,1],"c":"1/1"}]}"#,
            r#"{"n":0,"lambda":"0/1","boundary":[]}"#,
        ];
        for b in bad {
            assert!(serde_json::from_str::<DivisorClass>(b).is_err(), "{b}");
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        let p = Permutation::new(vec![2, 3, 1]).unwrap();
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert!(relabel(&p, &DivisorClass::zero(4).unwrap()).is_err());
    }

    fn arb_class(n: usize) -> impl Strategy<Value = DivisorClass> {
        let m = boundary_subsets(n).len();
        (
            (-20i64..20, 1i64..6),
            proptest::collection::vec(((0..m), -20i64..20, 1i64..6), 0..6),
        )
            .prop_map(move |((ln, ld), entries)| {
                let subs = boundary_subsets(n);
                DivisorClass::from_parts(
                    n,
                    frac(ln, ld),
                    entries.into_iter().map(|(i, p, d)| (subs[i], frac(p, d))),
                )
                .unwrap()
            })
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn pair_is_bilinear(
            d1 in arb_class(4), d2 in arb_class(4), c in arb_class(4),
            a in (-9i64..9, 1i64..5), b in (-9i64..9, 1i64..5),
        ) {
            let curve = CurveClass(c.0.clone());
            let (alpha, beta) = (frac(a.0, a.1), frac(b.0, b.1));
            let combo = d1.scale(&alpha).combine(&beta, &d2).unwrap();
            let lhs = pair(&curve, &combo).unwrap();
            let rhs = alpha * pair(&curve, &d1).unwrap() + beta * pair(&curve, &d2).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn relabel_is_group_action(d in arb_class(5), p in arb_perm(5), r in arb_perm(5)) {
            let lhs = relabel(&p.compose(&r).unwrap(), &d).unwrap();
            let rhs = relabel(&p, &relabel(&r, &d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(relabel(&Permutation::identity(5), &d).unwrap(), d);
        }

        #[test]
        fn relabel_preserves_pairing(d in arb_class(4), c in arb_class(4), p in arb_perm(4)) {
            let curve = CurveClass(c.0.clone());
            let lhs = pair(&relabel_curve(&p, &curve).unwrap(), &relabel(&p, &d).unwrap()).unwrap();
            prop_assert_eq!(lhs, pair(&curve, &d).unwrap());
        }

        #[test]
        fn json_round_trip(d in arb_class(5)) {
            let js = serde_json::to_string(&d).unwrap();
            let back: DivisorClass = serde_json::from_str(&js).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), js);
            prop_assert_eq!(back, d);
        }
    }
}
