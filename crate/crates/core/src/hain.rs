//! The divisor `D_a` cut out by `Σ a_i p_i = 0` in the Jacobian.
//!
//! Covers signature validation, the class of `D_a`, the degree of `D_a` on a
//! one-parameter family, the count of irreducible components and the class
//! of each component.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd_of, prime_factors};
use crate::class_algebra::{check_n, CurveClass, DivisorClass, Permutation};
use crate::error::{Error, Result};
use crate::rational::{frac, q, Q};
use crate::subset::{boundary_subsets, Subset};

pub use crate::arith::eta;

/// A zero-sum integer tuple, not identically zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Signature(Vec<i64>);

/// Checks `Σ a_i = 0` and that some entry is nonzero.
pub fn validate_signature(a: &[i64]) -> Result<Signature> {
    check_n(a.len() as i64)?;
    let sum: i128 = a.iter().map(|&x| x as i128).sum();
    if sum != 0 {
        return Err(Error::NotZeroSum(
            sum.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
        ));
    }
    if a.iter().all(|&x| x == 0) {
        return Err(Error::DegenerateSignature);
    }
    Ok(Signature(a.to_vec()))
}

impl Signature {
    pub fn new(a: Vec<i64>) -> Result<Self> {
        validate_signature(&a)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Positive gcd of the nonzero entries.
    pub fn gcd(&self) -> u64 {
        gcd_of(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == 1
    }

    /// Labels (1-based) whose entry is zero.
    pub fn zero_support(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.0[i - 1] == 0).collect()
    }

    /// Labels carrying a nonzero entry, as a subset.
    pub fn support(&self) -> Subset {
        (1..=self.n())
            .filter(|&i| self.0[i - 1] != 0)
            .fold(Subset::EMPTY, |s, i| s.union(Subset::singleton(i)))
    }

    pub fn has_zero_entry(&self) -> bool {
        self.0.contains(&0)
    }

    /// Drops zero entries. Returns the stripped signature and, for each of its
    /// labels, the original label it came from.
    pub fn stripped(&self) -> (Signature, Vec<usize>) {
        let keep: Vec<usize> = (1..=self.n()).filter(|&i| self.0[i - 1] != 0).collect();
        let a = keep.iter().map(|&i| self.0[i - 1]).collect();
        (Signature(a), keep)
    }

    pub fn negated(&self) -> Signature {
        Signature(self.0.iter().map(|x| -x).collect())
    }

    /// The signature `p·a` with `(p·a)_{p(i)} = a_i`, so that the class of
    /// `D_{p·a}` is the relabeling of the class of `D_a` by `p`.
    pub fn permuted(&self, p: &Permutation) -> Result<Signature> {
        if p.len() != self.n() {
            return Err(Error::DimensionMismatch {
                left: p.len(),
                right: self.n(),
            });
        }
        let mut out = vec![0; self.n()];
        for i in 1..=self.n() {
            out[p.apply(i) - 1] = self.0[i - 1];
        }
        Ok(Signature(out))
    }

    /// Multiplies every entry by `t ≥ 1`.
    pub fn scaled(&self, t: u64) -> Signature {
        Signature(self.0.iter().map(|&x| x * t as i64).collect())
    }

    /// `a / gcd(a)`.
    pub fn primitive_part(&self) -> Signature {
        let d = self.gcd() as i64;
        Signature(self.0.iter().map(|&x| x / d).collect())
    }

    fn sum_sq(&self) -> i128 {
        self.0.iter().map(|&x| (x as i128) * (x as i128)).sum()
    }

    /// `Σ_{{i,j} ⊆ S} a_i a_j`.
    fn pair_sum(&self, s: Subset) -> i128 {
        let (mut lin, mut sq) = (0i128, 0i128);
        for l in s.labels() {
            let x = self.0[l - 1] as i128;
            lin += x;
            sq += x * x;
        }
        (lin * lin - sq) / 2
    }
}

impl TryFrom<Vec<i64>> for Signature {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        validate_signature(&v)
    }
}

impl From<Signature> for Vec<i64> {
    fn from(s: Signature) -> Self {
        s.0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

fn big(x: i128) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// The class of `D_a`:
/// `(−1 + ½Σa_i²)(λ + δ_{0;{1..n}}) − Σ_{2≤|S|<n} (Σ_{{i,j}⊆S} a_i a_j) δ_{0;S}`.
///
/// The same expression covers signatures with zero entries: the `−1` sits on
/// every `δ_{0;S}` with `S` containing all labels of nonzero entries, which is
/// the boundary divisor the degenerate locus picks up. For a signature with no
/// zero entries this is exactly `δ_{0;{1..n}}`, and in general the result
/// equals the forgetful pullback of the class of the stripped signature.
pub fn hain_class(a: &Signature) -> Result<DivisorClass> {
    let n = a.n();
    if n < 2 {
        return Err(Error::InvalidDimension(n as i64));
    }
    let ss = a.sum_sq();
    if ss % 2 != 0 {
        return Err(Error::Internal(format!(
            "Σa² = {ss} is odd for zero-sum signature {a}"
        )));
    }
    let lambda = big(ss / 2 - 1);
    let supp = a.support();
    let boundary = boundary_subsets(n).into_iter().map(|s| {
        let mut c = -a.pair_sum(s);
        if supp.is_subset_of(s) {
            c -= 1;
        }
        (s, big(c))
    });
    DivisorClass::from_parts(n, lambda, boundary)
}

/// Invariants of a one-parameter family of `n`-pointed genus-one curves:
/// `d_irr` rational nodal fibers, and `d_S` fibers where the sections in `S`
/// meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyData {
    n: usize,
    d_irr: u64,
    d_s: BTreeMap<Subset, u64>,
}

#[derive(Serialize, Deserialize)]
struct FamilyEntryJson {
    #[serde(rename = "S")]
    s: Vec<usize>,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    n: usize,
    d_irr: u64,
    #[serde(rename = "d_S")]
    d_s: Vec<FamilyEntryJson>,
}

impl FamilyData {
    pub fn new<I>(n: usize, d_irr: u64, d_s: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, u64)>,
    {
        let n = check_n(n as i64)?;
        let mut map = BTreeMap::new();
        for (s, c) in d_s {
            if !s.fits(n) || s.len() < 2 {
                return Err(Error::Parse(format!(
                    "{s} is not a boundary index for n = {n}"
                )));
            }
            if c > 0 {
                *map.entry(s).or_insert(0) += c;
            }
        }
        Ok(FamilyData { n, d_irr, d_s: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d_irr(&self) -> u64 {
        self.d_irr
    }

    pub fn d(&self, s: Subset) -> u64 {
        self.d_s.get(&s).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> impl Iterator<Item = (Subset, u64)> + '_ {
        self.d_s.iter().map(|(s, c)| (*s, *c))
    }

    /// The induced curve class on the base: `B·λ = d_irr/12`, `B·δ_{0;S} = d_S`.
    pub fn curve_class(&self) -> CurveClass {
        CurveClass::from_parts(
            self.n,
            frac(self.d_irr as i64, 12),
            self.d_s.iter().map(|(s, c)| (*s, q(*c as i64))),
        )
        .expect("family subsets are validated on construction")
    }
}

impl Serialize for FamilyData {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyJson {
            n: self.n,
            d_irr: self.d_irr,
            d_s: self
                .d_s
                .iter()
                .map(|(s, c)| FamilyEntryJson {
                    s: s.labels().collect(),
                    count: *c,
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FamilyData {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = FamilyJson::deserialize(de)?;
        let n = j.n;
        let entries = j
            .d_s
            .into_iter()
            .map(|e| Ok((Subset::from_labels(e.s, n)?, e.count)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        FamilyData::new(n, j.d_irr, entries).map_err(serde::de::Error::custom)
    }
}

/// Intersection numbers on the total space of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInvariants {
    /// `ω² = −Σ_S d_S`
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub omega_sq: Q,
    /// `σ_i·σ_j = Σ_{{i,j}⊆S} d_S`; for `i = j` this is `σ_i² = −d_irr/12`.
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub sigma_i_dot_sigma_j: Q,
    /// `ω·σ_i = d_irr/12`
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub omega_dot_sigma_i: Q,
    /// `B·ψ_i = d_irr/12 + Σ_{i∈S} d_S`
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub psi_degree_i: Q,
}

pub fn family_invariants(f: &FamilyData, i: usize, j: usize) -> Result<FamilyInvariants> {
    for l in [i, j] {
        if l == 0 || l > f.n {
            return Err(Error::InvalidLabel {
                label: l as i64,
                n: f.n,
            });
        }
    }
    let total: u64 = f.d_s.values().sum();
    let omega_sigma = frac(f.d_irr as i64, 12);
    let sigma_ij = if i == j {
        -omega_sigma.clone()
    } else {
        q(f.counts()
            .filter(|(s, _)| s.contains(i) && s.contains(j))
            .map(|(_, c)| c as i64)
            .sum())
    };
    let through_i: i64 = f
        .counts()
        .filter(|(s, _)| s.contains(i))
        .map(|(_, c)| c as i64)
        .sum();
    Ok(FamilyInvariants {
        omega_sq: q(-(total as i64)),
        sigma_i_dot_sigma_j: sigma_ij,
        psi_degree_i: &omega_sigma + q(through_i),
        omega_dot_sigma_i: omega_sigma,
    })
}

/// The Grothendieck–Riemann–Roch degree
/// `−d_irr/12 + (Σa_i²)·d_irr/24 − Σ_S (Σ_{{i,j}⊆S} a_i a_j) d_S`.
///
/// For a signature without zero entries this is `B·D_a + d_{{1..n}}`. With
/// zero entries it is `B·D_a + Σ_{S ⊇ supp(a)} d_S`.
pub fn grr_degree(a: &Signature, f: &FamilyData) -> Result<Q> {
    if a.n() != f.n {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: f.n,
        });
    }
    let d_irr = f.d_irr as i128;
    let mut out = frac(-1, 12) * big(d_irr) + frac(1, 24) * big(a.sum_sq() * d_irr);
    for (s, c) in f.counts() {
        out -= big(a.pair_sum(s) * c as i128);
    }
    Ok(out)
}

/// Number of irreducible components of `D_a`.
///
/// Zero entries are dropped first. Two remaining entries `(m, −m)` give
/// `η(|m|) − 1` (the component `p_1 = p_2` is a boundary divisor and is not
/// part of `D_a`); three or more give `η(gcd)`.
pub fn component_count(a: &Signature) -> Result<u64> {
    let (b, _) = a.stripped();
    match b.n() {
        0 | 1 => Err(Error::DegenerateSignature),
        2 => Ok(eta(b.entries()[0].abs())? - 1),
        _ => eta(b.gcd() as i64),
    }
}

/// `σ(t) = t² ∏_{p | t} (1 − 1/p²)`, with `σ(1) = 1`.
pub fn sigma_fn(t: i64) -> Result<u64> {
    if t <= 0 {
        return Err(Error::NonPositive(t));
    }
    if t == 1 {
        return Ok(1);
    }
    let mut v = q(t) * q(t);
    for p in prime_factors(t as u64) {
        v *= Q::one() - Q::new(BigInt::one(), BigInt::from(p) * BigInt::from(p));
    }
    if !v.is_integer() {
        return Err(Error::Internal(format!("σ({t}) = {v} is not an integer")));
    }
    u64::try_from(v.to_integer()).map_err(|_| Error::Internal(format!("σ({t}) overflows")))
}

/// `∏_{p | d} (1 − 1/p²)`.
fn rescale_factor(d: u64) -> Q {
    prime_factors(d)
        .into_iter()
        .map(|p| Q::one() - frac(1, (p * p) as i64))
        .fold(Q::one(), |acc, x| acc * x)
}

fn require_component_domain(a: &Signature) -> Result<()> {
    if a.n() == 2 {
        return Err(Error::UnsupportedForTwoPoints);
    }
    if let Some(i) = a.entries().iter().position(|&x| x == 0) {
        return Err(Error::ZeroEntry(i + 1));
    }
    Ok(())
}

/// Class of the component `D'_a` where `Σ a_i p_i = 0` but `Σ (a_i/s) p_i ≠ 0`
/// for every `s > 1` dividing `gcd(a)`:
/// `∏_{p|d} (1 − 1/p²) (D_a + λ + δ_{0;{1..n}})`, or `D_a` itself when `d = 1`.
pub fn component_class(a: &Signature) -> Result<DivisorClass> {
    require_component_domain(a)?;
    let d = a.gcd();
    let total = hain_class(a)?;
    if d == 1 {
        return Ok(total);
    }
    let n = a.n();
    let shifted = total
        .checked_add(&DivisorClass::lambda(n)?)?
        .checked_add(&DivisorClass::boundary(n, Subset::full(n))?)?;
    Ok(shifted.scale(&rescale_factor(d)))
}

/// Splits `D_a = Σ_{t | d} D'_{t·b}` with `b = a/d`, one term per positive divisor `t`.
pub fn decompose(a: &Signature) -> Result<Vec<(u64, DivisorClass)>> {
    require_component_domain(a)?;
    let b = a.primitive_part();
    divisors(a.gcd())
        .into_iter()
        .map(|t| Ok((t, component_class(&b.scaled(t))?)))
        .collect()
}

/// Sum of a decomposition, for coefficientwise comparison against `hain_class`.
pub fn sum_components(n: usize, parts: &[(u64, DivisorClass)]) -> Result<DivisorClass> {
    parts
        .iter()
        .try_fold(DivisorClass::zero(n)?, |acc, (_, c)| acc.checked_add(c))
}
