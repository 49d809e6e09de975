//! Age arithmetic for the Reid–Tai criterion.
//!
//! An automorphism of order `k` acting on a deformation space with eigenvalues
//! `e^{2πi k_j/k}` has age `Σ k_j/k`. Canonical forms extend over the quotient
//! singularity when every element that is not a quasi-reflection has age at
//! least one.

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{frac, q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ProfileJson")]
pub struct AgeProfile {
    k: u64,
    exps: Vec<u64>,
}

#[derive(Deserialize)]
struct ProfileJson {
    k: u64,
    exps: Vec<u64>,
}

impl TryFrom<ProfileJson> for AgeProfile {
    type Error = Error;
    fn try_from(j: ProfileJson) -> Result<Self> {
        AgeProfile::new(j.k, j.exps)
    }
}

impl AgeProfile {
    pub fn new(k: u64, exps: Vec<u64>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidProfile(format!(
                "order k = {k} must be at least 2"
            )));
        }
        if exps.is_empty() {
            return Err(Error::InvalidProfile("exponent list is empty".into()));
        }
        if let Some(e) = exps.iter().find(|&&e| e >= k) {
            return Err(Error::InvalidProfile(format!(
                "exponent {e} is not in [0, {k})"
            )));
        }
        Ok(AgeProfile { k, exps })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    /// Exponents of the inverse automorphism, `k_j ↦ (k − k_j) mod k`.
    pub fn inverse(&self) -> AgeProfile {
        AgeProfile {
            k: self.k,
            exps: self.exps.iter().map(|&e| (self.k - e) % self.k).collect(),
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.exps.iter().filter(|&&e| e != 0).count()
    }
}

pub fn age(p: &AgeProfile) -> Q {
    let total: u64 = p.exps.iter().sum();
    frac(total as i64, p.k as i64)
}

/// Exactly one nontrivial eigenvalue.
pub fn is_quasi_reflection(p: &AgeProfile) -> bool {
    p.nonzero_count() == 1
}

/// A quasi-reflection whose nontrivial eigenvalue may not be a primitive
/// `k`-th root of unity: the exponent data alone does not pin down the order.
pub fn is_ambiguous(p: &AgeProfile) -> bool {
    is_quasi_reflection(p) && p.exps.iter().any(|&e| e != 0 && e.gcd(&p.k) > 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReidTaiVerdict {
    Extends,
    Fails,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileEntry {
    pub profile: AgeProfile,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub age: Q,
    pub quasi_reflection: bool,
    pub ambiguous: bool,
    /// Whether the age equals `1/k`.
    pub age_is_one_over_k: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReidTaiReport {
    pub entries: Vec<ProfileEntry>,
    /// Minimum age over profiles that are not quasi-reflections.
    #[serde(serialize_with = "crate::rational::ser_opt_q")]
    pub min_age: Option<Q>,
    pub verdict: ReidTaiVerdict,
}

/// Ages of all profiles; quasi-reflections are excluded from the verdict.
pub fn reid_tai_check(profiles: &[AgeProfile]) -> ReidTaiReport {
    let entries: Vec<ProfileEntry> = profiles
        .iter()
        .map(|p| {
            let a = age(p);
            ProfileEntry {
                profile: p.clone(),
                age_is_one_over_k: a == frac(1, p.k as i64),
                age: a,
                quasi_reflection: is_quasi_reflection(p),
                ambiguous: is_ambiguous(p),
            }
        })
        .collect();
    let min_age = entries
        .iter()
        .filter(|e| !e.quasi_reflection)
        .map(|e| e.age.clone())
        .min();
    let verdict = match &min_age {
        Some(m) if *m < q(1) => ReidTaiVerdict::Fails,
        _ => ReidTaiVerdict::Extends,
    };
    ReidTaiReport {
        entries,
        min_age,
        verdict,
    }
}

/// A contribution to the age listed in the case analysis of singularities,
/// as a one-eigenvalue profile.
#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub case: &'static str,
    pub profile: AgeProfile,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub expected: Q,
}

/// The listed contributions, one profile each. The setting is an elliptic
/// core `E` with a marked point `x` and a node `p` to a rational tail,
/// `φ` an automorphism of `E` of order `k` fixing both.
pub fn fixtures() -> Vec<Fixture> {
    let rows: [(&str, u64, u64, i64, i64); 7] = [
        ("k=2, H0(K_E^2(x))", 2, 1, 1, 2),
        ("k=2, torsion at the node, y -> -y", 2, 1, 1, 2),
        ("k=3, torsion at the node, y -> ζy", 3, 1, 1, 3),
        ("k=3, dz^2 at x", 3, 2, 2, 3),
        ("k=4, torsion at the node", 4, 1, 1, 4),
        ("k=4, dz^2", 4, 2, 2, 4),
        ("k=4, dz^2/z", 4, 1, 1, 4),
    ];
    rows.iter()
        .map(|&(case, k, e, p, d)| Fixture {
            case,
            profile: AgeProfile { k, exps: vec![e] },
            expected: frac(p, d),
        })
        .collect()
}

/// The combined profiles whose ages sum the listed contributions to one:
/// `1/2 + 1/2`, `1/3 + 2/3`, and `1/4 + 2/4 + 1/4`.
pub fn combined_fixtures() -> Vec<AgeProfile> {
    vec![
        AgeProfile {
            k: 2,
            exps: vec![1, 1],
        },
        AgeProfile {
            k: 3,
            exps: vec![1, 2],
        },
        AgeProfile {
            k: 4,
            exps: vec![1, 2, 1],
        },
    ]
}

/// Whether every fixture reproduces its listed contribution.
pub fn fixtures_consistent() -> bool {
    fixtures().iter().all(|f| age(&f.profile) == f.expected)
        && combined_fixtures().iter().all(|p| age(p) == q(1))
}

impl std::fmt::Display for AgeProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let exps: Vec<String> = self.exps.iter().map(u64::to_string).collect();
        write!(f, "k={} [{}]", self.k, exps.join(","))
    }
}

impl ReidTaiReport {
    pub fn excluded(&self) -> usize {
        self.entries.iter().filter(|e| e.quasi_reflection).count()
    }

    pub fn min_age_or_zero(&self) -> Q {
        self.min_age.clone().unwrap_or_else(Q::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(k: u64, e: &[u64]) -> AgeProfile {
        AgeProfile::new(k, e.to_vec()).unwrap()
    }

    #[test]
    fn age_examples() {
        assert_eq!(age(&p(2, &[1, 1])), q(1));
        assert_eq!(age(&p(3, &[1, 2])), q(1));
        assert_eq!(age(&p(5, &[0, 0, 0])), q(0));
        assert!(AgeProfile::new(3, vec![3]).is_err());
        assert!(AgeProfile::new(1, vec![0]).is_err());
        assert!(AgeProfile::new(3, vec![]).is_err());
    }

    #[test]
    fn quasi_reflection_examples() {
        assert!(is_quasi_reflection(&p(2, &[1, 0, 0])));
        assert_eq!(age(&p(2, &[1, 0, 0])), frac(1, 2));
        assert!(!is_quasi_reflection(&p(2, &[1, 1])));
        let r = reid_tai_check(&[p(4, &[1, 0])]);
        assert!(r.entries[0].quasi_reflection);
        assert!(r.entries[0].age_is_one_over_k);
        assert!(!r.entries[0].ambiguous);
        let r = reid_tai_check(&[p(4, &[2, 0])]);
        assert!(r.entries[0].ambiguous);
        assert!(!r.entries[0].age_is_one_over_k);
    }

    #[test]
    fn check_examples() {
        let r = reid_tai_check(&[p(2, &[1, 1]), p(3, &[1, 2]), p(4, &[1, 2, 1])]);
        assert!(r.entries.iter().all(|e| e.age == q(1)));
        assert_eq!(r.min_age, Some(q(1)));
        assert_eq!(r.verdict, ReidTaiVerdict::Extends);

        let r = reid_tai_check(&[p(2, &[1])]);
        assert_eq!(r.excluded(), 1);
        assert_eq!(r.min_age, None);
        assert_eq!(r.verdict, ReidTaiVerdict::Extends);

        let r = reid_tai_check(&[p(2, &[1, 0, 0, 0]), p(3, &[1, 0])]);
        assert_eq!(r.entries[1].age, frac(1, 3));
        assert_eq!(r.verdict, ReidTaiVerdict::Extends);

        let r = reid_tai_check(&[p(3, &[1, 1, 0])]);
        assert_eq!(r.verdict, ReidTaiVerdict::Fails);
    }

    #[test]
    fn fixtures_reproduce_contributions() {
        assert!(fixtures_consistent());
        let mut listed: Vec<Q> = fixtures().iter().map(|f| age(&f.profile)).collect();
        listed.sort();
        assert_eq!(
            listed,
            vec![
                frac(1, 4),
                frac(1, 4),
                frac(1, 3),
                frac(1, 2),
                frac(1, 2),
                frac(1, 2),
                frac(2, 3)
            ]
        );
    }

    #[test]
    fn json_round_trip() {
        let prof = p(4, &[1, 2, 1]);
        let js = serde_json::to_string(&prof).unwrap();
        assert_eq!(js, r#"{"k":4,"exps":[1,2,1]}"#);
        assert_eq!(serde_json::from_str::<AgeProfile>(&js).unwrap(), prof);
        assert!(serde_json::from_str::<AgeProfile>(r#"{"k":2,"exps":[2]}"#).is_err());
    }

    fn profile() -> impl Strategy<Value = (u64, Vec<u64>, Vec<u64>)> {
        (2u64..30).prop_flat_map(|k| {
            (
                Just(k),
                proptest::collection::vec(0..k, 1..8),
                proptest::collection::vec(0..k, 1..8),
            )
        })
    }

    proptest! {
        #[test]
        fn additive_over_concatenation((k, e1, e2) in profile()) {
            let mut both = e1.clone();
            both.extend(&e2);
            prop_assert_eq!(age(&p(k, &both)), age(&p(k, &e1)) + age(&p(k, &e2)));
        }

        #[test]
        fn inverse_sums_to_nonzero_count((k, e, _) in profile()) {
            let pr = p(k, &e);
            prop_assert_eq!(age(&pr) + age(&pr.inverse()), q(pr.nonzero_count() as i64));
        }
    }
}
