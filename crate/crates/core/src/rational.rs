//! Exact rationals and their `"p/q"` string form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Arbitrary-precision rational used for every coefficient and pairing.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

/// Lowest-terms `p/q` with `q > 0`; zero is `0/1`.
pub fn to_pq(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (p, d) = match s.split_once('/') {
        Some((p, d)) => (p.trim(), d.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d = BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(p, d))
}

/// Human-readable form: integers print bare, everything else as `p/q`.
pub fn display_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        to_pq(x)
    }
}

/// Serde wrapper writing a rational as its `p/q` string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PQ(pub Q);

impl Serialize for PQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(&self.0))
    }
}

impl<'de> Deserialize<'de> for PQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map(PQ).map_err(de::Error::custom)
    }
}

impl fmt::Display for PQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_pq(&self.0))
    }
}

/// `serialize_with` helper writing a bare rational as `p/q`.
pub fn ser_q<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_pq(x))
}

/// `serialize_with` helper for optional rationals.
pub fn ser_opt_q<S: Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&to_pq(v)),
        None => s.serialize_none(),
    }
}

/// Formats `coeff·name` terms as a signed sum, skipping zeros. Empty sums print `0`.
pub(crate) fn format_linear<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a Q, String)>,
{
    let mut out = String::new();
    for (c, name) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Q::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            if mag.denom().is_one() {
                out.push_str(&mag.numer().to_string());
            } else {
                out.push_str(&format!("({})", to_pq(&mag)));
            }
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
