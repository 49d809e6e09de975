//! Brute-force computations on the square torus `(ℤ/N)²`.
//!
//! The `N`-torsion of an elliptic curve is `(ℤ/N)²`, and going around loops in
//! the moduli of curves acts on it by the shears `(x, y) ↦ (x + y, y)` and
//! `(x, y) ↦ (x, x + y)`. The orbits of that action, and the number of points
//! of each exact order, are what the component counts and the rescaling
//! factors rest on.

use std::collections::VecDeque;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`monodromy_orbits`].
pub const MAX_ORBIT_MODULUS: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticePoint {
    pub x: u64,
    pub y: u64,
    #[serde(rename = "N")]
    pub modulus: u64,
}

impl LatticePoint {
    pub fn new(x: u64, y: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::NonPositive(0));
        }
        if x >= modulus || y >= modulus {
            return Err(Error::InvalidLabel {
                label: x.max(y) as i64,
                n: modulus as usize,
            });
        }
        Ok(LatticePoint { x, y, modulus })
    }

    /// Additive order in `(ℤ/N)²`.
    pub fn order(&self) -> u64 {
        self.modulus / self.x.gcd(&self.y).gcd(&self.modulus)
    }

    /// `(x, y) ↦ (x + y, y)`.
    pub fn shear_right(&self) -> Self {
        LatticePoint {
            x: (self.x + self.y) % self.modulus,
            ..*self
        }
    }

    /// `(x, y) ↦ (x, x + y)`.
    pub fn shear_up(&self) -> Self {
        LatticePoint {
            y: (self.x + self.y) % self.modulus,
            ..*self
        }
    }

    fn index(&self) -> usize {
        (self.x * self.modulus + self.y) as usize
    }
}

impl std::fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

fn points(modulus: u64) -> impl Iterator<Item = LatticePoint> {
    (0..modulus).flat_map(move |x| (0..modulus).map(move |y| LatticePoint { x, y, modulus }))
}

/// Number of points of `(ℤ/N)²` of exact order `t`, by enumeration.
pub fn exact_order_count(t: u64, modulus: u64) -> Result<u64> {
    if t == 0 || modulus == 0 {
        return Err(Error::NonPositive(0));
    }
    if !modulus.is_multiple_of(t) {
        return Err(Error::NotADivisor { t, modulus });
    }
    Ok(points(modulus).filter(|p| p.order() == t).count() as u64)
}

/// `gcd(x, y, a)`, which is `a` at the origin.
pub fn orbit_invariant(p: &LatticePoint, a: u64) -> Result<u64> {
    if p.x >= a || p.y >= a {
        return Err(Error::InvalidLabel {
            label: p.x.max(p.y) as i64,
            n: a as usize,
        });
    }
    Ok(p.x.gcd(&p.y).gcd(&a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Common value of `gcd(x, y, a)` on the orbit.
    pub k: u64,
    pub size: usize,
    pub representative: LatticePoint,
    #[serde(skip)]
    pub points: Vec<LatticePoint>,
}

/// Orbits of the group generated by the two shears on `(ℤ/a)²`, by
/// breadth-first closure. Sorted by `k` descending, so the origin comes first.
///
/// Errors if some orbit is not constant in `gcd(x, y, a)`, which would
/// contradict the shears being invertible over `ℤ`.
pub fn monodromy_orbits(a: u64) -> Result<Vec<Orbit>> {
    if a == 0 {
        return Err(Error::NonPositive(0));
    }
    if a > MAX_ORBIT_MODULUS {
        return Err(Error::ModulusTooLarge(a));
    }
    let mut seen = vec![false; (a * a) as usize];
    let mut orbits = Vec::new();
    let mut queue = VecDeque::new();
    for start in points(a) {
        if seen[start.index()] {
            continue;
        }
        seen[start.index()] = true;
        queue.push_back(start);
        let mut members = Vec::new();
        while let Some(p) = queue.pop_front() {
            members.push(p);
            for next in [p.shear_right(), p.shear_up()] {
                if !seen[next.index()] {
                    seen[next.index()] = true;
                    queue.push_back(next);
                }
            }
        }
        let k = orbit_invariant(&start, a)?;
        for p in &members {
            if orbit_invariant(p, a)? != k {
                return Err(Error::Internal(format!(
                    "orbit of {start} mixes gcd values mod {a}"
                )));
            }
        }
        members.sort();
        orbits.push(Orbit {
            k,
            size: members.len(),
            representative: start,
            points: members,
        });
    }
    orbits.sort_by_key(|o| std::cmp::Reverse(o.k));
    Ok(orbits)
}

/// CSV with header `k,orbit-size,representative`.
pub fn orbits_csv(orbits: &[Orbit]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "orbit-size", "representative"])
        .and_then(|_| {
            orbits.iter().try_for_each(|o| {
                w.write_record([
                    o.k.to_string(),
                    o.size.to_string(),
                    o.representative.to_string(),
                ])
            })
        })
        .expect("writing to memory");
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("ascii output")
}
