//! The birational automorphism `f` of the 3-pointed space,
//! `(E; p₁, p₂, p₃) ↦ (E; p₁, p₂, p₂ + p₃ − p₁)`, on divisor classes and on
//! signatures.
//!
//! On the basis `λ, δ_{0;{1,2}}, δ_{0;{1,3}}, δ_{0;{2,3}}, δ_{0;{1,2,3}}`:
//!
//! | class        | `f_*`              | `f⁻¹_*`            |
//! |--------------|--------------------|--------------------|
//! | `λ`          | `λ`                | `λ`                |
//! | `δ_{0;{1,2}}`  | `δ_{0;{1,2}}`      | `δ_{0;{1,2}}`      |
//! | `δ_{0;{1,3}}`  | `δ_{0;{2,3}}`      | `D_{(2,−1,−1)}`    |
//! | `δ_{0;{2,3}}`  | `D_{(−1,2,−1)}`    | `δ_{0;{1,3}}`      |
//! | `δ_{0;{1,2,3}}`| `δ_{0;{1,2,3}}`    | `δ_{0;{1,2,3}}`    |
//!
//! `λ ↦ λ` follows from `δ_irr ↦ δ_irr`. Since `f` is an isomorphism in
//! codimension one, the table extends linearly to the whole Picard space.

use serde::{Deserialize, Serialize};

use crate::class_algebra::{DivisorClass, Permutation};
use crate::error::{Error, Result};
use crate::hain::{hain_class, validate_signature, Signature};
use crate::rational::{q, Q};
use crate::subset::Subset;

/// Basis of the 3-pointed Picard space in matrix order.
pub const BASIS_LABELS: [&str; 5] = ["λ", "δ{1,2}", "δ{1,3}", "δ{2,3}", "δ{1,2,3}"];

const BOUNDARY_BITS: [u32; 4] = [0b011, 0b101, 0b110, 0b111];

pub type Matrix5 = [[Q; 5]; 5];

fn require_three(n: usize) -> Result<()> {
    if n != 3 {
        return Err(Error::WrongPointCount {
            expected: 3,
            got: n,
        });
    }
    Ok(())
}

/// Coordinates of a 3-pointed class in `BASIS_LABELS` order.
pub fn coords(d: &DivisorClass) -> Result<[Q; 5]> {
    require_three(d.n())?;
    let mut v: [Q; 5] = Default::default();
    v[0] = d.lambda_coeff().clone();
    for (i, b) in BOUNDARY_BITS.iter().enumerate() {
        v[i + 1] = d.coeff(Subset::from_bits(*b));
    }
    Ok(v)
}

pub fn from_coords(v: &[Q; 5]) -> DivisorClass {
    DivisorClass::from_parts(
        3,
        v[0].clone(),
        BOUNDARY_BITS
            .iter()
            .zip(&v[1..])
            .map(|(b, c)| (Subset::from_bits(*b), c.clone())),
    )
    .expect("3-pointed basis")
}

fn unit(i: usize) -> [Q; 5] {
    let mut v: [Q; 5] = Default::default();
    v[i] = q(1);
    v
}

fn hain_coords(a: [i64; 3]) -> [Q; 5] {
    let d = hain_class(&validate_signature(&a).expect("fixed signature")).expect("fixed signature");
    coords(&d).expect("3 points")
}

/// Column `j` is the image of basis vector `j`.
fn matrix_from_columns(cols: [[Q; 5]; 5]) -> Matrix5 {
    let mut m: Matrix5 = Default::default();
    for (j, col) in cols.iter().enumerate() {
        for i in 0..5 {
            m[i][j] = col[i].clone();
        }
    }
    m
}

/// Matrix of `f_*` in `BASIS_LABELS` order.
pub fn f_matrix() -> Matrix5 {
    matrix_from_columns([unit(0), unit(1), unit(3), hain_coords([-1, 2, -1]), unit(4)])
}

/// Matrix of `(f⁻¹)_*` in `BASIS_LABELS` order.
pub fn f_inverse_matrix() -> Matrix5 {
    matrix_from_columns([unit(0), unit(1), hain_coords([2, -1, -1]), unit(2), unit(4)])
}

pub fn mat_mul(a: &Matrix5, b: &Matrix5) -> Matrix5 {
    let mut out: Matrix5 = Default::default();
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] = (0..5).map(|k| &a[i][k] * &b[k][j]).sum();
        }
    }
    out
}

pub fn is_identity(m: &Matrix5) -> bool {
    (0..5).all(|i| (0..5).all(|j| m[i][j] == if i == j { q(1) } else { q(0) }))
}

fn apply(m: &Matrix5, d: &DivisorClass) -> Result<DivisorClass> {
    let v = coords(d)?;
    let mut out: [Q; 5] = Default::default();
    for (i, row) in m.iter().enumerate() {
        out[i] = row.iter().zip(&v).map(|(a, b)| a * b).sum();
    }
    Ok(from_coords(&out))
}

pub fn f_pushforward(d: &DivisorClass) -> Result<DivisorClass> {
    apply(&f_matrix(), d)
}

pub fn f_inverse_pushforward(d: &DivisorClass) -> Result<DivisorClass> {
    apply(&f_inverse_matrix(), d)
}

/// `(a₁, a₂, a₃) ↦ (a₁ − a₃, a₂ + a₃, a₃)`.
pub fn f_signature(a: &Signature) -> Result<Signature> {
    require_three(a.n())?;
    let e = a.entries();
    validate_signature(&[e[0] - e[2], e[1] + e[2], e[2]])
}

/// A single step of the signature reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "lowercase")]
pub enum Move {
    /// Relabel by `p`, using the convention `(p·a)_{p(i)} = a_i`.
    Permute {
        p: Permutation,
    },
    Negate,
    F,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub start: Signature,
    pub steps: Vec<Move>,
    pub end: Signature,
}

impl ReductionTrace {
    /// Replays the moves from `start`, returning every intermediate signature
    /// (including `start` and the final one).
    pub fn replay(&self) -> Result<Vec<Signature>> {
        let mut cur = self.start.clone();
        let mut seen = vec![cur.clone()];
        for m in &self.steps {
            cur = apply_move(&cur, m)?;
            seen.push(cur.clone());
        }
        Ok(seen)
    }

    /// Same as [`replay`](Self::replay) on plain triples, without allocating
    /// a signature per step.
    pub fn replay_triples(&self) -> Result<Vec<[i64; 3]>> {
        require_three(self.start.n())?;
        let e = self.start.entries();
        let mut cur = [e[0], e[1], e[2]];
        let mut seen = Vec::with_capacity(self.steps.len() + 1);
        seen.push(cur);
        for m in &self.steps {
            cur = match m {
                Move::Permute { p } => {
                    if p.len() != 3 {
                        return Err(Error::DimensionMismatch {
                            left: p.len(),
                            right: 3,
                        });
                    }
                    let mut next = [0; 3];
                    for (i, x) in cur.iter().enumerate() {
                        next[p.apply(i + 1) - 1] = *x;
                    }
                    next
                }
                Move::Negate => cur.map(|x| -x),
                Move::F => [cur[0] - cur[2], cur[1] + cur[2], cur[2]],
            };
            seen.push(cur);
        }
        Ok(seen)
    }

    pub fn f_steps(&self) -> usize {
        self.steps.iter().filter(|m| **m == Move::F).count()
    }
}

pub fn apply_move(a: &Signature, m: &Move) -> Result<Signature> {
    match m {
        Move::Permute { p } => a.permuted(p),
        Move::Negate => Ok(a.negated()),
        Move::F => f_signature(a),
    }
}

/// Multiset `{1, 1, −2}`.
pub fn is_base_case(a: &[i64; 3]) -> bool {
    let mut s = *a;
    s.sort_unstable();
    s == [-2, 1, 1]
}

/// Reduces a primitive triple with nonzero entries to a permutation of
/// `(1, 1, −2)`.
///
/// Each round: stop at the base case; negate when fewer than two entries are
/// positive; stop again if that reached the base case; relabel so that
/// `a₁ ≥ a₃ > 0 > a₂`; apply `f`. Each `f`-step lowers `max|a_i|` from
/// `a₁ + a₃` to `a₁`.
pub fn reduce_signature(a: &Signature) -> Result<ReductionTrace> {
    require_three(a.n())?;
    if let Some(i) = a.entries().iter().position(|&x| x == 0) {
        return Err(Error::ZeroEntry(i + 1));
    }
    let g = a.gcd();
    if g != 1 {
        return Err(Error::NotPrimitive(g));
    }
    let mut cur = [a.entries()[0], a.entries()[1], a.entries()[2]];
    let mut steps = Vec::new();
    loop {
        if is_base_case(&cur) {
            break;
        }
        if cur.iter().filter(|&&x| x > 0).count() < 2 {
            cur = cur.map(|x| -x);
            steps.push(Move::Negate);
            if is_base_case(&cur) {
                break;
            }
        }
        // Exactly two positive entries now; order them big, negative, small.
        let neg = cur.iter().position(|&x| x < 0).expect("one negative entry");
        let mut pos: Vec<usize> = (0..3).filter(|&i| i != neg).collect();
        if cur[pos[0]] < cur[pos[1]] {
            pos.swap(0, 1);
        }
        // Old index -> new slot (0-based): pos[0] -> 0, neg -> 1, pos[1] -> 2.
        let mut images = [0usize; 3];
        images[pos[0]] = 1;
        images[neg] = 2;
        images[pos[1]] = 3;
        if images != [1, 2, 3] {
            let p = Permutation::new_unchecked(images.to_vec());
            let mut next = [0i64; 3];
            for i in 0..3 {
                next[images[i] - 1] = cur[i];
            }
            cur = next;
            steps.push(Move::Permute { p });
        }
        cur = [cur[0] - cur[2], cur[1] + cur[2], cur[2]];
        steps.push(Move::F);
    }
    Ok(ReductionTrace {
        start: a.clone(),
        steps,
        end: validate_signature(&cur)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(a: &[i64]) -> Signature {
        validate_signature(a).unwrap()
    }

    fn d(labels: &[usize]) -> DivisorClass {
        DivisorClass::boundary_labels(3, labels).unwrap()
    }

    #[test]
    fn f_signature_examples() {
        assert_eq!(f_signature(&sig(&[3, -5, 2])).unwrap(), sig(&[1, -3, 2]));
        assert_eq!(f_signature(&sig(&[4, -4, 0])).unwrap(), sig(&[4, -4, 0]));
        assert_eq!(f_signature(&sig(&[6, 3, -9])).unwrap().gcd(), 3);
        assert!(f_signature(&sig(&[1, -1])).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let img = f_pushforward(&d(&[2, 3])).unwrap();
        assert_eq!(img, hain_class(&sig(&[-1, 2, -1])).unwrap());
        assert_eq!(
            img.to_string(),
            "2λ + 2δ{1,2} - δ{1,3} + 2δ{2,3} + 2δ{1,2,3}"
        );

        assert_eq!(
            f_pushforward(&hain_class(&sig(&[2, -1, -1])).unwrap()).unwrap(),
            d(&[1, 3])
        );
        let lam = DivisorClass::lambda(3).unwrap();
        assert_eq!(f_pushforward(&lam).unwrap(), lam);
        assert!(f_pushforward(&DivisorClass::lambda(4).unwrap()).is_err());
    }

    #[test]
    fn inverse_examples() {
        let img = f_inverse_pushforward(&d(&[1, 3])).unwrap();
        assert_eq!(
            img.to_string(),
            "2λ + 2δ{1,2} + 2δ{1,3} - δ{2,3} + 2δ{1,2,3}"
        );
        assert_eq!(f_inverse_pushforward(&d(&[1, 2])).unwrap(), d(&[1, 2]));
        assert_eq!(f_inverse_pushforward(&d(&[2, 3])).unwrap(), d(&[1, 3]));
        assert_eq!(
            f_inverse_pushforward(&hain_class(&sig(&[-1, 2, -1])).unwrap()).unwrap(),
            d(&[2, 3])
        );
    }

    #[test]
    fn matrices_are_inverse() {
        assert!(is_identity(&mat_mul(&f_matrix(), &f_inverse_matrix())));
        assert!(is_identity(&mat_mul(&f_inverse_matrix(), &f_matrix())));
        assert!(!is_identity(&f_matrix()));
    }

    #[test]
    fn reduction_examples() {
        let t = reduce_signature(&sig(&[1, 1, -2])).unwrap();
        assert!(t.steps.is_empty());

        let t = reduce_signature(&sig(&[5, -3, -2])).unwrap();
        assert_eq!(t.steps[0], Move::Negate);
        assert_eq!(t.f_steps(), 2);
        assert!(is_base_case(&[
            t.end.entries()[0],
            t.end.entries()[1],
            t.end.entries()[2]
        ]));
        assert_eq!(t.replay().unwrap().last().unwrap(), &t.end);

        let t = reduce_signature(&sig(&[2, -1, -1])).unwrap();
        assert_eq!(t.steps, vec![Move::Negate]);
        assert_eq!(t.end, sig(&[-2, 1, 1]));

        assert_eq!(
            reduce_signature(&sig(&[2, 2, -4])).unwrap_err(),
            Error::NotPrimitive(2)
        );
        assert_eq!(
            reduce_signature(&sig(&[1, -1, 0])).unwrap_err(),
            Error::ZeroEntry(3)
        );
    }

    #[test]
    fn trace_json() {
        let t = reduce_signature(&sig(&[5, -3, -2])).unwrap();
        let js = serde_json::to_string(&t.steps).unwrap();
        assert!(
            js.starts_with(r#"[{"move":"negate"},{"move":"permute","p":["#),
            "{js}"
        );
        let back: Vec<Move> = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t.steps);
        assert_eq!(serde_json::to_string(&Move::F).unwrap(), r#"{"move":"f"}"#);
    }

    #[test]
    fn reduction_small_sweep() {
        for a1 in -60i64..=60 {
            for a2 in -60i64..=60 {
                let a3 = -a1 - a2;
                if a1 == 0 || a2 == 0 || a3 == 0 || crate::arith::gcd_of(&[a1, a2]) != 1 {
                    continue;
                }
                let t = reduce_signature(&sig(&[a1, a2, a3])).unwrap();
                let states = t.replay().unwrap();
                assert_eq!(states.last().unwrap(), &t.end);
                let mut max = a1.abs().max(a2.abs()).max(a3.abs());
                for (m, s) in t.steps.iter().zip(&states[1..]) {
                    assert!(s.is_primitive());
                    if *m == Move::F {
                        let nm = s.entries().iter().map(|x| x.abs()).max().unwrap();
                        assert!(nm < max);
                        max = nm;
                    }
                }
                assert!(t.f_steps() as i64 <= max.max(a1.abs().max(a2.abs()).max(a3.abs())));
            }
        }
    }
}
