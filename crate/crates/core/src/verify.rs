//! The verification suite: eleven exact checks, each with a runtime budget.
//!
//! Random sweeps draw from a ChaCha8 stream seeded with [`DEFAULT_SEED`]
//! unless another seed is given, so a run is reproducible.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{eta, gcd_of};
use crate::class_algebra::{pair, DivisorClass};
use crate::cremona::{
    f_inverse_matrix, f_inverse_pushforward, f_matrix, f_pushforward, is_identity, mat_mul,
    reduce_signature, Move,
};
use crate::error::Result;
use crate::forgetful::{pullback, pulled_back_certificate, pulled_back_hain_triple};
use crate::hain::{
    component_count, decompose, grr_degree, hain_class, sigma_fn, sum_components,
    validate_signature, FamilyData,
};
use crate::rational::{frac, q, Q};
use crate::reid_tai::{age, is_quasi_reflection, AgeProfile};
use crate::subset::{boundary_subsets, Subset};
use crate::sym::{
    boundary_cone_member, certificate_curves, nonboundary_constraints_check, SymDivisorClass,
};
use crate::test_curves::{extremal_ray_family, x_curve};
use crate::torsion::{exact_order_count, monodromy_orbits, orbit_invariant};

pub const DEFAULT_SEED: u64 = 0x4d31_4e5f_7365_6564;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<26} {:>7} ms / {:>6} ms  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.budget_ms,
            self.detail
        )
    }
}

/// Outcome of a check before timing is attached: `Ok(detail)` on success.
type Check = std::result::Result<String, String>;

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub budget: Duration,
    run: fn(u64) -> Check,
}

impl Criterion {
    pub fn run(&self, seed: u64) -> CriterionResult {
        let start = Instant::now();
        let outcome = (self.run)(seed);
        let elapsed = start.elapsed();
        let in_budget = elapsed <= self.budget;
        let (passed, mut detail) = match outcome {
            Ok(d) => (in_budget, d),
            Err(d) => (false, d),
        };
        if !in_budget {
            detail = format!("{detail}; over budget");
        }
        CriterionResult {
            id: self.id,
            name: self.name,
            passed,
            detail,
            elapsed_ms: elapsed.as_millis(),
            budget_ms: self.budget.as_millis(),
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs: u64, run| Criterion {
        id,
        name,
        budget: Duration::from_secs(secs),
        run,
    };
    vec![
        c(
            1,
            "certificate pairing",
            1,
            certificate_pairing as fn(u64) -> Check,
        ),
        c(2, "ray family", 1, ray_family),
        c(3, "sigma identity", 30, sigma_identity),
        c(4, "decomposition", 60, decomposition),
        c(5, "monodromy orbits", 120, monodromy),
        c(6, "automorphism matrices", 1, automorphism),
        c(7, "signature reduction", 10, reduction),
        c(8, "pullback coherence", 30, pullback_coherence),
        c(9, "sym-cone implication", 30, sym_cone),
        c(10, "grr coherence", 5, grr_coherence),
        c(11, "reid-tai fixtures", 1, reid_tai_fixtures),
    ]
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    criteria().iter().map(|c| c.run(seed)).collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Zero-sum triples `(a₁, a₂, −a₁−a₂)` with nonzero entries bounded by `m`.
fn nonzero_triples(m: i64) -> impl Iterator<Item = [i64; 3]> {
    (-m..=m).flat_map(move |a1| {
        (-m..=m).filter_map(move |a2| {
            let a3 = -a1 - a2;
            (a1 != 0 && a2 != 0 && a3 != 0 && a3.abs() <= m).then_some([a1, a2, a3])
        })
    })
}

fn certificate_pairing(_seed: u64) -> Check {
    let mut count = 0;
    for t in nonzero_triples(30).filter(|t| gcd_of(t) == 1) {
        let a = validate_signature(&t).map_err(err)?;
        let p = pair(&x_curve(&a).map_err(err)?, &hain_class(&a).map_err(err)?).map_err(err)?;
        ensure(p == q(-1), || format!("{t:?}: pairing {p}"))?;
        count += 1;
    }
    Ok(format!("{count} primitive triples pair to -1"))
}

fn ray_family(_seed: u64) -> Check {
    let mut rays = Vec::new();
    for k in 1..=50i64 {
        let m = extremal_ray_family(k).map_err(err)?;
        // The displayed ray, written out independently of the library's copy.
        let ray = DivisorClass::from_parts(
            3,
            q(1),
            [
                (Subset::full(3), q(1)),
                (Subset::from_bits(0b011), q(1)),
                (Subset::from_bits(0b101), frac(1, k)),
                (Subset::from_bits(0b110), frac(-1, k + 1)),
            ],
        )
        .map_err(err)?;
        ensure(m.hain == ray.scale(&q(k * (k + 1))), || {
            format!("k = {k}: class is not k(k+1) times the ray")
        })?;
        rays.push(ray);
    }
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            ensure(!rays[i].is_proportional(&rays[j]), || {
                format!("rays {} and {} are proportional", i + 1, j + 1)
            })?;
        }
    }
    Ok("50 rays match and are pairwise non-proportional".into())
}

fn sigma_identity(_seed: u64) -> Check {
    const N: usize = 100_000;
    let sigma: Vec<u64> = (1..=N as i64)
        .into_par_iter()
        .map(sigma_fn)
        .collect::<Result<_>>()
        .map_err(err)?;
    let mut acc = vec![0u64; N + 1];
    for t in 1..=N {
        for m in (t..=N).step_by(t) {
            acc[m] += sigma[t - 1];
        }
    }
    if let Some(d) = (1..=N).find(|&d| acc[d] != (d * d) as u64) {
        return Err(format!("divisor sum at d = {d} is {}", acc[d]));
    }
    let bad: Vec<u64> = (1..=200u64)
        .into_par_iter()
        .filter(|&t| exact_order_count(t, t).ok() != Some(sigma[t as usize - 1]))
        .collect();
    ensure(bad.is_empty(), || {
        format!("exact-order count differs from sigma at t = {bad:?}")
    })?;
    Ok(format!(
        "divisor sums hold for d <= {N}; sigma matches enumeration for t <= 200"
    ))
}

fn check_decomposition(a: &[i64]) -> std::result::Result<(), String> {
    let sig = validate_signature(a).map_err(err)?;
    let parts = decompose(&sig).map_err(err)?;
    let total = sum_components(a.len(), &parts).map_err(err)?;
    ensure(total == hain_class(&sig).map_err(err)?, || {
        format!("{a:?}: components do not sum to the class")
    })
}

fn all_nonzero_sums(n: usize, m: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n - 1];
    fn rec(i: usize, m: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            let last = -cur.iter().sum::<i64>();
            if last != 0 && last.abs() <= m {
                let mut v = cur.clone();
                v.push(last);
                out.push(v);
            }
            return;
        }
        for x in (-m..=m).filter(|&x| x != 0) {
            cur[i] = x;
            rec(i + 1, m, cur, out);
        }
    }
    rec(0, m, &mut cur, &mut out);
    out
}

fn random_nonzero_sum(rng: &mut ChaCha8Rng, n: usize, m: i64) -> Vec<i64> {
    // Half the draws are multiples of a random t, so that non-primitive
    // signatures with several components are well represented.
    let t = if rng.gen_bool(0.5) {
        rng.gen_range(2..=(m / 2).min(10))
    } else {
        1
    };
    let bound = m / t;
    loop {
        let mut v: Vec<i64> = (0..n - 1)
            .map(|_| loop {
                let x = rng.gen_range(-bound..=bound);
                if x != 0 {
                    break x;
                }
            })
            .collect();
        let last = -v.iter().sum::<i64>();
        if last != 0 && last.abs() <= bound {
            v.push(last);
            return v.into_iter().map(|x| x * t).collect();
        }
    }
}

fn decomposition(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases: Vec<Vec<i64>> = (0..10_000)
        .map(|_| {
            let n = rng.gen_range(3..=5);
            random_nonzero_sum(&mut rng, n, 20)
        })
        .collect();
    let sampled = cases.len();
    for n in 3..=5 {
        cases.extend(all_nonzero_sums(n, 6));
    }
    let non_primitive = cases.iter().filter(|a| gcd_of(a) > 1).count();
    cases.par_iter().try_for_each(|a| check_decomposition(a))?;
    Ok(format!(
        "{sampled} sampled + {} exhaustive signatures ({non_primitive} non-primitive)",
        cases.len() - sampled
    ))
}

fn monodromy(_seed: u64) -> Check {
    (1..=100u64).into_par_iter().try_for_each(|a| {
        let orbits = monodromy_orbits(a).map_err(err)?;
        let expected = eta(a as i64).map_err(err)?;
        ensure(orbits.len() as u64 == expected, || {
            format!("a = {a}: {} orbits, eta = {expected}", orbits.len())
        })?;
        // Each orbit is one gcd stratum: constant k inside, distinct k across.
        let mut ks = Vec::new();
        for o in &orbits {
            for p in &o.points {
                ensure(orbit_invariant(p, a).map_err(err)? == o.k, || {
                    format!("a = {a}: orbit of {} mixes strata", o.representative)
                })?;
            }
            ks.push(o.k);
        }
        ks.sort_unstable();
        ks.dedup();
        ensure(ks.len() == orbits.len(), || {
            format!("a = {a}: two orbits share a gcd")
        })?;
        let total: usize = orbits.iter().map(|o| o.size).sum();
        ensure(total as u64 == a * a, || {
            format!("a = {a}: orbits do not cover the torus")
        })?;
        let sig = validate_signature(&[a as i64, -(a as i64)]).map_err(err)?;
        let c = component_count(&sig).map_err(err)?;
        ensure(c + 1 == expected, || {
            format!("a = {a}: component count {c}")
        })
    })?;
    Ok("orbits are the gcd strata for a <= 100".into())
}

fn automorphism(_seed: u64) -> Check {
    ensure(
        is_identity(&mat_mul(&f_matrix(), &f_inverse_matrix())),
        || "f ∘ f⁻¹ is not the identity".into(),
    )?;
    ensure(
        is_identity(&mat_mul(&f_inverse_matrix(), &f_matrix())),
        || "f⁻¹ ∘ f is not the identity".into(),
    )?;
    let d1 = hain_class(&validate_signature(&[2, -1, -1]).map_err(err)?).map_err(err)?;
    let d2 = hain_class(&validate_signature(&[-1, 2, -1]).map_err(err)?).map_err(err)?;
    let d13 = DivisorClass::boundary_labels(3, &[1, 3]).map_err(err)?;
    let d23 = DivisorClass::boundary_labels(3, &[2, 3]).map_err(err)?;
    ensure(f_pushforward(&d1).map_err(err)? == d13, || {
        "f_*D(2,-1,-1) != δ{1,3}".into()
    })?;
    ensure(f_inverse_pushforward(&d2).map_err(err)? == d23, || {
        "f⁻¹_*D(-1,2,-1) != δ{2,3}".into()
    })?;
    Ok("matrices are inverse; both pushforward identities hold".into())
}

fn check_reduction(t: [i64; 3]) -> std::result::Result<(), String> {
    let a = validate_signature(&t).map_err(err)?;
    let trace = reduce_signature(&a).map_err(err)?;
    let mut end = trace.end.entries().to_vec();
    end.sort_unstable();
    ensure(end == [-2, 1, 1], || {
        format!("{t:?} ends at {:?}", trace.end.entries())
    })?;
    let seen = trace.replay_triples().map_err(err)?;
    ensure(
        seen.last().map(|x| &x[..]) == Some(trace.end.entries()),
        || format!("{t:?}: replay disagrees"),
    )?;
    let max = |s: &[i64; 3]| s.iter().map(|x| x.abs()).max().unwrap_or(0);
    for (i, m) in trace.steps.iter().enumerate() {
        if *m == Move::F {
            ensure(max(&seen[i + 1]) < max(&seen[i]), || {
                format!("{t:?}: f-step {i} does not shrink")
            })?;
        }
    }
    Ok(())
}

fn reduction(_seed: u64) -> Check {
    const M: i64 = 1000;
    let count = (-M..=M)
        .into_par_iter()
        .map(|a1| {
            let mut count = 0usize;
            for a2 in -M..=M {
                let a3 = -a1 - a2;
                if a1 == 0 || a2 == 0 || a3 == 0 || a3.abs() > M || num_integer::gcd(a1, a2) != 1 {
                    continue;
                }
                check_reduction([a1, a2, a3])?;
                count += 1;
            }
            Ok::<_, String>(count)
        })
        .try_reduce(|| 0, |x, y| Ok(x + y))?;
    Ok(format!("{count} triples reduce with shrinking f-steps"))
}

fn pullback_coherence(_seed: u64) -> Check {
    let triples: Vec<[i64; 3]> = nonzero_triples(10).collect();
    let mut checked = 0;
    let mut certified = 0;
    for n in 3..=7usize {
        let keep: Vec<usize> = (1..=3).collect();
        for t in &triples {
            let direct = pulled_back_hain_triple(n, t[0], t[1]).map_err(err)?;
            let base = hain_class(&validate_signature(t).map_err(err)?).map_err(err)?;
            let pulled = pullback(&base, n, &keep).map_err(err)?;
            ensure(direct == pulled, || {
                format!("n = {n}, {t:?}: expansion differs from pullback")
            })?;
            checked += 1;
            if gcd_of(&t[..2]) == 1 {
                let c = pulled_back_certificate(n, t[0], t[1]).map_err(err)?;
                ensure(c.pairing == q(-1), || {
                    format!("n = {n}, {t:?}: pairing {}", c.pairing)
                })?;
                ensure(c.verdict.is_valid(), || {
                    format!("n = {n}, {t:?}: verdict invalid")
                })?;
                certified += 1;
            }
        }
    }
    Ok(format!(
        "{checked} pullbacks agree; {certified} certificates pair to -1"
    ))
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    frac(rng.gen_range(-20..=20), rng.gen_range(1..=6))
}

/// Classes near the boundary of the constraint region: a nondecreasing
/// chain `0 ≤ b₂ ≤ … ≤ b_n ≤ 12a` with small perturbations that sometimes
/// push a coordinate just below zero.
fn near_passing(rng: &mut ChaCha8Rng, n: usize) -> SymDivisorClass {
    let nudge = |rng: &mut ChaCha8Rng| -> Q {
        if rng.gen_bool(0.3) {
            frac(rng.gen_range(-2..=1), rng.gen_range(1..=12))
        } else {
            q(0)
        }
    };
    let mut b = Vec::with_capacity(n - 1);
    let mut cur = frac(rng.gen_range(0..=4), rng.gen_range(1..=3)) + nudge(rng);
    for _ in 2..=n {
        b.push(cur.clone());
        cur = cur + frac(rng.gen_range(0..=3), rng.gen_range(1..=3)) + nudge(rng);
    }
    let a = b.last().cloned().unwrap_or_else(|| q(0)) / q(12)
        + frac(rng.gen_range(0..=2), 12)
        + nudge(rng) / q(12);
    SymDivisorClass::new(n, a, b).expect("n - 1 coefficients")
}

fn displayed_pairings_match(n: usize) -> bool {
    let Ok(curves) = certificate_curves(n, 1) else {
        return false;
    };
    let ni = n as i64;
    // (name, irr, [(k, value)]), everything else zero.
    type Row = (String, i64, Vec<(usize, i64)>);
    let mut expected: Vec<Row> = vec![("C".into(), 0, vec![(2, ni - 1)])];
    for j in 2..n {
        let d = (n - j) as i64;
        expected.push((format!("C_{j}"), 0, vec![(j, -d), (j + 1, d)]));
    }
    expected.push((format!("C_{n}"), 12, vec![(n, -1)]));
    curves.len() == expected.len()
        && curves.iter().zip(&expected).all(|(c, (name, irr, nz))| {
            c.name == *name
                && c.irr == q(*irr)
                && (2..=n).all(|k| {
                    let want = nz.iter().find(|(kk, _)| *kk == k).map_or(0, |(_, v)| *v);
                    *c.pairing_with(k) == q(want)
                })
        })
}

fn sym_cone(seed: u64) -> Check {
    let per_n = 10_000;
    let mut summary = Vec::new();
    for n in 3..=10usize {
        ensure(displayed_pairings_match(n), || {
            format!("n = {n}: certificate pairings differ from the displayed ones")
        })?;
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let samples: Vec<SymDivisorClass> = (0..per_n)
            .map(|i| {
                if i % 2 == 0 {
                    let a = random_q(&mut rng);
                    let b = (2..=n).map(|_| random_q(&mut rng)).collect();
                    SymDivisorClass::new(n, a, b).expect("n - 1 coefficients")
                } else {
                    near_passing(&mut rng, n)
                }
            })
            .collect();
        let passing = samples
            .par_iter()
            .map(|d| {
                let r = nonboundary_constraints_check(d, 1).map_err(err)?;
                if r.all_nonnegative && !boundary_cone_member(d) {
                    return Err(format!(
                        "n = {n}: {d} passes every constraint but is outside the cone"
                    ));
                }
                Ok(r.all_nonnegative as usize)
            })
            .try_reduce(|| 0, |x, y| Ok(x + y))?;
        summary.push(format!("n={n}:{passing}"));
    }
    Ok(format!(
        "no counterexample in {per_n} samples per n; passing counts {}",
        summary.join(" ")
    ))
}

fn random_family(rng: &mut ChaCha8Rng, n: usize) -> Result<FamilyData> {
    let mut entries = Vec::new();
    for s in boundary_subsets(n) {
        if rng.gen_bool(0.6) {
            entries.push((s, rng.gen_range(0..=9)));
        }
    }
    FamilyData::new(n, rng.gen_range(0..=36), entries)
}

fn grr_coherence(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
    for i in 0..200 {
        let n = rng.gen_range(2..=5);
        let a = validate_signature(&random_nonzero_sum(&mut rng, n, 12)).map_err(err)?;
        let f = random_family(&mut rng, n).map_err(err)?;
        let lhs = grr_degree(&a, &f).map_err(err)? - q(f.d(Subset::full(n)) as i64);
        let rhs = pair(&f.curve_class(), &hain_class(&a).map_err(err)?).map_err(err)?;
        ensure(lhs == rhs, || {
            format!("instance {i}, a = {:?}: {lhs} != {rhs}", a.entries())
        })?;
    }
    Ok("200 families agree".into())
}

fn reid_tai_fixtures(_seed: u64) -> Check {
    let prof = |k, e: &[u64]| AgeProfile::new(k, e.to_vec()).map_err(err);
    for (k, e) in [(2, vec![1, 1]), (3, vec![1, 2]), (4, vec![2, 1, 1])] {
        let p = prof(k, &e)?;
        ensure(age(&p) == q(1), || format!("{p}: age {}", age(&p)))?;
    }
    for k in 2..=12u64 {
        let p = prof(k, &[1, 0, 0])?;
        ensure(
            is_quasi_reflection(&p) && age(&p) == frac(1, k as i64),
            || format!("{p}: not a quasi-reflection of age 1/k"),
        )?;
    }
    Ok("combined contributions have age 1; quasi-reflections have age 1/k".into())
}
