//! Command-line front end. The binary only forwards to [`run`].
//!
//! Exit codes: 0 on success, 1 when a verification or certificate fails,
//! 2 on a usage error (one line on stderr naming the offending flag).

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;

use clap::error::{ContextKind, ErrorKind};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::class_algebra::{
    canonical_class, delta_irr_class, pair, psi_class, CurveClass, DivisorClass,
};
use crate::cremona::{f_inverse_pushforward, f_pushforward, reduce_signature, Move};
use crate::forgetful::{inclusion, pullback, pulled_back_certificate};
use crate::hain::{
    component_count, decompose, grr_degree, hain_class, validate_signature, FamilyData, Signature,
};
use crate::rational::display_q;
use crate::reid_tai::{age, fixtures, reid_tai_check, AgeProfile, ReidTaiVerdict};
use crate::sym::{
    boundary_cone_member, certificate_curves, nonboundary_constraints_check, symmetrize,
    SymDivisorClass,
};
use crate::test_curves::{certify_triple, extremal_ray_family, CertificateReport};
use crate::torsion::{exact_order_count, monodromy_orbits, orbits_csv};
use crate::verify;

#[derive(Parser, Debug)]
#[command(
    name = "m1n",
    version,
    about = "Exact divisor-class arithmetic on moduli of pointed genus-one curves"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a divisor class: the locus `Σ a_i p_i = 0`, K, ψ_i or δ_irr.
    Class(ClassArgs),
    /// Component count and component classes of `Σ a_i p_i = 0`.
    Components(SigArgs),
    /// Intersection number of a curve class with a divisor class.
    Pair(PairArgs),
    /// Pull a class back along a forgetful map.
    Pullback(PullbackArgs),
    /// Negative-pairing extremality certificates.
    Certify(CertifyArgs),
    /// Reduce a triple to a permutation of (1,1,-2) by sign changes, relabelings and f.
    Reduce(ReduceArgs),
    /// Push a class on the 3-pointed space forward along f.
    Fstar(FstarArgs),
    /// Push a class on the 3-pointed space forward along f⁻¹.
    #[command(name = "fstar-inv")]
    FstarInv(FstarArgs),
    /// Classes on the quotient by the symmetric group.
    Sym(SymArgs),
    /// Torsion orbits and exact-order counts on (ℤ/N)².
    Torsion(TorsionArgs),
    /// Ages of automorphisms and the Reid–Tai verdict.
    Age(AgeArgs),
    /// Degree of the class on the base of a one-parameter family.
    Grr(GrrArgs),
    /// Run the full verification suite.
    Verify(VerifyArgs),
}

/// Comma-separated integers, e.g. `1,1,-2`.
#[derive(Clone, Debug)]
struct IntList(Vec<i64>);

impl FromStr for IntList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| format!("'{t}': {e}")))
            .collect::<Result<_, _>>()
            .map(IntList)
    }
}

/// `K:e1,e2,...`, e.g. `3:1,2`.
#[derive(Clone, Debug)]
struct ProfileArg(AgeProfile);

impl FromStr for ProfileArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (k, exps) = s.split_once(':').ok_or("expected K:e1,e2,...")?;
        let k: u64 = k.trim().parse().map_err(|e| format!("order '{k}': {e}"))?;
        let exps = exps
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| format!("exponent '{t}': {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        AgeProfile::new(k, exps)
            .map(ProfileArg)
            .map_err(|e| e.to_string())
    }
}

#[derive(Args, Debug)]
struct SigArgs {
    /// Zero-sum signature, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    a: IntList,
    /// Number of points; pads the signature with zeros.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("kind").required(true).args(["a", "canonical", "psi", "delta_irr"])))]
struct ClassArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<IntList>,
    #[arg(long)]
    n: Option<usize>,
    /// The canonical class K (needs --n).
    #[arg(long)]
    canonical: bool,
    /// ψ_I (needs --n).
    #[arg(long, value_name = "I")]
    psi: Option<i64>,
    /// δ_irr = 12λ (needs --n).
    #[arg(long)]
    delta_irr: bool,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Curve class as JSON, or @path to a JSON file.
    #[arg(long)]
    curve: Option<String>,
    /// Divisor class as JSON, or @path to a JSON file.
    #[arg(long)]
    divisor: Option<String>,
    /// Default the curve to X_a and the divisor to D_a.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<IntList>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["a", "divisor"])))]
struct PullbackArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<IntList>,
    #[arg(long)]
    divisor: Option<String>,
    /// Number of points upstairs.
    #[arg(long)]
    n: usize,
    /// Labels upstairs of the kept points, in order (default 1,2,...,m).
    #[arg(long, allow_hyphen_values = true)]
    keep: Option<IntList>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true).args(["a", "ray"])))]
struct CertifyArgs {
    /// Triple (a1,a2,a3) with nonzero entries.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<IntList>,
    /// Certify the pullback of the triple's class to N points.
    #[arg(long)]
    n: Option<usize>,
    /// Member k of the ray family (k+1, -k, -1).
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    ray: Option<i64>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["a", "max"])))]
struct ReduceArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<IntList>,
    /// Sweep every primitive triple with |a_i| <= MAX instead.
    #[arg(long)]
    max: Option<i64>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["a", "divisor"])))]
struct FstarArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<IntList>,
    #[arg(long)]
    divisor: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["divisor", "class", "canonical", "curves"])))]
struct SymArgs {
    /// An invariant divisor class as JSON (or @path).
    #[arg(long)]
    divisor: Option<String>,
    /// A class on the quotient as JSON (or @path).
    #[arg(long)]
    class: Option<String>,
    /// Symmetrize the canonical class (needs --n).
    #[arg(long)]
    canonical: bool,
    /// List the certificate curves (needs --n).
    #[arg(long)]
    curves: bool,
    #[arg(long)]
    n: Option<usize>,
    /// Genus used for the certificate curves.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    g: i64,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("what").required(true).args(["orbits", "count"])))]
struct TorsionArgs {
    /// Orbits of the shear action on (ℤ/A)².
    #[arg(long, value_name = "A")]
    orbits: Option<u64>,
    /// Count points of exact order T.
    #[arg(long, value_name = "T")]
    count: Option<u64>,
    /// Modulus for --count (default T).
    #[arg(long, value_name = "N")]
    modulus: Option<u64>,
    /// Print the orbit table as CSV.
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["profile", "fixtures"])))]
struct AgeArgs {
    /// An age profile K:e1,e2,... (repeatable).
    #[arg(long)]
    profile: Vec<ProfileArg>,
    /// Print the table of listed contributions.
    #[arg(long)]
    fixtures: bool,
}

#[derive(Args, Debug)]
struct GrrArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: IntList,
    /// Family data as JSON (or @path).
    #[arg(long)]
    family: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Check(String),
}

type Outcome = Result<bool, Failure>;

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{flag}: {e}"))
}

/// Parses argv (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => return clap_failure(e, out, err),
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Class(a) => cmd_class(a, json, out),
        Command::Components(a) => cmd_components(a, json, out),
        Command::Pair(a) => cmd_pair(a, json, out),
        Command::Pullback(a) => cmd_pullback(a, json, out),
        Command::Certify(a) => cmd_certify(a, json, out),
        Command::Reduce(a) => cmd_reduce(a, json, out),
        Command::Fstar(a) => cmd_fstar(a, false, json, out),
        Command::FstarInv(a) => cmd_fstar(a, true, json, out),
        Command::Sym(a) => cmd_sym(a, json, out),
        Command::Torsion(a) => cmd_torsion(a, json, out),
        Command::Age(a) => cmd_age(a, json, out),
        Command::Grr(a) => cmd_grr(a, json, out),
        Command::Verify(a) => cmd_verify(a, json, out),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Check(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

fn clap_failure(e: clap::Error, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = write!(out, "{}", e.render());
            0
        }
        _ => {
            let rendered = e.render().to_string();
            let mut line = rendered
                .lines()
                .next()
                .unwrap_or("error")
                .trim_end()
                .to_string();
            if line.ends_with(':') {
                if let Some(arg) = e.get(ContextKind::InvalidArg) {
                    line = format!("{line} {arg}");
                }
            }
            let _ = writeln!(err, "{line}");
            2
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), Failure> {
    let s = serde_json::to_string(v).map_err(|e| Failure::Check(e.to_string()))?;
    writeln!(out, "{s}").map_err(|e| Failure::Check(e.to_string()))
}

fn say(out: &mut dyn Write, s: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{s}").map_err(|e| Failure::Check(e.to_string()))
}

fn read_json<T: DeserializeOwned>(flag: &str, arg: &str) -> Result<T, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| usage(flag, format!("{path}: {e}")))?
        }
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| usage(flag, e))
}

fn signature(a: &IntList, n: Option<usize>) -> Result<Signature, Failure> {
    let mut v = a.0.clone();
    if let Some(n) = n {
        if n < v.len() {
            return Err(usage(
                "--n",
                format!("{n} is smaller than the signature length {}", v.len()),
            ));
        }
        v.resize(n, 0);
    }
    validate_signature(&v).map_err(|e| usage("--a", e))
}

fn need_n(n: Option<usize>, with: &str) -> Result<usize, Failure> {
    n.ok_or_else(|| usage("--n", format!("required with {with}")))
}

fn cmd_class(a: ClassArgs, json: bool, out: &mut dyn Write) -> Outcome {
    let d = if let Some(sig) = &a.a {
        hain_class(&signature(sig, a.n)?).map_err(|e| usage("--a", e))?
    } else if a.canonical {
        canonical_class(need_n(a.n, "--canonical")? as i64).map_err(|e| usage("--n", e))?
    } else if let Some(i) = a.psi {
        psi_class(need_n(a.n, "--psi")? as i64, i).map_err(|e| usage("--psi", e))?
    } else {
        delta_irr_class(need_n(a.n, "--delta-irr")? as i64).map_err(|e| usage("--n", e))?
    };
    if json {
        emit(out, &d)?;
    } else {
        say(out, &d)?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct ComponentsOut {
    signature: Signature,
    count: u64,
    components: Vec<ComponentOut>,
}

#[derive(Serialize)]
struct ComponentOut {
    t: u64,
    class: DivisorClass,
}

fn cmd_components(a: SigArgs, json: bool, out: &mut dyn Write) -> Outcome {
    let sig = signature(&a.a, a.n)?;
    let count = component_count(&sig).map_err(|e| usage("--a", e))?;
    let parts = decompose(&sig).map_err(|e| usage("--a", e))?;
    if json {
        let components = parts
            .into_iter()
            .map(|(t, class)| ComponentOut { t, class })
            .collect();
        emit(
            out,
            &ComponentsOut {
                signature: sig,
                count,
                components,
            },
        )?;
    } else {
        say(out, format!("{count} components"))?;
        for (t, c) in parts {
            say(out, format!("  t={t}: {c}"))?;
        }
    }
    Ok(true)
}

fn cmd_pair(a: PairArgs, json: bool, out: &mut dyn Write) -> Outcome {
    let sig = match &a.a {
        Some(l) => Some(signature(l, None)?),
        None => None,
    };
    let curve: CurveClass = match (&a.curve, &sig) {
        (Some(c), _) => read_json("--curve", c)?,
        (None, Some(s)) => crate::test_curves::x_curve(s).map_err(|e| usage("--a", e))?,
        (None, None) => return Err(usage("--curve", "required unless --a is given")),
    };
    let divisor: DivisorClass = match (&a.divisor, &sig) {
        (Some(d), _) => read_json("--divisor", d)?,
        (None, Some(s)) => hain_class(s).map_err(|e| usage("--a", e))?,
        (None, None) => return Err(usage("--divisor", "required unless --a is given")),
    };
    let p = pair(&curve, &divisor).map_err(|e| usage("--divisor", e))?;
    if json {
        emit(out, &crate::rational::PQ(p))?;
    } else {
        say(out, display_q(&p))?;
    }
    Ok(true)
}

fn cmd_pullback(a: PullbackArgs, json: bool, out: &mut dyn Write) -> Outcome {
    let d: DivisorClass = match (&a.a, &a.divisor) {
        (Some(l), _) => hain_class(&signature(l, None)?).map_err(|e| usage("--a", e))?,
        (None, Some(j)) => read_json("--divisor", j)?,
        (None, None) => unreachable!("clap enforces the group"),
    };
    let keep: Vec<usize> = match &a.keep {
        Some(k) => {
            k.0.iter()
                .map(|&x| {
                    usize::try_from(x).map_err(|_| usage("--keep", format!("{x} is not a label")))
                })
                .collect::<Result<_, _>>()?
        }
        None => inclusion(d.n()),
    };
    let up = pullback(&d, a.n, &keep).map_err(|e| usage("--keep", e))?;
    if json {
        emit(out, &up)?;
    } else {
        say(out, &up)?;
    }
    Ok(true)
}

fn print_report(out: &mut dyn Write, r: &CertificateReport) -> Result<(), Failure> {
    say(out, format!("divisor   {}", r.divisor))?;
    say(out, format!("curve     {}", r.curve))?;
    say(out, format!("pairing   {}", display_q(&r.pairing)))?;
    for a in &r.assumptions {
        say(
            out,
            format!(
                "assumes   {}: {}",
                serde_json::to_value(a.kind)
                    .unwrap_or_default()
                    .as_str()
                    .unwrap_or(""),
                a.citation
            ),
        )?;
    }
    say(
        out,
        format!(
            "verdict   {}",
            if r.verdict.is_valid() {
                "valid"
            } else {
                "invalid"
            }
        ),
    )
}

fn cmd_certify(a: CertifyArgs, json: bool, out: &mut dyn Write) -> Outcome {
    if let Some(k) = a.ray {
        let m = extremal_ray_family(k).map_err(|e| usage("--ray", e))?;
        if json {
            emit(out, &m)?;
        } else {
            say(out, format!("signature {}", m.signature))?;
            say(out, format!("class     {}", m.hain))?;
            say(out, format!("ray       {}", m.ray))?;
            say(out, format!("class = {} * ray", k * (k + 1)))?;
        }
        return Ok(true);
    }
    let list = a.a.expect("clap enforces the group");
    if list.0.len() != 3 {
        return Err(usage("--a", "certificates take a triple a1,a2,a3"));
    }
    let sig = signature(&list, None)?;
    match a.n {
        Some(n) if n > 3 => {
            let e = sig.entries();
            let c = pulled_back_certificate(n, e[0], e[1]).map_err(|e| usage("--a", e))?;
            if json {
                emit(out, &c)?;
            } else {
                say(out, format!("pulled back to n = {n}: {}", c.divisor))?;
                print_report(out, &c.base)?;
            }
            Ok(c.verdict.is_valid())
        }
        Some(n) if n < 3 => Err(usage("--n", format!("{n} is smaller than the triple"))),
        _ => {
            let r = certify_triple(&sig).map_err(|e| usage("--a", e))?;
            if json {
                emit(out, &r)?;
            } else {
                print_report(out, &r)?;
            }
            Ok(r.verdict.is_valid())
        }
    }
}

#[derive(Serialize)]
struct SweepOut {
    max: i64,
    triples: usize,
    longest: Option<crate::cremona::ReductionTrace>,
}

fn cmd_reduce(a: ReduceArgs, json: bool, out: &mut dyn Write) -> Outcome {
    if let Some(m) = a.max {
        if m < 2 {
            return Err(usage("--max", "must be at least 2"));
        }
        let mut triples = 0;
        let mut longest: Option<crate::cremona::ReductionTrace> = None;
        for a1 in -m..=m {
            for a2 in -m..=m {
                let a3 = -a1 - a2;
                if a1 == 0 || a2 == 0 || a3 == 0 || a3.abs() > m || num_integer::gcd(a1, a2) != 1 {
                    continue;
                }
                let sig =
                    validate_signature(&[a1, a2, a3]).map_err(|e| Failure::Check(e.to_string()))?;
                let t = reduce_signature(&sig).map_err(|e| Failure::Check(e.to_string()))?;
                triples += 1;
                if longest.as_ref().is_none_or(|l| t.f_steps() > l.f_steps()) {
                    longest = Some(t);
                }
            }
        }
        if json {
            emit(
                out,
                &SweepOut {
                    max: m,
                    triples,
                    longest,
                },
            )?;
        } else {
            say(
                out,
                format!("{triples} primitive triples with |a_i| <= {m} reduce"),
            )?;
            if let Some(l) = longest {
                say(
                    out,
                    format!("longest: {} with {} f-steps", l.start, l.f_steps()),
                )?;
            }
        }
        return Ok(true);
    }
    let sig = signature(a.a.as_ref().expect("clap enforces the group"), None)?;
    let trace = reduce_signature(&sig).map_err(|e| usage("--a", e))?;
    if json {
        return emit(out, &trace).map(|_| true);
    }
    let seen = trace.replay().map_err(|e| Failure::Check(e.to_string()))?;
    say(out, &seen[0])?;
    for (m, s) in trace.steps.iter().zip(&seen[1..]) {
        let name = match m {
            Move::Permute { p } => format!("permute {:?}", p.images()),
            Move::Negate => "negate".into(),
            Move::F => "f".into(),
        };
        say(out, format!("  {name:<18} -> {s}"))?;
    }
    Ok(true)
}

fn cmd_fstar(a: FstarArgs, inverse: bool, json: bool, out: &mut dyn Write) -> Outcome {
    let d: DivisorClass = match (&a.a, &a.divisor) {
        (Some(l), _) => hain_class(&signature(l, None)?).map_err(|e| usage("--a", e))?,
        (None, Some(j)) => read_json("--divisor", j)?,
        (None, None) => unreachable!("clap enforces the group"),
    };
    let flag = if a.a.is_some() { "--a" } else { "--divisor" };
    let img = if inverse {
        f_inverse_pushforward(&d)
    } else {
        f_pushforward(&d)
    }
    .map_err(|e| usage(flag, e))?;
    if json {
        emit(out, &img)?;
    } else {
        say(out, &img)?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct SymOut {
    class: SymDivisorClass,
    boundary_cone_member: bool,
    constraints: crate::sym::ConstraintReport,
}

fn cmd_sym(a: SymArgs, json: bool, out: &mut dyn Write) -> Outcome {
    if a.curves {
        let n = need_n(a.n, "--curves")?;
        let cs = certificate_curves(n, a.g).map_err(|e| usage("--g", e))?;
        if json {
            return emit(out, &cs).map(|_| true);
        }
        for c in cs {
            let ps: Vec<String> = c.pairings.iter().map(display_q).collect();
            say(
                out,
                format!(
                    "{:<5} δ̃irr: {:>3}  δ̃2..δ̃{n}: {}",
                    c.name,
                    display_q(&c.irr),
                    ps.join(" ")
                ),
            )?;
        }
        return Ok(true);
    }
    let class = if let Some(j) = &a.class {
        read_json::<SymDivisorClass>("--class", j)?
    } else if let Some(j) = &a.divisor {
        let d: DivisorClass = read_json("--divisor", j)?;
        symmetrize(&d).map_err(|e| usage("--divisor", e))?
    } else {
        let n = need_n(a.n, "--canonical")?;
        symmetrize(&canonical_class(n as i64).map_err(|e| usage("--n", e))?)
            .map_err(|e| usage("--n", e))?
    };
    let constraints = nonboundary_constraints_check(&class, a.g).map_err(|e| usage("--g", e))?;
    let member = boundary_cone_member(&class);
    if json {
        emit(
            out,
            &SymOut {
                class,
                boundary_cone_member: member,
                constraints,
            },
        )?;
        return Ok(true);
    }
    say(out, &class)?;
    say(out, format!("boundary cone member: {member}"))?;
    for e in &constraints.entries {
        say(
            out,
            format!(
                "  {:<5} {:>8}  {}",
                e.curve,
                display_q(&e.pairing),
                if e.nonnegative { "ok" } else { "negative" }
            ),
        )?;
    }
    if constraints.boundary_exempt {
        say(out, format!("note: {}", constraints.caveat))?;
    }
    say(out, format!("normalization: {}", constraints.normalization))?;
    Ok(true)
}

#[derive(Serialize)]
struct CountOut {
    t: u64,
    #[serde(rename = "N")]
    modulus: u64,
    count: u64,
}

fn cmd_torsion(a: TorsionArgs, json: bool, out: &mut dyn Write) -> Outcome {
    if let Some(t) = a.count {
        let modulus = a.modulus.unwrap_or(t);
        let count = exact_order_count(t, modulus).map_err(|e| usage("--modulus", e))?;
        if json {
            emit(out, &CountOut { t, modulus, count })?;
        } else {
            say(
                out,
                format!("{count} points of exact order {t} in (Z/{modulus})^2"),
            )?;
        }
        return Ok(true);
    }
    let a_mod = a.orbits.expect("clap enforces the group");
    let orbits = monodromy_orbits(a_mod).map_err(|e| usage("--orbits", e))?;
    if json {
        emit(out, &orbits)?;
    } else if a.csv {
        write!(out, "{}", orbits_csv(&orbits)).map_err(|e| Failure::Check(e.to_string()))?;
    } else {
        say(out, format!("{} orbits", orbits.len()))?;
        for o in &orbits {
            say(
                out,
                format!("  k={:<4} size={:<6} rep={}", o.k, o.size, o.representative),
            )?;
        }
    }
    Ok(true)
}

fn cmd_age(a: AgeArgs, json: bool, out: &mut dyn Write) -> Outcome {
    if a.fixtures {
        let fx = fixtures();
        if json {
            return emit(out, &fx).map(|_| true);
        }
        for f in fx {
            say(
                out,
                format!(
                    "{:<6} {:<12} age {}  {}",
                    display_q(&f.expected),
                    f.profile.to_string(),
                    display_q(&age(&f.profile)),
                    f.case
                ),
            )?;
        }
        return Ok(true);
    }
    let profiles: Vec<AgeProfile> = a.profile.into_iter().map(|p| p.0).collect();
    let r = reid_tai_check(&profiles);
    if json {
        emit(out, &r)?;
    } else {
        for e in &r.entries {
            let mut tags = Vec::new();
            if e.quasi_reflection {
                tags.push("quasi-reflection, excluded");
            }
            if e.ambiguous {
                tags.push("ambiguous");
            }
            say(
                out,
                format!(
                    "{:<16} age {:<6} {}",
                    e.profile.to_string(),
                    display_q(&e.age),
                    tags.join("; ")
                ),
            )?;
        }
        say(
            out,
            format!(
                "verdict: {}",
                match r.verdict {
                    ReidTaiVerdict::Extends => "extends",
                    ReidTaiVerdict::Fails => "fails",
                }
            ),
        )?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct GrrOut {
    #[serde(serialize_with = "crate::rational::ser_q")]
    grr_degree: crate::rational::Q,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pairing: crate::rational::Q,
    #[serde(serialize_with = "crate::rational::ser_q")]
    correction: crate::rational::Q,
}

fn cmd_grr(a: GrrArgs, json: bool, out: &mut dyn Write) -> Outcome {
    let f: FamilyData = read_json("--family", &a.family)?;
    let sig = signature(&a.a, Some(f.n()).filter(|&n| n >= a.a.0.len()))?;
    let grr = grr_degree(&sig, &f).map_err(|e| usage("--a", e))?;
    let p = pair(
        &f.curve_class(),
        &hain_class(&sig).map_err(|e| usage("--a", e))?,
    )
    .map_err(|e| usage("--family", e))?;
    let correction = &grr - &p;
    if json {
        emit(
            out,
            &GrrOut {
                grr_degree: grr,
                pairing: p,
                correction,
            },
        )?;
    } else {
        say(out, format!("GRR degree   {}", display_q(&grr)))?;
        say(out, format!("B·D_a        {}", display_q(&p)))?;
        say(out, format!("difference   {}", display_q(&correction)))?;
    }
    Ok(true)
}

fn cmd_verify(a: VerifyArgs, json: bool, out: &mut dyn Write) -> Outcome {
    let results = verify::run_all(a.seed);
    let all = results.iter().all(|r| r.passed);
    if json {
        emit(out, &results)?;
    } else {
        for r in &results {
            say(out, r)?;
        }
        let passed = results.iter().filter(|r| r.passed).count();
        say(
            out,
            format!("{passed}/{} passed (seed {})", results.len(), a.seed),
        )?;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("m1n").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn class_text() {
        let (code, out, _) = call(&["class", "--a", "1,1,-2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "2λ - δ{1,2} + 2δ{1,3} + 2δ{2,3} + 2δ{1,2,3}");
    }

    #[test]
    fn padding_matches_pullback() {
        let (_, padded, _) = call(&["class", "--a", "1,1,-2", "--n", "4", "--json"]);
        let (_, pulled, _) = call(&["pullback", "--a", "1,1,-2", "--n", "4", "--json"]);
        assert_eq!(padded, pulled);
    }

    #[test]
    fn certify_and_exit_codes() {
        let (code, out, _) = call(&["certify", "--a", "2,-1,-1"]);
        assert_eq!(code, 0);
        assert!(out.contains("pairing   -1"));
        assert!(out.contains("verdict   valid"));
        let (code, _, _) = call(&["certify", "--a", "2,2,-4"]);
        assert_eq!(code, 1);
        let (code, _, err) = call(&["certify", "--a", "1,1,1"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error: --a:"), "{err}");
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn usage_errors_name_the_flag() {
        let (code, _, err) = call(&["class", "--a", "1,x"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        assert!(err.contains("--a"), "{err}");
        let (code, _, err) = call(&["torsion"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        assert!(err.contains("--orbits"), "{err}");
        let (code, _, err) = call(&["class", "--canonical"]);
        assert_eq!(code, 2);
        assert!(err.contains("--n"), "{err}");
    }

    #[test]
    fn torsion_orbits() {
        let (code, out, _) = call(&["torsion", "--orbits", "4"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("3 orbits"));
    }
}
