//! Decision engine for (S+) and the tensor-induction / indecomposability obstructions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::arith::{gcd, least_prime_divisor, log_exact, perfect_power};
use crate::chargeom::HypDescriptor;
use crate::error::{Error, Result};

pub use crate::algebra::arith::{least_prime_divisor as lpd, perfect_power as perfect_pow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Primitivity {
    Yes,
    No,
    Unknown,
}

impl std::str::FromStr for Primitivity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yes" => Ok(Primitivity::Yes),
            "no" => Ok(Primitivity::No),
            "unknown" => Ok(Primitivity::Unknown),
            _ => Err(Error::Parse(format!("primitivity must be yes|no|unknown, got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrimitivitySource {
    AutoKummerCheck,
    SufficientCondition,
    UserAsserted,
    Unknown,
}

/// An exact integer relation `lhs op rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntCheck {
    pub lhs_expr: String,
    pub lhs: i64,
    pub op: String,
    pub rhs_expr: String,
    pub rhs: i64,
}

impl IntCheck {
    fn new(lhs_expr: &str, lhs: i64, op: &str, rhs_expr: &str, rhs: i64) -> IntCheck {
        IntCheck { lhs_expr: lhs_expr.into(), lhs, op: op.into(), rhs_expr: rhs_expr.into(), rhs }
    }

    pub fn holds(&self) -> bool {
        match self.op.as_str() {
            ">" => self.lhs > self.rhs,
            ">=" => self.lhs >= self.rhs,
            "==" => self.lhs == self.rhs,
            "!=" => self.lhs != self.rhs,
            _ => false,
        }
    }
}

impl fmt::Display for IntCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={} {} {}={}", self.lhs_expr, self.lhs, self.op, self.rhs_expr, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Status {
    Guaranteed { theorem: String, clause: String, checks: Vec<IntCheck>, also_satisfied: Vec<String> },
    NotCovered { reasons: Vec<String> },
    InputInvalid { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SPlusVerdict {
    #[serde(flatten)]
    pub status: Status,
    pub primitivity_source: PrimitivitySource,
    pub text: String,
    pub warnings: Vec<String>,
}

impl SPlusVerdict {
    pub fn is_guaranteed(&self) -> bool {
        matches!(self.status, Status::Guaranteed { .. })
    }
}

/// A clause: a list of checks that must all hold, or a structural failure.
struct Clause {
    theorem: &'static str,
    clause: String,
    checks: Vec<IntCheck>,
}

impl Clause {
    fn new(theorem: &'static str, clause: &str) -> Clause {
        Clause { theorem, clause: clause.into(), checks: vec![] }
    }
    fn check(mut self, c: IntCheck) -> Clause {
        self.checks.push(c);
        self
    }
    fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.holds())
            .map(|c| format!("{} {}: fails {}", self.theorem, self.clause, c))
            .collect()
    }
}

struct Shape {
    p: i64,
    d: i64,
    m: i64,
    w: i64,
}

fn shape(h: &HypDescriptor) -> Shape {
    Shape { p: h.p() as i64, d: h.d() as i64, m: h.m() as i64, w: h.w() as i64 }
}

fn is_p_power(w: i64, p: i64) -> bool {
    w > 1 && log_exact(w as u64, p as u64).is_some()
}

fn kl_s(s: &Shape) -> Vec<Clause> {
    let mut c = Clause::new("Kl-S", "main")
        .check(IntCheck::new("D", s.d, ">=", "2", 2))
        .check(IntCheck::new("D", s.d, "!=", "4", 4));
    if s.p == 2 {
        c = c.check(IntCheck::new("D", s.d, "!=", "8", 8));
    }
    vec![c]
}

fn qwild(s: &Shape) -> Vec<Clause> {
    let mut c = Clause::new("qwild", "main");
    match log_exact(s.w as u64, s.p as u64) {
        Some(a) if a >= 1 => c = c.check(IntCheck::new("W", s.w, "==", &format!("p^{a}"), s.w)),
        _ => c = c.check(IntCheck::new("W", s.w, "==", "p^a", -1)),
    }
    c = c.check(IntCheck::new("D", s.d, ">", "W", s.w));
    if let Some((_, n)) = perfect_power(s.d as u64) {
        c.clause = "D a perfect power".into();
        c = c.check(IntCheck::new("W", s.w, ">=", "n_max", n as i64));
    } else {
        c.clause = "D not a perfect power".into();
    }
    vec![c]
}

fn notpbis(s: &Shape) -> Vec<Clause> {
    let base = |name: &str| {
        Clause::new("Hyp-notpbis-S", name)
            .check(IntCheck::new("D", s.d, ">", "4", 4))
            .check(IntCheck::new("D mod p", s.d % s.p, "!=", "0", 0))
    };
    let p0 = least_prime_divisor(s.d as u64).map(|x| x as i64).unwrap_or(1);
    let mut out = vec![];
    out.push(base("(i)").check(IntCheck::new("D", s.d, "==", "p0", p0)));
    out.push(
        base("(ii)")
            .check(IntCheck::new("D", s.d, "==", "p0^2", p0 * p0))
            .check(IntCheck::new("W", s.w, ">", "2*p0", 2 * p0)),
    );
    let mut iii = base("(iii)");
    if s.d == p0 || s.d == p0 * p0 {
        iii = iii.check(IntCheck::new("D", s.d, "!=", "p0 or p0^2", s.d));
    }
    iii = iii.check(IntCheck::new("p0*W", p0 * s.w, ">", "D", s.d));
    if s.d == 8 {
        iii = iii.check(IntCheck::new("W", s.w, ">", "6 (D=8)", 6));
    }
    out.push(iii);
    out.push(
        base("(iv)")
            .check(IntCheck::new("D", s.d, "==", "4", 4))
            .check(IntCheck::new("W", s.w, "==", "3", 3)),
    );
    out.push(
        base("(v)")
            .check(IntCheck::new("D", s.d, "==", "8", 8))
            .check(IntCheck::new("W", s.w, ">", "6", 6)),
    );
    out
}

fn notp(s: &Shape) -> Vec<Clause> {
    let mut c = Clause::new("Hyp-notp-S", "main")
        .check(IntCheck::new("D", s.d, ">=", "4", 4))
        .check(IntCheck::new("D mod p", s.d % s.p, "!=", "0", 0))
        .check(IntCheck::new("2W", 2 * s.w, ">", "D", s.d));
    if s.p % 2 == 1 && s.d == 8 {
        c = c.check(IntCheck::new("W", s.w, ">", "6 (p odd, D=8)", 6));
    }
    if s.p != 3 && s.d == 9 {
        c = c.check(IntCheck::new("W", s.w, ">", "6 (p!=3, D=9)", 6));
    }
    vec![c]
}

fn hyp_p(s: &Shape) -> Vec<Clause> {
    let mut c = Clause::new("Hyp-p-S", "main")
        .check(IntCheck::new("D", s.d, ">", "4", 4))
        .check(IntCheck::new("D mod p", s.d % s.p, "==", "0", 0))
        .check(IntCheck::new("3W", 3 * s.w, ">", "2(D-1)", 2 * (s.d - 1)));
    if s.p == 2 {
        c = c.check(IntCheck::new("D", s.d, "!=", "8 (p=2)", 8));
    }
    if s.p == 3 && s.d == 9 {
        c = c.check(IntCheck::new("m", s.m, "!=", "1 ((D,m)=(9,m), p=3)", 1));
    }
    vec![c]
}

/// Primitivity: `Ok((primitive, source))`, or `Err(reason)` for contradictory input.
fn primitivity(h: &HypDescriptor, user: Primitivity) -> std::result::Result<(Option<bool>, PrimitivitySource, String), String> {
    let s = shape(h);
    if let Some(d) = h.kummer_induced() {
        if user == Primitivity::Yes {
            return Err(format!("asserted primitive, but Kummer induced of degree {d}"));
        }
        return Ok((Some(false), PrimitivitySource::AutoKummerCheck, format!("Kummer induced of degree {d}")));
    }
    if s.m == 0 {
        if user == Primitivity::No {
            return Err("asserted imprimitive, but a Kloosterman sheaf that is not Kummer induced is primitive".into());
        }
        return Ok((Some(true), PrimitivitySource::AutoKummerCheck, "not Kummer induced".into()));
    }
    let sufficient = if is_p_power(s.w, s.p) && s.d > s.w {
        Some("wild part of dimension p^a")
    } else if s.m == 1 && !is_p_power(s.d, s.p) {
        Some("type (D,1) with D not a power of p")
    } else if s.m >= 2 && is_p_power(s.d, s.p) {
        Some("D > m >= 2 with D a power of p")
    } else {
        None
    };
    if let Some(why) = sufficient {
        if user == Primitivity::No {
            return Err(format!("asserted imprimitive, but primitive by sufficient condition: {why}"));
        }
        return Ok((Some(true), PrimitivitySource::SufficientCondition, why.into()));
    }
    Ok(match user {
        Primitivity::Yes => (Some(true), PrimitivitySource::UserAsserted, "asserted".into()),
        Primitivity::No => (Some(false), PrimitivitySource::UserAsserted, "asserted imprimitive".into()),
        Primitivity::Unknown => (None, PrimitivitySource::Unknown, "primitivity unknown".into()),
    })
}

pub fn splus_verdict(h: &HypDescriptor, user: Primitivity) -> SPlusVerdict {
    let s = shape(h);
    let mut warnings = vec![];
    if s.d == 9 && s.p == 3 {
        warnings.push(
            "D=9, p=3: the D=9 proviso of Hyp-notp-S is stated only for p != 3; governed by the remaining theorems".into(),
        );
    }
    let (prim, source, why) = match primitivity(h, user) {
        Ok(x) => x,
        Err(reason) => {
            return SPlusVerdict {
                text: format!("input invalid: {reason}"),
                status: Status::InputInvalid { reason },
                primitivity_source: PrimitivitySource::UserAsserted,
                warnings,
            }
        }
    };
    let not_covered = |reasons: Vec<String>, source, warnings| SPlusVerdict {
        text: format!("hypotheses not met: {}", reasons.join("; ")),
        status: Status::NotCovered { reasons },
        primitivity_source: source,
        warnings,
    };
    match prim {
        None => return not_covered(vec!["primitivity unknown".into()], source, warnings),
        Some(false) => return not_covered(vec![format!("not primitive: {why}")], source, warnings),
        Some(true) => {}
    }
    let theorems: Vec<Vec<Clause>> = if s.m == 0 {
        vec![kl_s(&s)]
    } else {
        vec![qwild(&s), notpbis(&s), notp(&s), hyp_p(&s)]
    };
    let mut reasons = vec![];
    let mut first: Option<Clause> = None;
    let mut also = vec![];
    for c in theorems.into_iter().flatten() {
        let f = c.failures();
        if !f.is_empty() {
            reasons.extend(f);
        } else if first.is_none() {
            first = Some(c);
        } else {
            also.push(format!("{} {}", c.theorem, c.clause));
        }
    }
    match first {
        Some(c) => SPlusVerdict {
            text: format!("(S+) holds by {} {}", c.theorem, c.clause),
            status: Status::Guaranteed {
                theorem: c.theorem.into(),
                clause: c.clause,
                checks: c.checks,
                also_satisfied: also,
            },
            primitivity_source: source,
            warnings,
        },
        None => not_covered(reasons, source, warnings),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorCandidate {
    pub n: u32,
    pub d0: u64,
    /// Clauses that were applicable but did not exclude this n.
    pub not_excluded_by: Vec<String>,
}

fn exclusion_clauses(s: &Shape, n_max: u32) -> Vec<Clause> {
    let pd = s.d % s.p == 0;
    let mut out = vec![];
    if s.m == 0 {
        if !pd {
            out.push(Clause::new("notp-tensind", "(i)").check(IntCheck::new("D", s.d, ">", "4", 4)));
        } else {
            let mut c = Clause::new("p-tensind", "(ii)").check(IntCheck::new("D", s.d, ">", "4", 4));
            if s.p == 2 {
                c = c.check(IntCheck::new("D", s.d, "!=", "8 (p=2)", 8));
            }
            out.push(c);
        }
        return out;
    }
    if !pd {
        let p0 = least_prime_divisor(s.d as u64).map(|x| x as i64).unwrap_or(1);
        let mut c = Clause::new("notp-tensind", "(ii)")
            .check(IntCheck::new("D", s.d, "!=", "4", 4))
            .check(IntCheck::new("p0*W", p0 * s.w, ">", "D", s.d));
        if s.d == p0 * p0 {
            c = c.check(IntCheck::new("W", s.w, ">", "2*p0", 2 * p0));
        }
        if s.d == 8 {
            c = c.check(IntCheck::new("W", s.w, ">", "6 (D=8)", 6));
        }
        out.push(c);
        out.push(
            Clause::new("notp-tensind", "(iii)")
                .check(IntCheck::new("D", s.d, "==", "4", 4))
                .check(IntCheck::new("m", s.m, "==", "1", 1))
                .check(IntCheck::new("p", s.p, "!=", "2", 2)),
        );
    } else {
        out.push(
            Clause::new("p-tensind", "(i)")
                .check(IntCheck::new("D", s.d, "==", "4", 4))
                .check(IntCheck::new("m", s.m, "==", "2", 2))
                .check(IntCheck::new("p", s.p, "==", "2", 2)),
        );
        let mut c = Clause::new("p-tensind", "(iii)")
            .check(IntCheck::new("D", s.d, ">", "4", 4))
            .check(IntCheck::new("3W", 3 * s.w, ">", "2(D-1)", 2 * (s.d - 1)));
        if s.p == 2 {
            c = c.check(IntCheck::new("D", s.d, "!=", "8 (p=2)", 8));
        }
        if s.p == 3 && s.d == 9 {
            c = c.check(IntCheck::new("m", s.m, "!=", "1 ((D,m)=(9,m), p=3)", 1));
        }
        out.push(c);
    }
    let mut q = Clause::new("qwild", "tensor");
    q = q.check(IntCheck::new("W is a power of p", is_p_power(s.w, s.p) as i64, "==", "1", 1));
    q = q.check(IntCheck::new("W", s.w, ">=", "n_max", n_max as i64));
    out.push(q);
    out
}

/// Whether the tame-to-S_n argument applies, forcing any tensor-induction degree n to be prime to p.
pub fn tame_to_sn_applies(h: &HypDescriptor) -> bool {
    let s = shape(h);
    if s.m == 0 {
        return s.d >= 4;
    }
    if s.d == 4 {
        return (s.m == 1 && s.p != 2) || (s.m == 2 && s.p == 2);
    }
    let p0 = least_prime_divisor(s.d as u64).map(|x| x as i64).unwrap_or(1);
    s.d >= 4 && p0 * p0 * s.w > s.d
}

/// All n >= 2 with D = D0^n, not excluded by an applicable inequality clause; n is
/// restricted to values prime to p whenever the tame-to-S_n argument applies.
pub fn tensor_induction_candidates(h: &HypDescriptor) -> Vec<TensorCandidate> {
    let s = shape(h);
    let coprime_only = tame_to_sn_applies(h);
    let Some((root, n_max)) = perfect_power(s.d as u64) else {
        return vec![];
    };
    let clauses = exclusion_clauses(&s, n_max);
    if clauses.iter().any(|c| c.failures().is_empty()) {
        return vec![];
    }
    let not_excluded_by: Vec<String> = clauses.iter().flat_map(|c| c.failures()).collect();
    (2..=n_max)
        .filter(|n| n_max % n == 0 && (!coprime_only || gcd(*n as u64, s.p as u64) == 1))
        .map(|n| TensorCandidate { n, d0: root.pow(n_max / n), not_excluded_by: not_excluded_by.clone() })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Indecomposability {
    pub ok: bool,
    pub reason: String,
}

pub fn indecomposability_ok(h: &HypDescriptor) -> Indecomposability {
    let s = shape(h);
    let (ok, reason) = if s.m == 0 {
        (true, "Kl-indec: Kloosterman sheaves are tensor indecomposable")
    } else if s.d != 4 {
        (true, "Hyp-indec (i): D != 4")
    } else if s.p != 2 {
        if s.m == 2 {
            (false, "Hyp-indec: excluded case (4,2) with p odd")
        } else {
            (true, "Hyp-indec (ii): D=4, p odd, (D,m) != (4,2)")
        }
    } else if s.m == 1 {
        (false, "Hyp-indec: excluded case (4,1) with p=2")
    } else {
        (true, "Hyp-indec (iii): D=4, p=2, (D,m) != (4,1)")
    };
    Indecomposability { ok, reason: reason.into() }
}
