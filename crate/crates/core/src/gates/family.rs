use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::landau;
use crate::algebra::arith::{factorize, is_prime};
use crate::constructions::tables;
use crate::error::{Error, Result};
use crate::stonevn::Eps;

/// A candidate simple group S (or extraspecial normalizer) for the monodromy group.
/// `Symplectic(n, q)` is PSp_{2n}(q) and `OrthogonalPlus/Minus(n, q)` is PΩ^±_{2n}(q).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupFamily {
    Linear { n: u32, q: u64 },
    Unitary { n: u32, q: u64 },
    Symplectic { n: u32, q: u64 },
    OrthogonalPlus { n: u32, q: u64 },
    OrthogonalMinus { n: u32, q: u64 },
    Alternating { n: u32 },
    Sporadic { name: String },
    ExtraspecialNormalizer { p: u64, n: u32, eps: Eps },
}

fn prime_of(q: u64) -> Result<u64> {
    match factorize(q).as_slice() {
        [(p, _)] => Ok(*p),
        _ => Err(Error::Domain(format!("q = {q} is not a prime power"))),
    }
}

impl GroupFamily {
    pub fn new(self) -> Result<GroupFamily> {
        use GroupFamily::*;
        let ok = match &self {
            Linear { n, q } => *n >= 2 && prime_of(*q).is_ok() && !(*n == 2 && *q < 4),
            Unitary { n, q } => *n >= 3 && prime_of(*q).is_ok() && (*n, *q) != (3, 2),
            Symplectic { n, q } => *n >= 2 && prime_of(*q).is_ok() && (*n, *q) != (2, 2),
            OrthogonalPlus { n, q } | OrthogonalMinus { n, q } => *n >= 4 && prime_of(*q).is_ok(),
            Alternating { n } => *n >= 5,
            Sporadic { name } => tables::SPORADIC.contains(&name.as_str()),
            ExtraspecialNormalizer { p, n, .. } => is_prime(*p) && *n >= 1,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Domain(format!("{self} is outside the encoded parameter ranges")))
        }
    }

    /// Defining characteristic r; 0 for alternating and sporadic groups.
    pub fn characteristic(&self) -> u64 {
        use GroupFamily::*;
        match self {
            Linear { q, .. } | Unitary { q, .. } | Symplectic { q, .. } | OrthogonalPlus { q, .. } | OrthogonalMinus { q, .. } => {
                prime_of(*q).unwrap_or(0)
            }
            ExtraspecialNormalizer { p, .. } => *p,
            Alternating { .. } | Sporadic { .. } => 0,
        }
    }

    /// Name under which the group appears in the embedded tables, if any.
    fn table_name(&self) -> Option<String> {
        use GroupFamily::*;
        Some(match self {
            Linear { n: 3, q: 4 } => "PSL3(4)".into(),
            Unitary { n: 4, q: 3 } => "PSU4(3)".into(),
            Symplectic { n: 3, q: 2 } => "Sp6(2)".into(),
            OrthogonalPlus { n: 4, q: 2 } => "O8+(2)".into(),
            Alternating { n: 7 } => "A7".into(),
            Sporadic { name } => name.clone(),
            _ => return None,
        })
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupFamily::*;
        match self {
            Linear { n, q } => write!(f, "linear:{n}:{q}"),
            Unitary { n, q } => write!(f, "unitary:{n}:{q}"),
            Symplectic { n, q } => write!(f, "symplectic:{n}:{q}"),
            OrthogonalPlus { n, q } => write!(f, "orthogonal+:{n}:{q}"),
            OrthogonalMinus { n, q } => write!(f, "orthogonal-:{n}:{q}"),
            Alternating { n } => write!(f, "alternating:{n}"),
            Sporadic { name } => write!(f, "sporadic:{name}"),
            ExtraspecialNormalizer { p, n, eps } => write!(f, "extraspecial:{p}:{n}:{eps}"),
        }
    }
}

impl FromStr for GroupFamily {
    type Err = Error;
    /// `linear:n:q`, `unitary:n:q`, `symplectic:n:q`, `orthogonal+:n:q`, `orthogonal-:n:q`,
    /// `alternating:n`, `sporadic:NAME`, `extraspecial:p:n[:+|-]`.
    fn from_str(s: &str) -> Result<GroupFamily> {
        use GroupFamily::*;
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::Parse(format!("bad group family {s:?}"));
        let num = |i: usize| -> Result<u64> { parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let fam = match (parts[0], parts.len()) {
            ("linear", 3) => Linear { n: num(1)? as u32, q: num(2)? },
            ("unitary", 3) => Unitary { n: num(1)? as u32, q: num(2)? },
            ("symplectic", 3) => Symplectic { n: num(1)? as u32, q: num(2)? },
            ("orthogonal+", 3) => OrthogonalPlus { n: num(1)? as u32, q: num(2)? },
            ("orthogonal-", 3) => OrthogonalMinus { n: num(1)? as u32, q: num(2)? },
            ("alternating", 2) => Alternating { n: num(1)? as u32 },
            ("sporadic", 2) => Sporadic { name: parts[1].to_string() },
            ("extraspecial", 3) => ExtraspecialNormalizer { p: num(1)?, n: num(2)? as u32, eps: Eps::Plus },
            ("extraspecial", 4) => ExtraspecialNormalizer { p: num(1)?, n: num(2)? as u32, eps: parts[3].parse()? },
            _ => return Err(bad()),
        };
        fam.new()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Exact,
    /// An upper bound for meo, or a lower bound for the minimal degree.
    Bound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quantity {
    pub value: u128,
    pub kind: Kind,
    pub source: String,
}

fn q(value: u128, kind: Kind, source: &str) -> Result<Quantity> {
    Ok(Quantity { value, kind, source: source.to_string() })
}

fn not_covered(f: &GroupFamily, what: &str) -> Error {
    Error::Domain(format!("{what} of {f} is not covered by the encoded formulas or tables"))
}

fn pw(b: u64, e: u32) -> u128 {
    (b as u128).pow(e)
}

fn table_value(f: &GroupFamily, meo: bool) -> Option<Quantity> {
    let name = f.table_name()?;
    let (m, d, t) = tables::lookup(&name)?;
    Some(Quantity { value: if meo { m } else { d } as u128, kind: Kind::Exact, source: format!("Table {t}, {name}") })
}

/// Maximal element order of Aut(S) (exact or an upper bound).
pub fn meo_bound(f: &GroupFamily) -> Result<Quantity> {
    use GroupFamily::*;
    if let Some(v) = table_value(f, true) {
        return Ok(v);
    }
    match *f {
        Linear { n, q: qq } if !matches!((n, qq), (3, 4) | (4, 3)) && (n > 2 || qq >= 11) => {
            q((pw(qq, n) - 1) / (qq as u128 - 1), Kind::Exact, "(q^n-1)/(q-1)")
        }
        Symplectic { n, q: qq } if (n, qq) != (2, 3) => q(pw(qq, n + 1) / (qq as u128 - 1), Kind::Bound, "q^(n+1)/(q-1)"),
        OrthogonalPlus { n, q: qq } if (n, qq) != (4, 2) => q(pw(qq, n + 1) / (qq as u128 - 1), Kind::Bound, "q^(n+1)/(q-1)"),
        OrthogonalMinus { n, q: qq } => q(pw(qq, n + 1) / (qq as u128 - 1), Kind::Bound, "q^(n+1)/(q-1)"),
        Unitary { n: 3, q: qq } if qq != 3 && qq != 5 => q(qq as u128 * (qq as u128 + 1), Kind::Bound, "q(q+1)"),
        Unitary { n: 4, q: qq } if qq >= 4 => q(pw(qq, 3) + 1, Kind::Bound, "q^3+1"),
        Unitary { n, q: qq } if n >= 6 && n % 2 == 0 && (n, qq) != (6, 2) => {
            q(pw(qq, n - 1) + pw(qq, 2), Kind::Bound, "q^(n-1)+q^2")
        }
        Unitary { n, q: qq } if n >= 5 && n % 2 == 1 && (n, qq) != (5, 2) => q(pw(qq, n - 1) + qq as u128, Kind::Bound, "q^(n-1)+q"),
        Alternating { n } if n != 6 => q(landau(n)?, Kind::Exact, "Landau's function"),
        _ => Err(not_covered(f, "meo")),
    }
}

/// Minimal degree of a nontrivial projective representation of S (exact or a lower bound).
pub fn min_dim(f: &GroupFamily) -> Result<Quantity> {
    use GroupFamily::*;
    if let Some(v) = table_value(f, false) {
        return Ok(v);
    }
    match *f {
        Linear { n, q: qq } if n >= 3 => q((pw(qq, n) - qq as u128) / (qq as u128 - 1), Kind::Exact, "(q^n-q)/(q-1)"),
        Unitary { n, q: qq } => {
            let s = if n % 2 == 0 { 1i128 } else { -1 };
            let a = (pw(qq, n) as i128 - s) / (qq as i128 + 1);
            let b = (pw(qq, n) as i128 + qq as i128 * s) / (qq as i128 + 1);
            q(a.min(b) as u128, Kind::Exact, "min((q^n-(-1)^n)/(q+1), (q^n+q(-1)^n)/(q+1))")
        }
        Symplectic { n, q: qq } if qq % 2 == 1 => q((pw(qq, n) - 1) / 2, Kind::Exact, "(q^n-1)/2"),
        Symplectic { n, q: qq } => {
            q((pw(qq, n) - 1) * (pw(qq, n) - qq as u128) / (2 * (qq as u128 + 1)), Kind::Exact, "(q^n-1)(q^n-q)/2(q+1)")
        }
        OrthogonalPlus { n, q: qq } | OrthogonalMinus { n, q: qq } => {
            let num = (pw(qq, n) + 1) * (pw(qq, n - 1) - qq as u128);
            let den = pw(qq, 2) - 1;
            q(num.div_ceil(den), Kind::Bound, "(q^n+1)(q^(n-1)-q)/(q^2-1)")
        }
        ExtraspecialNormalizer { p, n, .. } => q(pw(p, n), Kind::Exact, "p^n"),
        _ => Err(not_covered(f, "minimal degree")),
    }
}

/// Exceptions to "p = r" for S of Lie type in characteristic r, valid only when D <= 22.
pub const CHAR_SHEAF1_EXCEPTIONS: &[&str] = &[
    "PSL2(5)", "PSL2(7)", "PSL2(8)", "PSL2(9)", "PSL2(11)", "PSL2(25)", "SL3(2)", "SL4(2)", "PSL3(3)", "PSL3(4)", "PSU4(2)",
    "PSU5(2)", "PSU6(2)", "PSU3(3)", "PSU4(3)", "PSU3(4)", "PSU3(5)", "Sp6(2)", "PSp4(3)", "PSp6(3)", "PSp4(5)", "O8+(2)",
    "2B2(8)", "G2(3)", "G2(4)",
];

/// Ranks D for which an extraspecial normalizer may live in characteristic p != r.
pub const CHAR_SHEAF2_DEGREES: &[u64] = &[2, 3, 4, 5, 8, 9];

fn exception_name(f: &GroupFamily) -> Option<&'static str> {
    use GroupFamily::*;
    let name = match *f {
        Linear { n: 2, q } => format!("PSL2({q})"),
        Linear { n: 3, q: 2 } => "SL3(2)".into(),
        Linear { n: 4, q: 2 } => "SL4(2)".into(),
        Linear { n, q } => format!("PSL{n}({q})"),
        Unitary { n, q } => format!("PSU{n}({q})"),
        Symplectic { n: 3, q: 2 } => "Sp6(2)".into(),
        Symplectic { n, q } => format!("PSp{}({q})", 2 * n),
        OrthogonalPlus { n: 4, q: 2 } => "O8+(2)".into(),
        _ => return None,
    };
    CHAR_SHEAF1_EXCEPTIONS.iter().copied().find(|&e| e == name)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum CharDecision {
    /// The sheaf's characteristic p must equal r.
    MustEqual { r: u64 },
    /// p may differ from r: S is on the exception list (with D <= 22), or D is one of the
    /// small extraspecial ranks.
    SmallException { r: u64, reason: String },
}

/// Characteristic of a hypergeometric sheaf of rank `d` whose monodromy group is built on `f`.
pub fn char_sheaf_decision(f: &GroupFamily, d: u64) -> Result<CharDecision> {
    use GroupFamily::*;
    let r = f.characteristic();
    match f {
        Alternating { .. } | Sporadic { .. } => Err(Error::Domain(format!("{f} is not of Lie type or an extraspecial normalizer"))),
        ExtraspecialNormalizer { p, n, .. } => {
            if Some(d) != p.checked_pow(*n) {
                return Err(Error::Domain(format!("rank {d} is not {p}^{n}")));
            }
            Ok(if CHAR_SHEAF2_DEGREES.contains(&d) {
                CharDecision::SmallException { r, reason: format!("D = {d} is in {{2,3,4,5,8,9}}") }
            } else {
                CharDecision::MustEqual { r }
            })
        }
        _ => Ok(match exception_name(f) {
            Some(name) if d <= 22 => CharDecision::SmallException { r, reason: format!("S = {name} is listed and D = {d} <= 22") },
            _ => CharDecision::MustEqual { r },
        }),
    }
}

/// Families of the exception list that are encoded as `GroupFamily` values.
pub fn char_sheaf1_family(name: &str) -> Option<GroupFamily> {
    use GroupFamily::*;
    let (n, q) = match name {
        "SL3(2)" => return Some(Linear { n: 3, q: 2 }),
        "SL4(2)" => return Some(Linear { n: 4, q: 2 }),
        "Sp6(2)" => return Some(Symplectic { n: 3, q: 2 }),
        "O8+(2)" => return Some(OrthogonalPlus { n: 4, q: 2 }),
        _ => {
            let open = name.find('(')?;
            let head = &name[..open];
            let q: u64 = name[open + 1..name.len() - 1].parse().ok()?;
            (head, q)
        }
    };
    let tail = |pre: &str| n.strip_prefix(pre).and_then(|s| s.parse::<u32>().ok());
    if let Some(k) = tail("PSL") {
        Some(Linear { n: k, q })
    } else if let Some(k) = tail("PSU") {
        Some(Unitary { n: k, q })
    } else {
        tail("PSp").map(|k| Symplectic { n: k / 2, q })
    }
}
