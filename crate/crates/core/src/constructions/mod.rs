//! Descriptor factories for the explicit families (Sawin quotients, alternating and
//! symmetric groups, the F_N and G_D families) and the embedded tables.

mod table3;
pub mod tables;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use table3::{table3_consistency, table3_entries, CatalogEntry, Table3Report, Table3RowCheck};
pub use tables::{table1, table1_gate_check, table2, table2_gate_check, GateRow, Table1Check, RowStatus, Table1Rep, Table1Row, Table2Row};

use crate::algebra::arith::{gcd, is_prime, log_exact, p_prime_part};
use crate::algebra::UnityClass;
use crate::chargeom::HypDescriptor;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SawinSide {
    /// f_* Q / Q for f = x^A (1-x)^B, with p | A + B.
    QuotientAtC,
    /// (1/f)_* Q / Q, with p | A.
    QuotientAtA,
}

impl FromStr for SawinSide {
    type Err = Error;
    fn from_str(s: &str) -> Result<SawinSide> {
        match s {
            "c" | "C" | "i" => Ok(SawinSide::QuotientAtC),
            "a" | "A" | "ii" => Ok(SawinSide::QuotientAtA),
            _ => Err(Error::Parse(format!("bad Sawin side {s:?}; expected c or a"))),
        }
    }
}

/// `Char(x) ⊔ Char(y) ∖ {1}` written as simply as possible.
fn two_groups_minus_one(x: u64, y: u64) -> String {
    match (x, y) {
        (1, 1) => "1".into(),
        (1, n) | (n, 1) => format!("Char({n})"),
        (x, y) => format!("(Char({x})|Char({y}))\\{{1}}"),
    }
}

fn group_minus_one(n: u64) -> Option<String> {
    (n > 1).then(|| format!("Char({n})\\{{1}}"))
}

/// The hypergeometric part of the direct image of the constant sheaf under x^A (1-x)^B
/// (side C) or its inverse (side A), in characteristic p.
pub fn sawin(a: u64, b: u64, p: u64, side: SawinSide) -> Result<HypDescriptor> {
    if a == 0 || b == 0 || gcd(a, b) != 1 {
        return Err(Error::Domain(format!("Sawin needs gcd(A,B) = 1, got A={a}, B={b}")));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("p={p} is not prime")));
    }
    let c = a + b;
    let (up, down) = match side {
        SawinSide::QuotientAtC => {
            if !c.is_multiple_of(p) {
                return Err(Error::Domain(format!("side C needs p | A+B, but {p} does not divide {c}")));
            }
            (Some(two_groups_minus_one(a, b)), group_minus_one(p_prime_part(c, p)))
        }
        SawinSide::QuotientAtA => {
            if !a.is_multiple_of(p) {
                return Err(Error::Domain(format!("side A needs p | A, but {p} does not divide {a}")));
            }
            (group_minus_one(c), Some(two_groups_minus_one(p_prime_part(a, p), b)))
        }
    };
    let up: Vec<String> = up.into_iter().collect();
    let down: Vec<String> = down.into_iter().collect();
    let up_refs: Vec<&str> = up.iter().map(String::as_str).collect();
    let down_refs: Vec<&str> = down.iter().map(String::as_str).collect();
    HypDescriptor::from_exprs(p, &up_refs, &down_refs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "group", content = "label", rename_all = "snake_case")]
pub enum ExpectedGroup {
    Alternating(u32),
    Symmetric(u32),
    /// One of the k = 1 exceptional cases, with the group the source identifies.
    Exception(String),
}

impl fmt::Display for ExpectedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedGroup::Alternating(n) => write!(f, "A{n}"),
            ExpectedGroup::Symmetric(n) => write!(f, "S{n}"),
            ExpectedGroup::Exception(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AltFamily {
    #[serde(serialize_with = "ser_desc")]
    pub descriptor: HypDescriptor,
    pub expected: ExpectedGroup,
    pub i0_cycle_type: Vec<u64>,
}

fn ser_desc<S: serde::Serializer>(h: &HypDescriptor, s: S) -> std::result::Result<S::Ok, S::Error> {
    h.to_json_value().serialize(s)
}

/// The part-(i) sheaf Hyp(Char(n)∖{1}; Char(n-p)) without the p ∤ n hypothesis.
pub fn alt2_i_descriptor(n: u32, p: u64) -> Result<HypDescriptor> {
    if !is_prime(p) || p >= n as u64 {
        return Err(Error::Domain(format!("need a prime p < n, got p={p}, n={n}")));
    }
    HypDescriptor::from_exprs(p, &[&format!("Char({n})\\{{1}}")], &[&format!("Char({})", n as u64 - p)])
}

/// Sheaves with monodromy A_n or S_n: part (i) when `k` is `None` (I(0) an n-cycle),
/// part (ii) otherwise (I(0) an (n-k)-cycle times a k-cycle).
pub fn alt2_family(n: u32, k: Option<u32>, p: u64) -> Result<AltFamily> {
    if n < 5 {
        return Err(Error::Domain(format!("n = {n} < 5")));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("p={p} is not prime")));
    }
    let n64 = n as u64;
    let Some(k) = k else {
        if p > n64 - 3 {
            return Err(Error::Domain(format!("clause (i) needs p <= n-3, got p={p}, n={n}")));
        }
        if n64.is_multiple_of(p) {
            return Err(Error::Domain(format!("clause (i) needs p ∤ n, got p={p}, n={n}")));
        }
        let descriptor = sawin(p, n64 - p, p, SawinSide::QuotientAtA)?;
        let expected = if n % 2 == 1 { ExpectedGroup::Alternating(n) } else { ExpectedGroup::Symmetric(n) };
        return Ok(AltFamily { descriptor, expected, i0_cycle_type: vec![n64] });
    };
    let k64 = k as u64;
    if k == 0 || 2 * k > n {
        return Err(Error::Domain(format!("clause (ii) needs 1 <= k <= n/2, got k={k}")));
    }
    if gcd(k64, n64) != 1 {
        return Err(Error::Domain(format!("clause (ii) needs gcd(k,n) = 1, got k={k}, n={n}")));
    }
    if !n64.is_multiple_of(p) {
        return Err(Error::Domain(format!("clause (ii) needs p | n, got p={p}, n={n}")));
    }
    let mut expected = if n.is_multiple_of(2) { ExpectedGroup::Alternating(n) } else { ExpectedGroup::Symmetric(n) };
    if k == 1 {
        if log_exact(n64, p).is_some() {
            return Err(Error::Domain(format!("clause (ii) with k = 1 needs n not a power of p, got n={n}, p={p}")));
        }
        expected = match (n, p) {
            (6, 2) => ExpectedGroup::Exception("A5 (via Brauer-p transfer from a type (4,1) sheaf)".into()),
            (12, 3) => ExpectedGroup::Exception("M11 (Lemma m11)".into()),
            (24, 2) => ExpectedGroup::Exception("M24".into()),
            _ => expected,
        };
    }
    let descriptor = sawin(k64, n64 - k64, p, SawinSide::QuotientAtC)?;
    let mut cycles = vec![n64 - k64, k64];
    cycles.retain(|&c| c > 0);
    Ok(AltFamily { descriptor, expected, i0_cycle_type: cycles })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum SpecialFamily {
    /// F_N: the exponential sums of x^N + tx, a Kummer pullback of a Kloosterman sheaf.
    F { n: u64 },
    /// G_D: the sums of x^D + tx twisted by a nontrivial character chi.
    G { d: u64, chi: UnityClass },
}

/// The Kloosterman or hypergeometric sheaf underlying an F_N or G_D family.
pub fn special_family(fam: &SpecialFamily, p: u64) -> Result<HypDescriptor> {
    match *fam {
        SpecialFamily::F { n } => {
            if n < 2 || n % p == 0 {
                return Err(Error::Domain(format!("F_N needs N >= 2 prime to p, got N={n}, p={p}")));
            }
            HypDescriptor::from_exprs(p, &[&format!("Char({n})\\{{1}}")], &[])
        }
        SpecialFamily::G { d, chi } => {
            if d < 2 || d % p == 0 {
                return Err(Error::Domain(format!("G_D needs D >= 2 prime to p, got D={d}, p={p}")));
            }
            if chi == UnityClass::ONE {
                return Err(Error::Domain("G_D needs a nontrivial character".into()));
            }
            let rho = chi.div_root(d);
            HypDescriptor::from_exprs(p, &[&format!("Char({d})")], &[&rho.to_string()])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weilgl::deleted_perm_spectrum;

    #[test]
    fn sawin_examples() {
        let h = sawin(11, 1, 3, SawinSide::QuotientAtC).unwrap();
        let t = HypDescriptor::from_exprs(3, &["Char(11)"], &["Char(4)\\{1}"]).unwrap();
        assert_eq!((h.upstairs(), h.downstairs()), (t.upstairs(), t.downstairs()));
        let h = sawin(23, 1, 2, SawinSide::QuotientAtC).unwrap();
        assert_eq!((h.d(), h.m()), (23, 2));
        let h = sawin(2, 5, 2, SawinSide::QuotientAtA).unwrap();
        assert_eq!((h.d(), h.m()), (6, 5));
        assert!(sawin(4, 6, 2, SawinSide::QuotientAtC).is_err());
        assert!(sawin(4, 5, 2, SawinSide::QuotientAtC).is_err());
        assert!(sawin(3, 5, 2, SawinSide::QuotientAtA).is_err());
    }

    #[test]
    fn alt2_examples() {
        let f = alt2_family(7, None, 2).unwrap();
        assert_eq!((f.descriptor.d(), f.descriptor.m()), (6, 5));
        assert_eq!((f.expected.clone(), f.i0_cycle_type.clone()), (ExpectedGroup::Alternating(7), vec![7]));
        let f = alt2_family(8, Some(3), 2).unwrap();
        assert_eq!((f.descriptor.d(), f.expected.clone(), f.i0_cycle_type.clone()), (7, ExpectedGroup::Alternating(8), vec![5, 3]));
        let t = HypDescriptor::from_exprs(2, &["Char(3)\\{1}", "Char(5)"], &[]).unwrap();
        assert_eq!(f.descriptor.upstairs(), t.upstairs());
        let f = alt2_family(12, Some(1), 3).unwrap();
        assert!(matches!(f.expected, ExpectedGroup::Exception(ref s) if s.starts_with("M11")));
        assert!(alt2_family(8, None, 2).is_err());
        assert!(alt2_family(8, Some(2), 2).is_err());
        assert!(alt2_family(9, Some(1), 3).is_err());
    }

    #[test]
    fn alt2_ii_i0_matches_cycle_type() {
        for n in 5..=20u32 {
            for k in 1..=n / 2 {
                for p in [2u64, 3, 5, 7] {
                    let Ok(f) = alt2_family(n, Some(k), p) else { continue };
                    assert_eq!(f.descriptor.i0_spectrum(), deleted_perm_spectrum(&f.i0_cycle_type).unwrap(), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn special_families() {
        let h = special_family(&SpecialFamily::F { n: 5 }, 3).unwrap();
        assert_eq!((h.d(), h.m(), h.kummer_induced()), (4, 0, None));
        let h = special_family(&SpecialFamily::G { d: 7, chi: UnityClass::new(1, 3) }, 2).unwrap();
        assert_eq!((h.d(), h.m()), (7, 1));
        assert_eq!(h.downstairs()[0].scale(7), UnityClass::new(1, 3));
        assert!(special_family(&SpecialFamily::F { n: 6 }, 3).is_err());
    }
}
