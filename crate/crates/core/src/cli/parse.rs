use std::str::FromStr;

use crate::algebra::arith::factorize;
use crate::error::{Error, Result};
use crate::stonevn::Eps;
use crate::weilgl::Family;

/// `linear:n:q`, `unitary:n:q`, `symplectic:n:q` (Sp_{2n}) or `extraspecial:2:n:+|-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumFamily {
    Classical(Family, usize, u64),
    Symplectic(usize, u64),
    Extraspecial(usize, Eps),
}

/// `singer`, `sub:LABEL`, `plus`, `minus`, `beta:a:b` or `order:k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusSpec {
    Singer,
    Sub(String),
    Plus,
    Minus,
    Beta(usize, usize),
    Order(u64),
}

fn num<T: FromStr>(s: &str, whole: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("bad number {s:?} in {whole:?}")))
}

impl FromStr for SpectrumFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [f @ ("linear" | "gl" | "unitary" | "gu"), n, q] => {
                Ok(SpectrumFamily::Classical(f.parse()?, num(n, s)?, num(q, s)?))
            }
            ["symplectic" | "sp", n, q] => Ok(SpectrumFamily::Symplectic(num(n, s)?, num(q, s)?)),
            ["extraspecial", "2", n, e] => Ok(SpectrumFamily::Extraspecial(num(n, s)?, e.parse()?)),
            _ => Err(Error::Parse(format!(
                "bad family {s:?}; expected linear:n:q, unitary:n:q, symplectic:n:q or extraspecial:2:n:+|-"
            ))),
        }
    }
}

impl FromStr for TorusSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.splitn(3, ':').collect();
        match parts.as_slice() {
            ["singer"] => Ok(TorusSpec::Singer),
            ["plus"] => Ok(TorusSpec::Plus),
            ["minus"] => Ok(TorusSpec::Minus),
            ["sub", label] => Ok(TorusSpec::Sub(label.to_string())),
            ["beta", a, b] => Ok(TorusSpec::Beta(num(a, s)?, num(b, s)?)),
            ["order", k] => Ok(TorusSpec::Order(num(k, s)?)),
            _ => Err(Error::Parse(format!("bad torus {s:?}; expected singer, sub:LABEL, plus, minus, beta:a:b or order:k"))),
        }
    }
}

/// (p, f) with q = p^f.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, f)] => Ok((*p, *f)),
        _ => Err(Error::Domain(format!("q = {q} is not a prime power"))),
    }
}
