//! Character-set expressions: `Char(N)`, `Char*(N)`, `xi(N)^k`, literals `a/N`, `1`,
//! sets `{...}`, union `|`, multiset difference `\`, translation `*`, and comma lists.

use std::fmt;

use crate::algebra::arith::gcd;
use crate::algebra::UnityClass;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharSetExpr {
    Char(u64),
    CharUnits(u64),
    Xi { n: u64, k: Option<i64> },
    Lit { a: i64, n: u64 },
    One,
    Set(Box<CharSetExpr>),
    Group(Box<CharSetExpr>),
    Union(Box<CharSetExpr>, Box<CharSetExpr>),
    Diff(Box<CharSetExpr>, Box<CharSetExpr>),
    Translate(Box<CharSetExpr>, Box<CharSetExpr>),
    List(Vec<CharSetExpr>),
}

impl fmt::Display for CharSetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CharSetExpr::*;
        match self {
            Char(n) => write!(f, "Char({n})"),
            CharUnits(n) => write!(f, "Char*({n})"),
            Xi { n, k: None } => write!(f, "xi({n})"),
            Xi { n, k: Some(k) } => write!(f, "xi({n})^{k}"),
            Lit { a, n } => write!(f, "{a}/{n}"),
            One => write!(f, "1"),
            Set(e) => write!(f, "{{{e}}}"),
            Group(e) => write!(f, "({e})"),
            Union(a, b) => write!(f, "{a}|{b}"),
            Diff(a, b) => write!(f, "{a}\\{b}"),
            Translate(a, b) => write!(f, "{a}*{b}"),
            List(v) => {
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

/// All characters of order dividing n.
pub fn char_all(n: u64) -> Vec<UnityClass> {
    (0..n).map(|a| UnityClass::new(a as i64, n)).collect()
}

/// Characters of order exactly n.
pub fn char_units(n: u64) -> Vec<UnityClass> {
    (0..n).filter(|&a| gcd(a, n) == 1).map(|a| UnityClass::new(a as i64, n)).collect()
}

impl CharSetExpr {
    /// Evaluates to a sorted multiset.
    pub fn eval(&self) -> Result<Vec<UnityClass>> {
        use CharSetExpr::*;
        let mut v = match self {
            Char(n) => char_all(*n),
            CharUnits(n) => char_units(*n),
            Xi { n, k } => vec![UnityClass::new(k.unwrap_or(1), *n)],
            Lit { a, n } => vec![UnityClass::new(*a, *n)],
            One => vec![UnityClass::ONE],
            Set(e) | Group(e) => e.eval()?,
            Union(a, b) => {
                let mut x = a.eval()?;
                x.extend(b.eval()?);
                x
            }
            Diff(a, b) => {
                let mut x = a.eval()?;
                for u in b.eval()? {
                    let pos = x
                        .iter()
                        .position(|&y| y == u)
                        .ok_or_else(|| Error::Domain(format!("cannot remove {u}: not in {a}")))?;
                    x.remove(pos);
                }
                x
            }
            Translate(a, b) => {
                let (x, y) = (a.eval()?, b.eval()?);
                match (x.len(), y.len()) {
                    (_, 1) => x.iter().map(|&u| u + y[0]).collect(),
                    (1, _) => y.iter().map(|&u| u + x[0]).collect(),
                    _ => return Err(Error::Domain(format!("translation {self} needs a single character on one side"))),
                }
            }
            List(v) => {
                let mut out = vec![];
                for e in v {
                    out.extend(e.eval()?);
                }
                out
            }
        };
        v.sort();
        Ok(v)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.i, self.src))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, t: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(t.as_bytes()) {
            self.i += t.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {t:?}")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.i;
        if self.i < self.s.len() && self.s[self.i] == b'-' {
            self.i += 1;
        }
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        self.src[start..self.i].parse().map_err(|_| {
            self.err("expected integer")
        })
    }

    fn modulus(&mut self) -> Result<u64> {
        let n = self.int()?;
        if n <= 0 {
            return Err(Error::Domain(format!("character group order must be positive, got {n}")));
        }
        Ok(n as u64)
    }

    fn list(&mut self) -> Result<CharSetExpr> {
        let mut items = vec![self.union()?];
        while self.eat(",") {
            items.push(self.union()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { CharSetExpr::List(items) })
    }

    fn union(&mut self) -> Result<CharSetExpr> {
        let mut e = self.trans()?;
        loop {
            if self.eat("|") {
                e = CharSetExpr::Union(Box::new(e), Box::new(self.trans()?));
            } else if self.eat("\\") {
                e = CharSetExpr::Diff(Box::new(e), Box::new(self.trans()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn trans(&mut self) -> Result<CharSetExpr> {
        let mut e = self.atom()?;
        while self.eat("*") {
            e = CharSetExpr::Translate(Box::new(e), Box::new(self.atom()?));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<CharSetExpr> {
        if self.eat("Char*(") {
            let n = self.modulus()?;
            self.expect(")")?;
            return Ok(CharSetExpr::CharUnits(n));
        }
        if self.eat("Char(") {
            let n = self.modulus()?;
            self.expect(")")?;
            return Ok(CharSetExpr::Char(n));
        }
        if self.eat("xi(") {
            let n = self.modulus()?;
            self.expect(")")?;
            let k = if self.eat("^") { Some(self.int()?) } else { None };
            return Ok(CharSetExpr::Xi { n, k });
        }
        if self.eat("{") {
            let e = self.list()?;
            self.expect("}")?;
            return Ok(CharSetExpr::Set(Box::new(e)));
        }
        if self.eat("(") {
            let e = self.list()?;
            self.expect(")")?;
            return Ok(CharSetExpr::Group(Box::new(e)));
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let a = self.int()?;
                if self.eat("/") {
                    let n = self.modulus()?;
                    Ok(CharSetExpr::Lit { a, n })
                } else if a == 1 {
                    Ok(CharSetExpr::One)
                } else {
                    Err(self.err("bare integer other than 1"))
                }
            }
            _ => Err(self.err("expected a character-set term")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<CharSetExpr> {
    let mut p = Parser { s: text.as_bytes(), i: 0, src: text };
    let e = p.list()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses and evaluates a character-set expression.
pub fn parse_charset(text: &str) -> Result<Vec<UnityClass>> {
    parse_expr(text)?.eval()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(v: &[UnityClass]) -> String {
        v.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(" ")
    }

    #[test]
    fn table_forms() {
        assert_eq!(show(&parse_charset("Char(4)\\{1}").unwrap()), "1/4 1/2 3/4");
        assert_eq!(parse_charset("Char*(11)").unwrap().len(), 10);
        assert_eq!(show(&parse_charset("xi(8),xi(8)^3").unwrap()), "1/8 3/8");
        assert_eq!(parse_charset("Char(15)\\Char*(15)").unwrap().len(), 7);
        assert_eq!(show(&parse_charset("1,xi(5),xi(5)^-1").unwrap()), "0/1 1/5 4/5");
        let j3 = parse_charset("xi(3)*Char*(19)").unwrap();
        assert_eq!(j3.len(), 18);
        assert!(j3.iter().all(|u| u.den() == 57));
        assert_eq!(parse_charset("Char(14)\\{1,xi(7),xi(7)^2,xi(7)^4}").unwrap().len(), 10);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_charset("Char(0)"), Err(Error::Domain(_))));
        assert!(matches!(parse_charset("Char(4"), Err(Error::Parse(_))));
        assert!(matches!(parse_charset("Char(4)\\xi(3)"), Err(Error::Domain(_))));
        assert!(matches!(parse_charset("Char(4)*Char(2)"), Err(Error::Domain(_))));
        assert!(matches!(parse_charset("2"), Err(Error::Parse(_))));
    }

    #[test]
    fn print_roundtrip() {
        for s in [
            "Char(4)\\{1}",
            "Char*(11)",
            "xi(8),xi(8)^3",
            "xi(3)*Char*(19)",
            "Char(18)\\{1,xi(6),xi(6)^2,xi(6)^3}",
            "(Char(3)|Char(5))\\{1}*xi(2)^1",
            "-1/4,3/4",
        ] {
            assert_eq!(parse_expr(s).unwrap().to_string(), s);
        }
    }
}
