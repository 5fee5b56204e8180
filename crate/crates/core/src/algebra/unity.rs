//! Roots of unity as elements of Q/Z.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{gcd, lcm};
use crate::error::{Error, Result};

/// A reduced fraction `num/den` in `[0, 1)`; `0/1` is the trivial character.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct UnityClass {
    num: u64,
    den: u64,
}

pub fn unity(a: i64, n: u64) -> Result<UnityClass> {
    if n == 0 {
        return Err(Error::Domain("denominator must be positive".into()));
    }
    Ok(UnityClass::new(a, n))
}

impl UnityClass {
    pub const ONE: UnityClass = UnityClass { num: 0, den: 1 };

    /// Panics on `n == 0`; use [`unity`] for a checked constructor.
    pub fn new(a: i64, n: u64) -> Self {
        assert!(n > 0, "zero denominator");
        let a = a.rem_euclid(n as i64) as u64;
        let g = gcd(a, n);
        if a == 0 {
            return Self::ONE;
        }
        UnityClass { num: a / g, den: n / g }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Multiplicative order of the root of unity, i.e. the reduced denominator.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn is_trivial(self) -> bool {
        self.num == 0
    }

    /// Numerator at a common denominator `m` (requires `den | m`).
    pub fn at(self, m: u64) -> u64 {
        debug_assert_eq!(m % self.den, 0);
        self.num * (m / self.den)
    }

    pub fn scale(self, k: i64) -> Self {
        let v = (self.num as i128 * k as i128).rem_euclid(self.den as i128) as i64;
        UnityClass::new(v, self.den)
    }

    /// Divides the class by `d`, choosing the representative `num/(den*d)`.
    pub fn div_root(self, d: u64) -> Self {
        UnityClass::new(self.num as i64, self.den * d)
    }
}

impl Add for UnityClass {
    type Output = UnityClass;
    fn add(self, o: Self) -> Self {
        let m = lcm(self.den, o.den);
        UnityClass::new((self.at(m) + o.at(m)) as i64, m)
    }
}

impl Neg for UnityClass {
    type Output = UnityClass;
    fn neg(self) -> Self {
        UnityClass::new(-(self.num as i64), self.den)
    }
}

impl Sub for UnityClass {
    type Output = UnityClass;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Ord for UnityClass {
    fn cmp(&self, o: &Self) -> Ordering {
        ((self.num as u128) * (o.den as u128))
            .cmp(&((o.num as u128) * (self.den as u128)))
            .then(self.den.cmp(&o.den))
    }
}

impl PartialOrd for UnityClass {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for UnityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for UnityClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (a, n) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected a/N, got {s:?}")))?;
        let a: i64 = a.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let n: u64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        unity(a, n)
    }
}

impl Serialize for UnityClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for UnityClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        assert_eq!(unity(3, 12).unwrap().to_string(), "1/4");
        assert_eq!(unity(12, 12).unwrap().to_string(), "0/1");
        assert_eq!(unity(7, 11).unwrap().to_string(), "7/11");
        assert_eq!(unity(-1, 4).unwrap().to_string(), "3/4");
        assert!(unity(1, 0).is_err());
    }

    #[test]
    fn addition_and_order() {
        let a = UnityClass::new(1, 4);
        let b = UnityClass::new(1, 6);
        assert_eq!((a + b).to_string(), "5/12");
        assert_eq!((a + a).order(), 2);
        assert_eq!(a + (-a), UnityClass::ONE);
    }

    #[test]
    fn roundtrip_string() {
        for s in ["0/1", "1/2", "5/12", "10/11"] {
            assert_eq!(s.parse::<UnityClass>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn ordering_is_by_value() {
        let mut v = vec![UnityClass::new(1, 2), UnityClass::new(1, 3), UnityClass::ONE];
        v.sort();
        assert_eq!(v, vec![UnityClass::ONE, UnityClass::new(1, 3), UnityClass::new(1, 2)]);
    }
}
