//! Exact elements of the cyclotomic field Q(zeta_M) in the power basis modulo Phi_M.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::arith::{divisors, gcd, lcm, totient};
use super::unity::UnityClass;
use crate::error::{Error, Result};

fn poly_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low to high) of the m-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u64) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        num = exact_div(&num, &phi_d);
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(m, p.clone());
    p
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qn = num.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduces a group-ring vector (index = exponent of zeta_m) to the power basis mod Phi_m.
fn reduce(m: u64, coeffs: &[i64]) -> Vec<i64> {
    let mu = m as usize;
    let mut folded = vec![0i64; mu];
    for (k, &c) in coeffs.iter().enumerate() {
        folded[k % mu] += c;
    }
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    for k in (deg..mu).rev() {
        let c = folded[k];
        if c != 0 {
            folded[k] = 0;
            for j in 0..deg {
                folded[k - deg + j] -= c * phi[j];
            }
        }
    }
    folded.truncate(deg);
    folded
}

/// An exact cyclotomic number `(sum num[k] zeta_m^k) / den`.
#[derive(Clone, Debug)]
pub struct Cyc {
    m: u64,
    num: Vec<i64>,
    den: i64,
}

impl Cyc {
    fn normalize(m: u64, mut num: Vec<i64>, mut den: i64) -> Cyc {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|c| *c = -*c);
        }
        let g = num
            .iter()
            .fold(den.unsigned_abs(), |acc, &c| gcd(acc, c.unsigned_abs()));
        if g > 1 {
            let g = g as i64;
            num.iter_mut().for_each(|c| *c /= g);
            den /= g;
        }
        if num.iter().all(|&c| c == 0) {
            den = 1;
        }
        Cyc { m, num, den }
    }

    pub fn from_group_ring(m: u64, coeffs: &[i64], den: i64) -> Cyc {
        assert!(m > 0);
        Cyc::normalize(m, reduce(m, coeffs), den)
    }

    pub fn zero() -> Cyc {
        Cyc { m: 1, num: vec![0], den: 1 }
    }

    pub fn int(n: i64) -> Cyc {
        Cyc { m: 1, num: vec![n], den: 1 }
    }

    pub fn rational(a: i64, b: i64) -> Cyc {
        Cyc::normalize(1, vec![a], b)
    }

    /// The root of unity `exp(2 pi i u)`, at the conductor `den(u)`.
    pub fn root(u: UnityClass) -> Cyc {
        Cyc::root_at(u, u.den())
    }

    pub fn root_at(u: UnityClass, m: u64) -> Cyc {
        assert!(m.is_multiple_of(u.den()), "conductor {} does not contain order {}", m, u.den());
        let mut v = vec![0i64; m as usize];
        v[u.at(m) as usize] = 1;
        Cyc::from_group_ring(m, &v, 1)
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    /// Re-expresses the value at a multiple `m2` of the conductor.
    pub fn lift(&self, m2: u64) -> Cyc {
        if m2 == self.m {
            return self.clone();
        }
        assert!(m2.is_multiple_of(self.m), "cannot lift conductor {} to {}", self.m, m2);
        let step = (m2 / self.m) as usize;
        let mut v = vec![0i64; m2 as usize];
        for (k, &c) in self.num.iter().enumerate() {
            v[k * step] += c;
        }
        Cyc { m: m2, num: reduce(m2, &v), den: self.den }
    }

    fn common(&self, o: &Cyc) -> (Cyc, Cyc) {
        let m = lcm(self.m, o.m);
        (self.lift(m), o.lift(m))
    }

    /// Applies the Galois automorphism zeta -> zeta^a (a prime to the conductor).
    pub fn galois(&self, a: i64) -> Cyc {
        let m = self.m as i64;
        assert_eq!(gcd(a.rem_euclid(m) as u64, self.m), 1, "Galois exponent must be a unit");
        let mut v = vec![0i64; self.m as usize];
        for (k, &c) in self.num.iter().enumerate() {
            v[((k as i64) * a).rem_euclid(m) as usize] += c;
        }
        Cyc::from_group_ring(self.m, &v, self.den)
    }

    /// Complex conjugation, the Galois map zeta -> zeta^{-1}.
    pub fn conj(&self) -> Cyc {
        self.galois(-1)
    }

    pub fn abs2(&self) -> Cyc {
        self * &self.conj()
    }

    /// Numerical value under the embedding `zeta_m -> exp(2 pi i / m)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let (mut re, mut im) = (0.0, 0.0);
        for (k, &c) in self.num.iter().enumerate() {
            let t = std::f64::consts::TAU * k as f64 / self.m as f64;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        (re / self.den as f64, im / self.den as f64)
    }

    pub fn abs(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }

    pub fn mul_root(&self, u: UnityClass) -> Cyc {
        let m = lcm(self.m, u.den());
        let x = self.lift(m);
        let s = u.at(m) as usize;
        let mu = m as usize;
        let mut v = vec![0i64; mu];
        for (k, &c) in x.num.iter().enumerate() {
            v[(k + s) % mu] += c;
        }
        Cyc::from_group_ring(m, &v, x.den)
    }

    pub fn scale(&self, k: i64) -> Cyc {
        Cyc::normalize(self.m, self.num.iter().map(|c| c * k).collect(), self.den)
    }

    pub fn div_int(&self, k: i64) -> Cyc {
        Cyc::normalize(self.m, self.num.clone(), self.den * k)
    }

    pub fn pow(&self, mut e: u32) -> Cyc {
        let mut r = Cyc::int(1);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        r
    }

    /// `Some((a, b))` when the value is the rational number `a/b`.
    pub fn as_rational(&self) -> Option<(i64, i64)> {
        self.num[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some((self.num[0], self.den))
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self.as_rational() {
            Some((a, 1)) => Some(a),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_integer() == Some(1)
    }

    /// `Some(u)` when the value is the root of unity `u`.
    pub fn as_root_of_unity(&self) -> Option<UnityClass> {
        if self.den != 1 {
            return None;
        }
        let m2 = if self.m % 2 == 1 { 2 * self.m } else { self.m };
        (0..m2).map(|k| UnityClass::new(k as i64, m2)).find(|&u| Cyc::root_at(u, m2) == *self)
    }

    /// sqrt(p) for a prime p, realized by a quadratic Gauss sum.
    pub fn sqrt_prime(p: u64) -> Cyc {
        if p == 2 {
            return &Cyc::root(UnityClass::new(1, 8)) + &Cyc::root(UnityClass::new(7, 8));
        }
        let mut v = vec![0i64; p as usize];
        for x in 1..p {
            v[x as usize] = legendre(x, p);
        }
        let g = Cyc::from_group_ring(p, &v, 1);
        if p % 4 == 1 {
            g
        } else {
            -&g.mul_root(UnityClass::new(1, 4))
        }
    }

    /// sqrt(p^d) for a prime p.
    pub fn sqrt_prime_power(p: u64, d: u32) -> Cyc {
        let base = Cyc::int((p as i64).pow(d / 2));
        if d.is_multiple_of(2) {
            base
        } else {
            &base * &Cyc::sqrt_prime(p)
        }
    }
}

fn legendre(a: u64, p: u64) -> i64 {
    match super::arith::pow_mod(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

impl PartialEq for Cyc {
    fn eq(&self, o: &Cyc) -> bool {
        if self.m == o.m {
            return self.den == o.den && self.num == o.num;
        }
        let (a, b) = self.common(o);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyc {}

impl Add for &Cyc {
    type Output = Cyc;
    fn add(self, o: &Cyc) -> Cyc {
        let (a, b) = self.common(o);
        let d = lcm(a.den as u64, b.den as u64) as i64;
        let (fa, fb) = (d / a.den, d / b.den);
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * fa + y * fb).collect();
        Cyc::normalize(a.m, num, d)
    }
}

impl Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, o: &Cyc) -> Cyc {
        self + &(-o)
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { m: self.m, num: self.num.iter().map(|c| -c).collect(), den: self.den }
    }
}

impl Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, o: &Cyc) -> Cyc {
        let (a, b) = self.common(o);
        let n = a.num.len();
        let mut v = vec![0i64; 2 * n];
        for (i, &x) in a.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.num.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        Cyc::normalize(a.m, reduce(a.m, &v), a.den * b.den)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for Cyc {
            type Output = Cyc;
            fn $f(self, o: Cyc) -> Cyc {
                (&self).$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((a, b)) = self.as_rational() {
            return if b == 1 { write!(f, "{a}") } else { write!(f, "{a}/{b}") };
        }
        let mut first = true;
        write!(f, "(")?;
        for (k, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if c > 0 { " + " } else { " - " })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "z{}^{}", self.m, k)?,
                _ => write!(f, "{a}*z{}^{}", self.m, k)?,
            }
        }
        write!(f, ")")?;
        if self.den != 1 {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

impl Serialize for Cyc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if let Some(n) = self.as_integer() {
            return s.serialize_i64(n);
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("conductor", &self.m)?;
        if self.den == 1 {
            map.serialize_entry("coeffs", &self.num)?;
        } else {
            let cs: Vec<String> = self
                .num
                .iter()
                .map(|&c| {
                    let g = gcd(c.unsigned_abs(), self.den as u64) as i64;
                    if c == 0 {
                        "0".to_string()
                    } else if self.den / g == 1 {
                        (c / g).to_string()
                    } else {
                        format!("{}/{}", c / g, self.den / g)
                    }
                })
                .collect();
            map.serialize_entry("coeffs", &cs)?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffLit {
    Int(i64),
    Str(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CycLit {
    Int(i64),
    Full { conductor: u64, coeffs: Vec<CoeffLit> },
}

fn parse_coeff(c: &CoeffLit) -> Result<(i64, i64)> {
    match c {
        CoeffLit::Int(n) => Ok((*n, 1)),
        CoeffLit::Str(s) => match s.split_once('/') {
            Some((a, b)) => {
                let a = a.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
                let b: i64 = b.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
                if b == 0 {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok((a, b))
            }
            None => Ok((s.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?, 1)),
        },
    }
}

impl Cyc {
    /// Parses the JSON cyclotomic literal: an integer or `{"conductor": M, "coeffs": [...]}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Cyc> {
        let lit: CycLit = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        lit_to_cyc(lit)
    }
}

fn lit_to_cyc(lit: CycLit) -> Result<Cyc> {
    match lit {
        CycLit::Int(n) => Ok(Cyc::int(n)),
        CycLit::Full { conductor, coeffs } => {
            if conductor == 0 {
                return Err(Error::Parse("conductor must be positive".into()));
            }
            let parsed = coeffs.iter().map(parse_coeff).collect::<Result<Vec<_>>>()?;
            let den = parsed.iter().fold(1u64, |acc, &(_, b)| lcm(acc, b.unsigned_abs())) as i64;
            let ints: Vec<i64> = parsed.iter().map(|&(a, b)| a * (den / b)).collect();
            Ok(Cyc::from_group_ring(conductor, &ints, den))
        }
    }
}

impl<'de> Deserialize<'de> for Cyc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = CycLit::deserialize(d)?;
        lit_to_cyc(lit).map_err(de::Error::custom)
    }
}

/// Degree of Q(zeta_m) over Q.
pub fn field_degree(m: u64) -> u64 {
    totient(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(a: i64, n: u64) -> Cyc {
        Cyc::root(UnityClass::new(a, n))
    }

    #[test]
    fn small_identities() {
        assert_eq!(z(2, 4), Cyc::int(-1));
        assert_eq!((&Cyc::int(1) + &z(1, 3)).abs2(), Cyc::int(1));
        assert_eq!(z(1, 5).conj(), z(4, 5));
        let s: Cyc = (0..7).fold(Cyc::zero(), |acc, k| &acc + &z(k, 7));
        assert_eq!(s, Cyc::zero());
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(105).len() - 1, 48);
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn lifting_preserves_value() {
        let x = &z(1, 3) + &Cyc::rational(1, 2);
        assert_eq!(x.lift(12), x);
        assert_eq!(&x.lift(12) - &x, Cyc::zero());
    }

    #[test]
    fn gauss_sums_square_to_primes() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let s = Cyc::sqrt_prime(p);
            assert_eq!(&s * &s, Cyc::int(p as i64), "p={p}");
            assert_eq!(s.conj(), s, "sqrt(p) is real");
        }
        let s = Cyc::sqrt_prime_power(3, 3);
        assert_eq!(&s * &s, Cyc::int(27));
    }

    #[test]
    fn root_detection() {
        assert_eq!(z(3, 10).as_root_of_unity(), Some(UnityClass::new(3, 10)));
        assert_eq!((-&z(1, 3)).as_root_of_unity(), Some(UnityClass::new(5, 6)));
        assert_eq!(Cyc::int(2).as_root_of_unity(), None);
    }

    #[test]
    fn json_literals() {
        let v: serde_json::Value = serde_json::json!({"conductor": 3, "coeffs": [0, 1]});
        assert_eq!(Cyc::from_json(&v).unwrap(), z(1, 3));
        assert_eq!(Cyc::from_json(&serde_json::json!(-4)).unwrap(), Cyc::int(-4));
        let s = serde_json::to_string(&z(1, 4)).unwrap();
        assert_eq!(s, r#"{"conductor":4,"coeffs":[0,1]}"#);
        let back: Cyc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z(1, 4));
        let half = Cyc::rational(1, 2).mul_root(UnityClass::new(1, 3));
        let back: Cyc = serde_json::from_str(&serde_json::to_string(&half).unwrap()).unwrap();
        assert_eq!(back, half);
    }
}
