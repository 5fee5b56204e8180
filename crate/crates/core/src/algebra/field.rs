//! Finite fields F_q with q = p^f, elements encoded as base-p digit integers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::arith::{factorize, is_prime, prime_divisors};
use crate::error::{Error, Result};

/// Field element: the integer whose base-p digits are the polynomial-basis coordinates.
pub type Fq = u16;

const MAX_Q: u64 = 1 << 16;
const ADD_TABLE_MAX: u32 = 256;

pub struct FieldSpec {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Option<Vec<Fq>>,
    exp: Vec<Fq>,
    log: Vec<u32>,
    delta: Fq,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<FieldSpec>>> {
    static C: OnceLock<Mutex<HashMap<(u32, u32), Arc<FieldSpec>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The field with p^f elements (cached; one instance per (p, f)).
pub fn field(p: u64, f: u32) -> Result<Arc<FieldSpec>> {
    if !is_prime(p) || f == 0 {
        return Err(Error::Domain(format!("no field F_{p}^{f}")));
    }
    let q = (p as u128).pow(f);
    if q >= MAX_Q as u128 {
        return Err(Error::Domain(format!("field size {q} above supported limit")));
    }
    let key = (p as u32, f);
    if let Some(k) = field_cache().lock().unwrap().get(&key) {
        return Ok(k.clone());
    }
    let fs = Arc::new(FieldSpec::build(p as u32, f));
    field_cache().lock().unwrap().insert(key, fs.clone());
    Ok(fs)
}

/// The field of order q (a prime power).
pub fn field_of_order(q: u64) -> Result<Arc<FieldSpec>> {
    let fac = factorize(q);
    if fac.len() != 1 {
        return Err(Error::Domain(format!("{q} is not a prime power")));
    }
    field(fac[0].0, fac[0].1)
}

// Polynomials over F_p, low to high, used only during construction.
fn pp_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn pp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    pp_rem(r, m, p)
}

fn pp_rem(mut r: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let d = m.len() - 1;
    if d == 0 {
        return vec![0];
    }
    let lead_inv = inv_mod(m[d], p);
    pp_trim(&mut r);
    while r.len() > d {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        for j in 0..=d {
            r[k - d + j] = (r[k - d + j] + p - c * m[j] % p) % p;
        }
        pp_trim(&mut r);
    }
    r
}

fn pp_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    pp_trim(&mut a);
    pp_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = pp_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    super::arith::pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

fn pp_pow_x(e: u128, m: &[u32], p: u32) -> Vec<u32> {
    let mut r = vec![1u32];
    let mut b = pp_rem(vec![0, 1], m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = pp_mulmod(&r, &b, m, p);
        }
        b = pp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn pp_irreducible(m: &[u32], p: u32) -> bool {
    let f = (m.len() - 1) as u32;
    if f == 1 {
        return true;
    }
    let xq = pp_pow_x((p as u128).pow(f), m, p);
    if pp_trim_clone(xq) != vec![0, 1] {
        return false;
    }
    for r in prime_divisors(f as u64) {
        let mut h = pp_pow_x((p as u128).pow(f / r as u32), m, p);
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        let g = pp_gcd(m, &h, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn pp_trim_clone(mut a: Vec<u32>) -> Vec<u32> {
    pp_trim(&mut a);
    a
}

impl FieldSpec {
    fn build(p: u32, f: u32) -> FieldSpec {
        let q = p.pow(f);
        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|c| {
                    let mut m: Vec<u32> = (0..f).map(|i| c / p.pow(i) % p).collect();
                    m.push(1);
                    m
                })
                .find(|m| m[0] != 0 && pp_irreducible(m, p))
                .expect("an irreducible polynomial exists")
        };
        let decode = |a: u32| -> Vec<u32> { (0..f).map(|i| a / p.pow(i) % p).collect() };
        let encode = |v: &[u32]| -> u32 { v.iter().enumerate().map(|(i, &d)| d * p.pow(i as u32)).sum() };
        let mut found = None;
        for cand in 1..q {
            let cv = decode(cand);
            let mut exp = vec![1u32];
            let mut cur = vec![1u32];
            loop {
                cur = pp_mulmod(&cur, &cv, &modulus, p);
                let e = encode(&cur);
                if e == 1 {
                    break;
                }
                exp.push(e);
            }
            if exp.len() as u32 == q - 1 {
                found = Some((cand, exp));
                break;
            }
        }
        let (delta, exp_u32) = found.expect("multiplicative group is cyclic");
        let exp: Vec<Fq> = exp_u32.iter().map(|&e| e as Fq).collect();
        let mut log = vec![u32::MAX; q as usize];
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        let mut fs = FieldSpec { p, f, q, modulus, add: None, exp, log, delta: delta as Fq };
        if q <= ADD_TABLE_MAX {
            let mut t = vec![0 as Fq; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = fs.add_digits(a as Fq, b as Fq);
                }
            }
            fs.add = Some(t);
        }
        fs
    }

    fn add_digits(&self, a: Fq, b: Fq) -> Fq {
        if self.f == 1 {
            return ((a as u32 + b as u32) % self.p) as Fq;
        }
        let (mut a, mut b) = (a as u32, b as u32);
        let mut r = 0u32;
        let mut w = 1u32;
        for _ in 0..self.f {
            r += ((a % self.p + b % self.p) % self.p) * w;
            a /= self.p;
            b /= self.p;
            w *= self.p;
        }
        r as Fq
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    pub fn q(&self) -> u64 {
        self.q as u64
    }
    /// Defining polynomial over F_p, low to high, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The least primitive element.
    pub fn delta(&self) -> Fq {
        self.delta
    }
    pub fn contains(&self, a: u64) -> bool {
        a < self.q as u64
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        match &self.add {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.p == 2 {
            return a;
        }
        let mut x = a as u32;
        let mut r = 0u32;
        let mut w = 1u32;
        for _ in 0..self.f {
            r += ((self.p - x % self.p) % self.p) * w;
            x /= self.p;
            w *= self.p;
        }
        r as Fq
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % (self.q - 1)) as usize]
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a == 0 {
            return Err(Error::Singular);
        }
        let l = self.log[a as usize];
        Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (e % (self.q as u64 - 1));
        self.exp[(l % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log base `delta`; `None` at zero.
    pub fn log(&self, a: Fq) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn exp(&self, k: i64) -> Fq {
        self.exp[k.rem_euclid(self.q as i64 - 1) as usize]
    }

    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.p as i64) as Fq
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q as Fq
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fq) -> u64 {
        let l = self.log[a as usize] as u64;
        (self.q as u64 - 1) / super::arith::gcd(l, self.q as u64 - 1)
    }

    /// Polynomial-basis string, highest power first, e.g. `x^2+2x+1`.
    pub fn fmt_elem(&self, a: Fq) -> String {
        if self.f == 1 {
            return a.to_string();
        }
        let mut parts = vec![];
        for i in (0..self.f).rev() {
            let c = a as u32 / self.p.pow(i) % self.p;
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            parts.push(match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<Fq> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad F_{} element {s:?}", self.q));
        if self.f == 1 {
            let v: i64 = s.parse().map_err(|_| bad())?;
            return Ok(self.from_int(v));
        }
        let mut acc: Fq = 0;
        for term in s.split('+') {
            let term = term.trim();
            let (c, i) = match term.find('x') {
                None => (term.parse::<u32>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = if pos == 0 { 1 } else { term[..pos].parse::<u32>().map_err(|_| bad())? };
                    let rest = &term[pos + 1..];
                    let i = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?
                    };
                    (c, i)
                }
            };
            if i >= self.f {
                return Err(bad());
            }
            acc = self.add(acc, ((c % self.p) * self.p.pow(i)) as Fq);
        }
        Ok(acc)
    }
}

/// Polynomials over a [`FieldSpec`], low to high with no trailing zeros (zero is empty).
pub mod poly {
    use super::{FieldSpec, Fq};

    pub fn trim(a: &mut Vec<Fq>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(k: &FieldSpec, a: &[Fq], m: &[Fq]) -> Vec<Fq> {
        let mut r = a.to_vec();
        trim(&mut r);
        let d = m.len() - 1;
        let li = k.inv(m[d]).expect("nonzero leading coefficient");
        while r.len() > d {
            let top = r.len() - 1;
            let c = k.mul(r[top], li);
            for j in 0..=d {
                r[top - d + j] = k.sub(r[top - d + j], k.mul(c, m[j]));
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(k: &FieldSpec, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut r = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = k.add(r[i + j], k.mul(x, y));
            }
        }
        trim(&mut r);
        r
    }

    pub fn mulmod(k: &FieldSpec, a: &[Fq], b: &[Fq], m: &[Fq]) -> Vec<Fq> {
        rem(k, &mul(k, a, b), m)
    }

    pub fn powmod(k: &FieldSpec, a: &[Fq], mut e: u128, m: &[Fq]) -> Vec<Fq> {
        let mut r = vec![1];
        let mut b = rem(k, a, m);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(k, &r, &b, m);
            }
            b = mulmod(k, &b, &b, m);
            e >>= 1;
        }
        rem(k, &r, m)
    }

    pub fn gcd(k: &FieldSpec, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(k, &a, &b);
            a = b;
            b = r;
        }
        if let Some(&l) = a.last() {
            let li = k.inv(l).unwrap();
            a.iter_mut().for_each(|c| *c = k.mul(*c, li));
        }
        a
    }

    /// Rabin's irreducibility test for a monic polynomial of degree >= 1.
    pub fn is_irreducible(k: &FieldSpec, m: &[Fq]) -> bool {
        let n = (m.len() - 1) as u32;
        if n == 1 {
            return true;
        }
        let q = k.q() as u128;
        let x = vec![0, 1];
        if powmod(k, &x, q.pow(n), m) != x {
            return false;
        }
        for r in crate::algebra::arith::prime_divisors(n as u64) {
            let mut h = powmod(k, &x, q.pow(n / r as u32), m);
            h.resize(h.len().max(2), 0);
            h[1] = k.sub(h[1], 1);
            trim(&mut h);
            if gcd(k, m, &h).len() > 1 {
                return false;
            }
        }
        true
    }

    /// Monic polynomials of degree n over k, in increasing encoding order.
    pub fn monic_iter(k: &FieldSpec, n: u32) -> impl Iterator<Item = Vec<Fq>> + '_ {
        let q = k.q();
        (0..q.pow(n)).map(move |c| {
            let mut v: Vec<Fq> = (0..n).map(|i| (c / q.pow(i) % q) as Fq).collect();
            v.push(1);
            v
        })
    }

    /// Order of x modulo the irreducible m (i.e. the order of a root).
    pub fn root_order(k: &FieldSpec, m: &[Fq]) -> u128 {
        let n = (m.len() - 1) as u32;
        let big = (k.q() as u128).pow(n) - 1;
        let mut ord = big;
        let x = vec![0, 1];
        for (r, _) in crate::algebra::arith::factorize(big as u64) {
            let r = r as u128;
            while ord.is_multiple_of(r) && powmod(k, &x, ord / r, m) == vec![1] {
                ord /= r;
            }
        }
        ord
    }
}
