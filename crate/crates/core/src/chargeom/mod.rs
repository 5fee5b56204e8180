//! Hypergeometric descriptors and their local-monodromy arithmetic.

pub mod dsl;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use dsl::{char_all, char_units, parse_charset, parse_expr, CharSetExpr};

use crate::algebra::arith::{gcd, is_prime, mult_order};
use crate::algebra::UnityClass;
use crate::error::{Error, Result};
use crate::repkit::Spectrum;

/// Characteristic plus upstairs (at 0) and downstairs (tame at infinity) character multisets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypDescriptor {
    p: u64,
    up: Vec<UnityClass>,
    down: Vec<UnityClass>,
    up_src: Vec<String>,
    down_src: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ExprField {
    One(String),
    Many(Vec<String>),
}

impl ExprField {
    fn into_vec(self) -> Vec<String> {
        match self {
            ExprField::One(s) => vec![s],
            ExprField::Many(v) => v,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DescriptorJson {
    p: u64,
    upstairs: ExprField,
    #[serde(default = "empty_field")]
    downstairs: ExprField,
}

fn empty_field() -> ExprField {
    ExprField::Many(vec![])
}

fn eval_all(src: &[String]) -> Result<Vec<UnityClass>> {
    let mut v = vec![];
    for s in src {
        v.extend(parse_charset(s)?);
    }
    v.sort();
    Ok(v)
}

impl HypDescriptor {
    /// Validates in order: overlap, wild (p-divisible) orders, then D > m.
    pub fn new(p: u64, up: Vec<UnityClass>, down: Vec<UnityClass>) -> Result<HypDescriptor> {
        let up_src = up.iter().map(|u| u.to_string()).collect();
        let down_src = down.iter().map(|u| u.to_string()).collect();
        Self::build(p, up, down, up_src, down_src)
    }

    /// Builds from character-set expressions, keeping them for serialization.
    pub fn from_exprs(p: u64, up: &[&str], down: &[&str]) -> Result<HypDescriptor> {
        let up_src: Vec<String> = up.iter().map(|s| s.to_string()).collect();
        let down_src: Vec<String> = down.iter().map(|s| s.to_string()).collect();
        Self::build(p, eval_all(&up_src)?, eval_all(&down_src)?, up_src, down_src)
    }

    fn build(
        p: u64,
        mut up: Vec<UnityClass>,
        mut down: Vec<UnityClass>,
        up_src: Vec<String>,
        down_src: Vec<String>,
    ) -> Result<HypDescriptor> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("p={p} is not prime")));
        }
        up.sort();
        down.sort();
        let su: BTreeSet<_> = up.iter().collect();
        let common: Vec<String> = down.iter().filter(|u| su.contains(u)).map(|u| u.to_string()).collect();
        if !common.is_empty() {
            let mut common = common;
            common.dedup();
            return Err(Error::Overlap(common.join(", ")));
        }
        if let Some(u) = up.iter().chain(&down).find(|u| u.den() % p == 0) {
            return Err(Error::WildOrder(u.to_string(), p));
        }
        if up.len() <= down.len() {
            return Err(Error::Type(up.len(), down.len()));
        }
        Ok(HypDescriptor { p, up, down, up_src, down_src })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<HypDescriptor> {
        let d: DescriptorJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let up = d.upstairs.into_vec();
        let down = d.downstairs.into_vec();
        Self::build(d.p, eval_all(&up)?, eval_all(&down)?, up, down)
    }

    pub fn from_json_str(s: &str) -> Result<HypDescriptor> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({"p": self.p, "upstairs": self.up_src, "downstairs": self.down_src})
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn d(&self) -> usize {
        self.up.len()
    }
    pub fn m(&self) -> usize {
        self.down.len()
    }
    pub fn w(&self) -> usize {
        self.d() - self.m()
    }
    pub fn upstairs(&self) -> &[UnityClass] {
        &self.up
    }
    pub fn downstairs(&self) -> &[UnityClass] {
        &self.down
    }
    pub fn upstairs_exprs(&self) -> &[String] {
        &self.up_src
    }
    pub fn downstairs_exprs(&self) -> &[String] {
        &self.down_src
    }
    pub fn is_kloosterman(&self) -> bool {
        self.down.is_empty()
    }

    /// Largest slope at infinity as `(1, W)`.
    pub fn max_slope(&self) -> (u64, u64) {
        (1, self.w() as u64)
    }

    pub fn swan_infinity(&self) -> u64 {
        1
    }

    /// Least d >= 2 prime to p, dividing D (and m when m > 0), with both multisets stable under `+1/d`.
    pub fn kummer_induced(&self) -> Option<u64> {
        let (d, m) = (self.d() as u64, self.m() as u64);
        (2..=d).find(|&k| {
            d % k == 0
                && !self.p.is_multiple_of(k)
                && gcd(k, self.p) == 1
                && (m == 0 || m % k == 0)
                && stable_under(&self.up, UnityClass::new(1, k))
                && stable_under(&self.down, UnityClass::new(1, k))
        })
    }

    /// Determinant character: the sum of the upstairs characters.
    pub fn determinant_char(&self) -> UnityClass {
        self.up.iter().fold(UnityClass::ONE, |a, &b| a + b)
    }

    /// `p^k` with `k = ord_W(p)`, or `None` when p divides W.
    pub fn wild_image_order(&self) -> Option<u64> {
        let w = self.w() as u64;
        if w.is_multiple_of(self.p) {
            return None;
        }
        let k = mult_order(self.p, w).ok()?;
        self.p.checked_pow(k as u32)
    }

    pub fn i0_spectrum(&self) -> Spectrum {
        let mut s = Spectrum::new();
        for &u in &self.up {
            s.insert(u, 1);
        }
        s
    }

    pub fn i0_simple(&self) -> bool {
        self.up.windows(2).all(|w| w[0] != w[1])
    }

    /// All characters have order dividing q - 1.
    pub fn definable_over(&self, q: u64) -> bool {
        q >= 2 && self.up.iter().chain(&self.down).all(|u| (q - 1).is_multiple_of(u.den()))
    }

    pub fn belyi_wild_obstruction(&self) -> Result<BelyiObstruction> {
        if self.m() == 0 {
            return Err(Error::Domain("Belyi obstruction needs m > 0".into()));
        }
        Ok(belyi_candidates(self.p, self.w() as u64))
    }
}

fn stable_under(v: &[UnityClass], t: UnityClass) -> bool {
    let mut s: Vec<UnityClass> = v.iter().map(|&u| u + t).collect();
    s.sort();
    s == v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "witnesses")]
pub enum BelyiObstruction {
    Impossible,
    /// Factorizations `W = d0 (p^r - 1)` with p not dividing d0, sorted by r.
    Candidate(Vec<(u64, u32)>),
}

/// The wild-dimension necessary condition for Belyi induction.
pub fn belyi_candidates(p: u64, w: u64) -> BelyiObstruction {
    let mut out = vec![];
    let mut r = 1u32;
    while let Some(pr) = p.checked_pow(r) {
        let f = pr - 1;
        if f > w {
            break;
        }
        if w.is_multiple_of(f) && !(w / f).is_multiple_of(p) {
            out.push((w / f, r));
        }
        r += 1;
    }
    if out.is_empty() {
        BelyiObstruction::Impossible
    } else {
        BelyiObstruction::Candidate(out)
    }
}
