//! Eigenvalue multisets of finite-order elements.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::arith::lcm;
use crate::algebra::{Cyc, UnityClass};
use crate::error::{Error, Result};

/// Multiset of roots of unity; absent keys have multiplicity zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spectrum(BTreeMap<UnityClass, u64>);

impl Spectrum {
    pub fn new() -> Self {
        Spectrum(BTreeMap::new())
    }

    pub fn from_values<I: IntoIterator<Item = UnityClass>>(it: I) -> Self {
        let mut s = Spectrum::new();
        for u in it {
            s.insert(u, 1);
        }
        s
    }

    pub fn insert(&mut self, u: UnityClass, k: u64) {
        if k > 0 {
            *self.0.entry(u).or_insert(0) += k;
        }
    }

    /// Removes one copy of `u`; false if absent.
    pub fn remove_one(&mut self, u: UnityClass) -> bool {
        match self.0.get_mut(&u) {
            Some(c) if *c > 1 => {
                *c -= 1;
                true
            }
            Some(_) => {
                self.0.remove(&u);
                true
            }
            None => false,
        }
    }

    pub fn mult(&self, u: UnityClass) -> u64 {
        self.0.get(&u).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_simple(&self) -> bool {
        self.0.values().all(|&k| k == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (UnityClass, u64)> + '_ {
        self.0.iter().map(|(&u, &k)| (u, k))
    }

    /// Eigenvalues listed with multiplicity, in increasing order.
    pub fn values(&self) -> Vec<UnityClass> {
        self.iter().flat_map(|(u, k)| std::iter::repeat_n(u, k as usize)).collect()
    }

    pub fn max_mult(&self) -> u64 {
        self.0.values().copied().max().unwrap_or(0)
    }

    /// Spectrum of the k-th power.
    pub fn pushforward(&self, k: i64) -> Spectrum {
        let mut s = Spectrum::new();
        for (u, m) in self.iter() {
            s.insert(u.scale(k), m);
        }
        s
    }

    pub fn rotate(&self, t: UnityClass) -> Spectrum {
        let mut s = Spectrum::new();
        for (u, m) in self.iter() {
            s.insert(u + t, m);
        }
        s
    }

    /// Least rotation (lexicographic on the sorted eigenvalue list) over all rotations
    /// bringing some eigenvalue to 1.
    pub fn canonical_rotation(&self) -> Spectrum {
        self.0
            .keys()
            .map(|&u| self.rotate(-u))
            .min_by(|a, b| a.values().cmp(&b.values()))
            .unwrap_or_default()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (u, k)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}: {k}")?;
        }
        write!(f, "}}")
    }
}

pub fn simple_spectrum(s: &Spectrum) -> bool {
    s.is_simple()
}

/// Fourier sum `sum_j t_j * theta^(-j)` for `theta = a/o`, with `traces[j] = tr(g^j)`.
pub fn fourier_coefficient(traces: &[Cyc], a: u64) -> Cyc {
    let o = traces.len() as u64;
    let l = traces.iter().fold(o, |acc, t| lcm(acc, t.conductor()));
    let lifted: Vec<Cyc> = traces.iter().map(|t| t.lift(l)).collect();
    let den = lifted.iter().fold(1u64, |acc, t| lcm(acc, t.denom() as u64)) as i64;
    let lu = l as usize;
    let mut acc = vec![0i64; lu];
    let step = (l / o) as usize;
    for (j, t) in lifted.iter().enumerate() {
        let f = den / t.denom();
        let shift = (a as usize * j * step) % lu;
        for (k, &c) in t.coeffs().iter().enumerate() {
            if c != 0 {
                acc[(k + lu - shift) % lu] += c * f;
            }
        }
    }
    Cyc::from_group_ring(l, &acc, den)
}

/// Spectrum of an element of order `traces.len()` from the traces of its powers.
pub fn spectrum_from_traces(traces: &[Cyc]) -> Result<Spectrum> {
    let o = traces.len() as u64;
    if o == 0 {
        return Err(Error::Domain("empty trace list".into()));
    }
    let mut s = Spectrum::new();
    for a in 0..o {
        let c = fourier_coefficient(traces, a).div_int(o as i64);
        match c.as_integer() {
            Some(k) if k >= 0 => s.insert(UnityClass::new(a as i64, o), k as u64),
            _ => {
                return Err(Error::NonIntegral(format!(
                    "multiplicity of {} is {}",
                    UnityClass::new(a as i64, o),
                    c
                )))
            }
        }
    }
    Ok(s)
}
