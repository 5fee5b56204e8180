//! Weil characters of GL_n(q) and GU_n(q), their spectra, torus constructors and
//! simple-spectrum oracles.

pub mod groups;
pub mod oracle;
pub mod tori;

use serde::{Deserialize, Serialize};

use crate::algebra::arith::{gcd, lcm, mobius, totient};
use crate::algebra::{Cyc, FqMat, UnityClass};
use crate::error::{Error, Result};
use crate::repkit::spectrum::{spectrum_from_traces, Spectrum};

pub use groups::{ClassicalGroup, Family};
pub use oracle::{
    alt_exhaustive_check, deleted_perm_spectrum, partitions, ss_enumerate, ss_exhaustive_check, ss_types,
    weil_identity_check, AltReport, IdentityReport, OracleReport, SsClass,
};
pub use tori::{singer_torus, sub_tori, TorusElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilCharSpec {
    pub family: Family,
    pub n: usize,
    pub q: u64,
    pub i: u64,
}

impl WeilCharSpec {
    pub fn new(family: Family, n: usize, q: u64, i: u64) -> Result<Self> {
        let top = match family {
            Family::Linear => q - 2,
            Family::Unitary => q,
        };
        if q < 2 || i > top {
            return Err(Error::Domain(format!("Weil index {i} out of range 0..={top} for q={q}")));
        }
        Ok(WeilCharSpec { family, n, q, i })
    }

    pub fn degree(&self) -> u64 {
        weil_degree(self.family, self.n, self.q, self.i)
    }
}

pub fn weil_degree(family: Family, n: usize, q: u64, i: u64) -> u64 {
    let qn = q.pow(n as u32);
    match family {
        Family::Linear if i == 0 => (qn - q) / (q - 1),
        Family::Linear => (qn - 1) / (q - 1),
        Family::Unitary => {
            let s: i64 = if n.is_multiple_of(2) { 1 } else { -1 };
            let qn = qn as i64;
            let q = q as i64;
            let d = if i == 0 { (qn + q * s) / (q + 1) } else { (qn - s) / (q + 1) };
            d as u64
        }
    }
}

/// `dim ker(g - r^k)` for `k = 0..count`.
fn kernel_dims(g: &FqMat, r: u16, count: u64) -> Vec<u32> {
    let k = g.field();
    let mut out = Vec::with_capacity(count as usize);
    let mut lam = 1;
    for _ in 0..count {
        out.push((g.n() - g.shift(lam).rank()) as u32);
        lam = k.mul(lam, r);
    }
    out
}

/// Weil value from the kernel-dimension profile of g.
fn value_from_dims(family: Family, n: usize, q: u64, i: u64, dims: &[u32]) -> Cyc {
    let c = dims.len() as u64;
    let mut v = vec![0i64; c as usize];
    let base: i64 = match family {
        Family::Linear => q as i64,
        Family::Unitary => -(q as i64),
    };
    for (k, &d) in dims.iter().enumerate() {
        v[((i * k as u64) % c) as usize] += base.pow(d);
    }
    match family {
        Family::Linear => {
            // C[V] restricted to the trivial scalar character holds two trivial constituents
            let x = Cyc::from_group_ring(c, &v, c as i64);
            if i == 0 {
                &x - &Cyc::int(2)
            } else {
                x
            }
        }
        Family::Unitary => {
            let sign = if n.is_multiple_of(2) { 1 } else { -1 };
            Cyc::from_group_ring(c, &v, sign * c as i64)
        }
    }
}

/// `tau^i_{n,q}(g)` for g in GL_n(q).
pub fn tau_value(n: usize, q: u64, i: u64, g: &FqMat) -> Result<Cyc> {
    let spec = WeilCharSpec::new(Family::Linear, n, q, i)?;
    weil_value(&spec, g)
}

/// `zeta^i_{n,q}(g)` for g in GU_n(q).
pub fn zeta_value(n: usize, q: u64, i: u64, g: &FqMat) -> Result<Cyc> {
    let spec = WeilCharSpec::new(Family::Unitary, n, q, i)?;
    weil_value(&spec, g)
}

pub fn weil_value(spec: &WeilCharSpec, g: &FqMat) -> Result<Cyc> {
    let grp = ClassicalGroup::new(spec.family, spec.n, spec.q)?;
    grp.check(g)?;
    let dims = kernel_dims(g, grp.scalar_root(), grp.scalar_count());
    Ok(value_from_dims(spec.family, spec.n, spec.q, spec.i, &dims))
}

/// Spectrum of g on the Weil module, by Fourier inversion of the values at the powers of g.
pub fn weil_spectrum(spec: &WeilCharSpec, g: &FqMat) -> Result<Spectrum> {
    let grp = ClassicalGroup::new(spec.family, spec.n, spec.q)?;
    grp.check(g)?;
    let o = g.order()?;
    let mut traces = Vec::with_capacity(o as usize);
    let mut x = FqMat::identity(g.field(), g.n());
    for _ in 0..o {
        let dims = kernel_dims(&x, grp.scalar_root(), grp.scalar_count());
        traces.push(value_from_dims(spec.family, spec.n, spec.q, spec.i, &dims));
        x = x.mul(g);
    }
    spectrum_from_traces(&traces)
}

/// Data of an element needed by the oracles: order, central order and the
/// kernel profile of every power.
#[derive(Clone, Debug)]
pub struct PowerProfile {
    pub order: u64,
    pub central_order: u64,
    /// `dims[j][k] = dim ker(g^j - r^k)`.
    pub dims: Vec<Vec<u32>>,
}

pub fn power_profile(grp: &ClassicalGroup, g: &FqMat) -> Result<PowerProfile> {
    let r = grp.scalar_root();
    let c = grp.scalar_count();
    let mut dims = vec![];
    let mut central = 0;
    let mut x = FqMat::identity(g.field(), g.n());
    loop {
        dims.push(kernel_dims(&x, r, c));
        x = x.mul(g);
        if central == 0 && x.as_scalar().is_some() {
            central = dims.len() as u64;
        }
        if x.is_identity() {
            break;
        }
        if dims.len() > 1 << 20 {
            return Err(Error::Singular);
        }
    }
    Ok(PowerProfile { order: dims.len() as u64, central_order: central, dims })
}

/// Spectra of g on all Weil modules at once.
///
/// The multiplicity of `(a/o, i)` is a sum over the abelian group `<g> x scalars` of a
/// Galois-invariant integer function against a character; averaging each term over its
/// Galois orbit replaces the root of unity of order e by `mu(e)/phi(e)`, so the sum is
/// computed in exact integers.
pub fn weil_spectra(grp: &ClassicalGroup, prof: &PowerProfile) -> Result<Vec<Spectrum>> {
    let o = prof.order;
    let c = grp.scalar_count();
    let q = grp.q() as i128;
    let l = lcm(o, c);
    let phi_l = totient(l) as i128;
    let weight: Vec<i128> = (0..l)
        .map(|r| {
            let e = l / gcd(r, l);
            mobius(e) as i128 * (phi_l / totient(e) as i128)
        })
        .collect();
    let base = match grp.family() {
        Family::Linear => q,
        Family::Unitary => -q,
    };
    let vals: Vec<Vec<i128>> =
        prof.dims.iter().map(|row| row.iter().map(|&d| base.pow(d)).collect()).collect();
    let (sl, ol) = (l / c, l / o);
    let mut out = Vec::with_capacity(c as usize);
    for i in 0..c {
        let mut s = Spectrum::new();
        for a in 0..o {
            let mut t: i128 = 0;
            for (j, row) in vals.iter().enumerate() {
                for (k, &v) in row.iter().enumerate() {
                    let r = (i * k as u64 % c * sl + l - (a * j as u64 % o) * ol) % l;
                    t += v * weight[r as usize];
                }
            }
            let den = o as i128 * c as i128 * phi_l;
            let (num, den) = match grp.family() {
                Family::Linear => (t - if i == 0 && a == 0 { 2 * den } else { 0 }, den),
                Family::Unitary => (if grp.n().is_multiple_of(2) { t } else { -t }, den),
            };
            if num % den != 0 || num < 0 {
                return Err(Error::NonIntegral(format!("multiplicity {num}/{den} at ({a}/{o}, i={i})")));
            }
            let m = (num / den) as u64;
            if m > 0 {
                s.insert(UnityClass::new(a as i64, o), m);
            }
        }
        out.push(s);
    }
    Ok(out)
}
