//! Explicit generators of the cyclic tori appearing in the simple-spectrum classification.

use std::sync::Arc;

use serde::Serialize;

use super::groups::{antidiagonal, invariant_form, standard_frame, ClassicalGroup, Family};
use crate::algebra::arith::gcd;
use crate::algebra::field::poly;
use crate::algebra::{FieldSpec, Fq, FqMat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct TorusElement {
    pub family: Family,
    pub n: usize,
    pub q: u64,
    pub label: String,
    #[serde(serialize_with = "ser_rows")]
    pub matrix: FqMat,
    pub order: u64,
    pub central_order: u64,
}

fn ser_rows<S: serde::Serializer>(m: &FqMat, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.rows_str().serialize(s)
}

impl TorusElement {
    fn new(grp: &ClassicalGroup, label: String, matrix: FqMat) -> Result<Self> {
        if !grp.contains(&matrix) {
            return Err(Error::Domain(format!("torus generator {label} is not in {}", grp.label())));
        }
        Ok(TorusElement {
            family: grp.family(),
            n: grp.n(),
            q: grp.q(),
            label,
            order: matrix.order()?,
            central_order: matrix.central_order(),
            matrix,
        })
    }
}

/// First monic irreducible polynomial of degree `d` whose roots have order `ord`.
pub(crate) fn poly_with_root_order(k: &FieldSpec, d: u32, ord: u128) -> Result<Vec<Fq>> {
    poly::monic_iter(k, d)
        .filter(|m| m[0] != 0)
        .find(|m| poly::is_irreducible(k, m) && poly::root_order(k, m) == ord)
        .ok_or_else(|| Error::Domain(format!("no element of order {ord} in degree {d} over F_{}", k.q())))
}

/// Companion matrix of the least primitive polynomial of degree d.
pub fn primitive_companion(k: &Arc<FieldSpec>, d: u32) -> Result<FqMat> {
    let m = poly_with_root_order(k, d, (k.q() as u128).pow(d) - 1)?;
    Ok(FqMat::companion(k, &m))
}

/// Generator of the cyclic torus of order q^m + 1 in GU_m(q), m odd, with the form it preserves.
fn odd_unitary_block(k2: &Arc<FieldSpec>, q: u64, m: u32) -> Result<(FqMat, FqMat)> {
    let f = poly_with_root_order(k2, m, q.pow(m) as u128 + 1)?;
    let c = FqMat::companion(k2, &f);
    let b = invariant_form(&c, q, |m| m.transpose().map_pow(q) == *m)?;
    Ok((c, b))
}

/// Levi embedding of `a` in GL_h(q^2) into GU_n(q) for the anti-diagonal form, with
/// `mid` on the middle coordinate when n is odd.
fn levi(a: &FqMat, mid: Option<Fq>, q: u64) -> Result<FqMat> {
    let k = a.field();
    let h = a.n();
    let n = 2 * h + mid.is_some() as usize;
    let kk = antidiagonal(k, h);
    let star = kk.mul(&a.map_pow(q).inverse()?.transpose()).mul(&kk);
    let mut g = FqMat::zero(k, n);
    for i in 0..h {
        for j in 0..h {
            g.set(i, j, a.get(i, j));
            g.set(n - h + i, n - h + j, star.get(i, j));
        }
    }
    if let Some(x) = mid {
        g.set(h, h, x);
    }
    Ok(g)
}

/// Rewrites g (preserving `b`) in the basis where the form is anti-diagonal.
fn to_standard(g: &FqMat, b: &FqMat, q: u64) -> Result<FqMat> {
    let j = antidiagonal(g.field(), g.n());
    let p = standard_frame(b, q, &j)?;
    Ok(p.inverse()?.mul(g).mul(&p))
}

/// Generator of the Singer torus: order q^n - 1 in GL_n(q); order q^n - (-1)^n in GU_n(q).
pub fn singer_torus(family: Family, n: usize, q: u64) -> Result<TorusElement> {
    let grp = ClassicalGroup::new(family, n, q)?;
    let k = grp.field();
    let m = match family {
        Family::Linear => primitive_companion(k, n as u32)?,
        Family::Unitary if n.is_multiple_of(2) => levi(&primitive_companion(k, n as u32 / 2)?, None, q)?,
        Family::Unitary => {
            let (c, b) = odd_unitary_block(k, q, n as u32)?;
            to_standard(&c, &b, q)?
        }
    };
    TorusElement::new(&grp, "Singer".into(), m)
}

/// The non-Singer cyclic tori: none for GL; T_{n-1,1} for odd n and T_{a,b} (a > b odd,
/// coprime, a + b = n) for even n in GU.
pub fn sub_tori(family: Family, n: usize, q: u64) -> Result<Vec<TorusElement>> {
    let grp = ClassicalGroup::new(family, n, q)?;
    if family == Family::Linear || n < 2 {
        return Ok(vec![]);
    }
    let k = grp.field();
    let xi = grp.scalar_root();
    let mut out = vec![];
    if n % 2 == 1 {
        if n < 3 {
            return Ok(out);
        }
        let a = primitive_companion(k, (n as u32 - 1) / 2)?;
        let target = q.pow(n as u32 - 1) - 1;
        let found = (0..=q)
            .map(|t| levi(&a, Some(k.pow(xi, t)), q))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|g| g.central_order() == target)
            .ok_or_else(|| Error::Domain(format!("no generator of T_{{{},1}}", n - 1)))?;
        out.push(TorusElement::new(&grp, format!("T_{{{},1}}", n - 1), found)?);
        return Ok(out);
    }
    for b in (1..n / 2).rev().step_by(1) {
        let a = n - b;
        if a.is_multiple_of(2) || b % 2 == 0 || gcd(a as u64, b as u64) != 1 || a == b {
            continue;
        }
        let target = (q.pow(a as u32) + 1) * (q.pow(b as u32) + 1) / (q + 1);
        let (ca, ba) = odd_unitary_block(k, q, a as u32)?;
        let (cb, bb) = odd_unitary_block(k, q, b as u32)?;
        let form = ba.direct_sum(&bb);
        let ob = q.pow(b as u32) + 1;
        let g = (1..ob)
            .filter(|&t| gcd(t, ob) == 1)
            .map(|t| ca.direct_sum(&cb.pow(t)))
            .find(|g| g.central_order() == target)
            .ok_or_else(|| Error::Domain(format!("no generator of T_{{{a},{b}}}")))?;
        out.push(TorusElement::new(&grp, format!("T_{{{a},{b}}}"), to_standard(&g, &form, q)?)?);
    }
    if n == 2 {
        // T_{1,1}
        let (c, b) = odd_unitary_block(k, q, 1)?;
        let form = b.direct_sum(&b);
        let target = q + 1;
        let g = (1..=q)
            .map(|t| c.direct_sum(&c.pow(t)))
            .find(|g| g.central_order() == target)
            .ok_or_else(|| Error::Domain("no generator of T_{1,1}".into()))?;
        out.push(TorusElement::new(&grp, "T_{1,1}".into(), to_standard(&g, &form, q)?)?);
    }
    Ok(out)
}
