//! Fourth moments and the exterior/symmetric square norms, with two explicit test groups.

use rayon::prelude::*;
use serde::Serialize;

use super::{closure, CycMat, MatGroup, MonoMat, Represented};
use crate::algebra::{field_of_order, Cyc, UnityClass};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentReport {
    pub order: usize,
    pub dim: usize,
    /// `[chi chibar, chi chibar]`.
    pub m4: i64,
    pub lambda2_norm: i64,
    pub sym2_norm: i64,
}

fn exact_average(sum: &Cyc, n: usize, what: &str) -> Result<i64> {
    sum.div_int(n as i64)
        .as_integer()
        .ok_or_else(|| Error::NonIntegral(format!("{what} = {sum}/{n}")))
}

/// `(1/|G|) sum |chi(g)|^4`.
pub fn m4<E: Represented>(g: &MatGroup<E>) -> Result<i64> {
    Ok(moments(g)?.m4)
}

pub fn moments<E: Represented>(g: &MatGroup<E>) -> Result<MomentReport> {
    let elems = g.elements();
    let chi: Vec<Cyc> = elems.par_iter().map(|x| x.trace()).collect();
    let sq: Vec<usize> = elems
        .par_iter()
        .map(|x| g.index_of(&x.op(x)).expect("closed group"))
        .collect();
    let (s4, sl, ss) = (0..elems.len())
        .into_par_iter()
        .map(|i| {
            let c = &chi[i];
            let a2 = c.abs2();
            let c2 = c * c;
            let l2 = (&c2 - &chi[sq[i]]).div_int(2);
            let s2 = (&c2 + &chi[sq[i]]).div_int(2);
            (&a2 * &a2, l2.abs2(), s2.abs2())
        })
        .reduce(
            || (Cyc::zero(), Cyc::zero(), Cyc::zero()),
            |a, b| (&a.0 + &b.0, &a.1 + &b.1, &a.2 + &b.2),
        );
    let n = elems.len();
    Ok(MomentReport {
        order: n,
        dim: elems[0].dim(),
        m4: exact_average(&s4, n, "M4")?,
        lambda2_norm: exact_average(&sl, n, "[L2, L2]")?,
        sym2_norm: exact_average(&ss, n, "[S2, S2]")?,
    })
}

/// Generators of `Q x| AGL_1(q)` on `C^q` (odd q): diagonal `mu_p^q`, translations, dilations.
pub fn monomial_j_generators(q: u64) -> Result<Vec<MonoMat>> {
    if q.is_multiple_of(2) {
        return Err(Error::Domain("q must be odd".into()));
    }
    let k = field_of_order(q)?;
    let p = k.p();
    let n = q as usize;
    let mut gens = vec![];
    let mut diag = vec![UnityClass::ONE; n];
    diag[0] = UnityClass::new(1, p);
    gens.push(MonoMat::new((0..n as u32).collect(), diag)?);
    for i in 0..k.f() {
        let u = p.pow(i) as u16;
        let perm = (0..n).map(|v| k.add(v as u16, u) as u32).collect();
        gens.push(MonoMat::new(perm, vec![UnityClass::ONE; n])?);
    }
    let d = k.delta();
    let perm = (0..n).map(|v| k.mul(v as u16, d) as u32).collect();
    gens.push(MonoMat::new(perm, vec![UnityClass::ONE; n])?);
    Ok(gens)
}

pub fn monomial_j(q: u64, cap: usize) -> Result<MatGroup<MonoMat>> {
    closure(&monomial_j_generators(q)?, cap)
}

/// `3^{1+2}_+ x| C_4` on `C^3`: shift, clock, and the unitary discrete Fourier transform.
pub fn heisenberg_c4_generators() -> Result<Vec<CycMat>> {
    let l = 12;
    let w = |a: i64| UnityClass::new(a, 3);
    let x = CycMat::monomial(l, &[1, 2, 0], &[UnityClass::ONE; 3]);
    let z = CycMat::monomial(l, &[0, 1, 2], &[w(0), w(1), w(2)]);
    let inv_sqrt3 = Cyc::sqrt_prime(3).div_int(3);
    let rows = (0..3)
        .map(|i| (0..3).map(|j| &Cyc::root(w(i * j)) * &inv_sqrt3).collect())
        .collect();
    let f = CycMat::new(l, rows)?;
    Ok(vec![x, z, f])
}

pub fn heisenberg_c4(cap: usize) -> Result<MatGroup<CycMat>> {
    closure(&heisenberg_c4_generators()?, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repkit::{element_order, GroupElem};

    #[test]
    fn trivial_group_m4() {
        let g = closure(&[CycMat::identity(1, 1)], 10).unwrap();
        assert_eq!(m4(&g).unwrap(), 1);
    }

    #[test]
    fn monomial_q3() {
        let g = monomial_j(3, 10_000).unwrap();
        assert_eq!(g.order(), 162);
        let r = moments(&g).unwrap();
        assert_eq!((r.m4, r.lambda2_norm, r.sym2_norm), (3, 1, 2));
    }

    #[test]
    fn heisenberg_fourier_has_order_four() {
        let gens = heisenberg_c4_generators().unwrap();
        assert_eq!(element_order(&gens[2], 100).unwrap(), 4);
        let u = gens[2].mul(&gens[2].conj_transpose());
        assert!(u.is_identity());
        let g = heisenberg_c4(10_000).unwrap();
        assert_eq!(g.order(), 108);
        assert_eq!(m4(&g).unwrap(), 3);
    }
}
