//! Concrete group-element types: matrices over F_q, over Q(zeta_L), and monomial matrices.

use std::hash::{Hash, Hasher};

use super::GroupElem;
use crate::algebra::{Cyc, FqMat, UnityClass};
use crate::error::{Error, Result};

impl GroupElem for FqMat {
    fn op(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn is_identity(&self) -> bool {
        FqMat::is_identity(self)
    }
    fn identity_like(&self) -> Self {
        FqMat::identity(self.field(), self.n())
    }
    fn check_invertible(&self) -> Result<()> {
        if self.det() == 0 {
            Err(Error::Singular)
        } else {
            Ok(())
        }
    }
}

/// Dense matrix over Q(zeta_L), entries kept at the fixed conductor L.
#[derive(Clone, Debug)]
pub struct CycMat {
    n: usize,
    l: u64,
    e: Vec<Cyc>,
}

impl PartialEq for CycMat {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.e == o.e
    }
}
impl Eq for CycMat {}

impl Hash for CycMat {
    fn hash<H: Hasher>(&self, h: &mut H) {
        for x in &self.e {
            x.coeffs().hash(h);
            x.denom().hash(h);
        }
    }
}

impl CycMat {
    pub fn new(l: u64, rows: Vec<Vec<Cyc>>) -> Result<CycMat> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("matrix must be square and nonempty".into()));
        }
        let mut e = Vec::with_capacity(n * n);
        for x in rows.into_iter().flatten() {
            if !l.is_multiple_of(x.conductor()) {
                return Err(Error::Domain(format!("entry conductor {} does not divide {l}", x.conductor())));
            }
            e.push(x.lift(l));
        }
        Ok(CycMat { n, l, e })
    }

    pub fn identity(l: u64, n: usize) -> CycMat {
        let e = (0..n * n).map(|k| Cyc::int((k % (n + 1) == 0) as i64).lift(l)).collect();
        CycMat { n, l, e }
    }

    /// Monomial matrix sending e_j to `scal[j] * e_{perm[j]}`.
    pub fn monomial(l: u64, perm: &[usize], scal: &[UnityClass]) -> CycMat {
        let n = perm.len();
        let mut e = vec![Cyc::zero().lift(l); n * n];
        for j in 0..n {
            e[perm[j] * n + j] = Cyc::root_at(scal[j], l);
        }
        CycMat { n, l, e }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn conductor(&self) -> u64 {
        self.l
    }
    pub fn get(&self, i: usize, j: usize) -> &Cyc {
        &self.e[i * self.n + j]
    }

    pub fn mul(&self, o: &CycMat) -> CycMat {
        let n = self.n;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Cyc::zero().lift(self.l);
                for k in 0..n {
                    let (a, b) = (&self.e[i * n + k], &o.e[k * n + j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                e.push(acc.lift(self.l));
            }
        }
        CycMat { n, l: self.l, e }
    }

    pub fn scale(&self, c: &Cyc) -> CycMat {
        let e = self.e.iter().map(|x| (x * c).lift(self.l)).collect();
        CycMat { n: self.n, l: self.l, e }
    }

    pub fn conj_transpose(&self) -> CycMat {
        let n = self.n;
        let mut e = self.e.clone();
        for i in 0..n {
            for j in 0..n {
                e[j * n + i] = self.e[i * n + j].conj();
            }
        }
        CycMat { n, l: self.l, e }
    }

    pub fn trace(&self) -> Cyc {
        (0..self.n).fold(Cyc::zero(), |acc, i| &acc + &self.e[i * self.n + i])
    }

    pub fn pow(&self, mut k: u64) -> CycMat {
        let mut r = CycMat::identity(self.l, self.n);
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        r
    }

    pub fn as_scalar(&self) -> Option<Cyc> {
        let n = self.n;
        let c = &self.e[0];
        for i in 0..n {
            for j in 0..n {
                let x = &self.e[i * n + j];
                if (i == j && x != c) || (i != j && !x.is_zero()) {
                    return None;
                }
            }
        }
        Some(c.clone())
    }
}

impl GroupElem for CycMat {
    fn op(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }
    fn identity_like(&self) -> Self {
        CycMat::identity(self.l, self.n)
    }
}

impl super::Represented for CycMat {
    fn trace(&self) -> Cyc {
        CycMat::trace(self)
    }
    fn dim(&self) -> usize {
        self.n
    }
}

/// Monomial matrix: column j holds `scal[j]` in row `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoMat {
    perm: Vec<u32>,
    scal: Vec<UnityClass>,
}

impl MonoMat {
    pub fn new(perm: Vec<u32>, scal: Vec<UnityClass>) -> Result<MonoMat> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::Domain("not a permutation".into()));
            }
        }
        if scal.len() != n {
            return Err(Error::Domain("scalar list length mismatch".into()));
        }
        Ok(MonoMat { perm, scal })
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }
    pub fn scalars(&self) -> &[UnityClass] {
        &self.scal
    }

    pub fn to_cyc(&self, l: u64) -> CycMat {
        let perm: Vec<usize> = self.perm.iter().map(|&p| p as usize).collect();
        CycMat::monomial(l, &perm, &self.scal)
    }
}

impl GroupElem for MonoMat {
    fn op(&self, o: &Self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut scal = vec![UnityClass::ONE; n];
        for j in 0..n {
            let k = o.perm[j] as usize;
            perm[j] = self.perm[k];
            scal[j] = o.scal[j] + self.scal[k];
        }
        MonoMat { perm, scal }
    }
    fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p as usize == j) && self.scal.iter().all(|s| s.is_trivial())
    }
    fn identity_like(&self) -> Self {
        let n = self.perm.len();
        MonoMat { perm: (0..n as u32).collect(), scal: vec![UnityClass::ONE; n] }
    }
}

impl super::Represented for MonoMat {
    fn trace(&self) -> Cyc {
        let mut acc = Cyc::zero();
        for (j, &p) in self.perm.iter().enumerate() {
            if p as usize == j {
                acc = &acc + &Cyc::root(self.scal[j]);
            }
        }
        acc
    }
    fn dim(&self) -> usize {
        self.perm.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repkit::Represented;

    #[test]
    fn monomial_product_matches_dense() {
        let a = MonoMat::new(vec![1, 2, 0], vec![UnityClass::new(1, 3), UnityClass::ONE, UnityClass::new(2, 3)]).unwrap();
        let b = MonoMat::new(vec![0, 2, 1], vec![UnityClass::ONE, UnityClass::new(1, 3), UnityClass::ONE]).unwrap();
        assert_eq!(a.op(&b).to_cyc(3), a.to_cyc(3).mul(&b.to_cyc(3)));
        assert_eq!(a.op(&b).trace(), a.to_cyc(3).mul(&b.to_cyc(3)).trace());
    }
}
