//! GL_n(q) and GU_n(q) as explicit matrix groups.
//!
//! GU_n(q) lives in GL_n(q^2) and preserves the anti-diagonal Hermitian form
//! `h(u, v) = sum_i u_i v_{n-1-i}^q`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::matrix::nullspace;
use crate::algebra::{field_of_order, FieldSpec, Fq, FqMat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Linear,
    Unitary,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Linear => "linear",
            Family::Unitary => "unitary",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linear" | "gl" => Ok(Family::Linear),
            "unitary" | "gu" => Ok(Family::Unitary),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// Sesquilinear pairing `u^T B v^(q)`; with `frob = 1` it is bilinear.
pub fn pairing(k: &FieldSpec, frob: u64, b: &FqMat, u: &[Fq], v: &[Fq]) -> Fq {
    let n = u.len();
    let vb: Vec<Fq> = v.iter().map(|&x| k.pow(x, frob)).collect();
    let mut acc = 0;
    for i in 0..n {
        if u[i] == 0 {
            continue;
        }
        let mut row = 0;
        for j in 0..n {
            row = k.add(row, k.mul(b.get(i, j), vb[j]));
        }
        acc = k.add(acc, k.mul(u[i], row));
    }
    acc
}

/// The anti-diagonal Gram matrix.
pub fn antidiagonal(k: &Arc<FieldSpec>, n: usize) -> FqMat {
    let mut j = FqMat::zero(k, n);
    for i in 0..n {
        j.set(i, n - 1 - i, 1);
    }
    j
}

#[derive(Clone, Debug)]
pub struct ClassicalGroup {
    family: Family,
    n: usize,
    q: u64,
    field: Arc<FieldSpec>,
    form: Option<FqMat>,
}

impl ClassicalGroup {
    pub fn new(family: Family, n: usize, q: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("rank must be positive".into()));
        }
        let field = match family {
            Family::Linear => field_of_order(q)?,
            Family::Unitary => {
                field_of_order(q)?;
                field_of_order(q.checked_mul(q).ok_or_else(|| Error::Domain("q too large".into()))?)?
            }
        };
        let form = (family == Family::Unitary).then(|| antidiagonal(&field, n));
        Ok(ClassicalGroup { family, n, q, field, form })
    }

    pub fn family(&self) -> Family {
        self.family
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn p(&self) -> u64 {
        self.field.p()
    }
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn form(&self) -> Option<&FqMat> {
        self.form.as_ref()
    }

    /// Order of the group from the standard product formula.
    pub fn order(&self) -> u128 {
        let q = self.q as i128;
        let n = self.n as u32;
        let mut o: i128 = q.pow(n * (n - 1) / 2);
        for i in 1..=n {
            o *= match self.family {
                Family::Linear => q.pow(i) - 1,
                Family::Unitary => q.pow(i) - (-1i128).pow(i),
            };
        }
        o as u128
    }

    /// Generator of the scalar subgroup: order q-1 (linear) or q+1 (unitary).
    pub fn scalar_root(&self) -> Fq {
        match self.family {
            Family::Linear => self.field.delta(),
            Family::Unitary => self.field.pow(self.field.delta(), self.q - 1),
        }
    }

    pub fn scalar_count(&self) -> u64 {
        match self.family {
            Family::Linear => self.q - 1,
            Family::Unitary => self.q + 1,
        }
    }

    pub fn contains(&self, g: &FqMat) -> bool {
        if g.n() != self.n || g.field().q() != self.field.q() {
            return false;
        }
        match &self.form {
            None => g.det() != 0,
            Some(j) => g.transpose().mul(j).mul(&g.map_pow(self.q)) == *j,
        }
    }

    pub(crate) fn check(&self, g: &FqMat) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::Domain(format!("matrix is not in {}", self.label())))
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::Linear => format!("GL_{}({})", self.n, self.q),
            Family::Unitary => format!("GU_{}({})", self.n, self.q),
        }
    }

    fn frames(&self) -> FrameSearch<'_> {
        FrameSearch::new(&self.field, self.n, self.form.as_ref().map(|b| (b, self.q, b)))
    }

    /// Every element, by column backtracking.
    pub fn elements(&self, cap: usize) -> Result<Vec<FqMat>> {
        if self.order() > cap as u128 {
            return Err(Error::CapExceeded(cap));
        }
        let search = self.frames();
        let mut out = Vec::with_capacity(self.order() as usize);
        search.run(&mut |cols| {
            out.push(search.matrix(cols));
            true
        }, None);
        Ok(out)
    }

    /// `count` elements drawn with a fixed seed.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<FqMat> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n;
        let qq = self.field.q();
        let mut out = Vec::with_capacity(count);
        match self.family {
            Family::Linear => {
                while out.len() < count {
                    let e: Vec<Fq> = (0..n * n).map(|_| rng.gen_range(0..qq) as Fq).collect();
                    let g = FqMat::from_entries(&self.field, e).unwrap();
                    if g.det() != 0 {
                        out.push(g);
                    }
                }
            }
            Family::Unitary => {
                let search = self.frames();
                while out.len() < count {
                    let offsets: Vec<usize> = (0..n).map(|_| rng.gen_range(0..search.vectors.len())).collect();
                    search.run(
                        &mut |cols| {
                            out.push(search.matrix(cols));
                            false
                        },
                        Some(&offsets),
                    );
                }
            }
        }
        out
    }
}

/// Column-by-column search for invertible matrices whose columns have a prescribed Gram matrix.
pub(crate) struct FrameSearch<'a> {
    field: &'a Arc<FieldSpec>,
    n: usize,
    /// (form B, Frobenius exponent, target Gram matrix)
    gram: Option<(&'a FqMat, u64, &'a FqMat)>,
    pub(crate) vectors: Vec<Vec<Fq>>,
}

impl<'a> FrameSearch<'a> {
    pub(crate) fn new(field: &'a Arc<FieldSpec>, n: usize, gram: Option<(&'a FqMat, u64, &'a FqMat)>) -> Self {
        let qq = field.q();
        let total = qq.pow(n as u32);
        let vectors = (1..total)
            .map(|mut x| {
                (0..n)
                    .map(|_| {
                        let d = (x % qq) as Fq;
                        x /= qq;
                        d
                    })
                    .collect()
            })
            .collect();
        FrameSearch { field, n, gram, vectors }
    }

    pub(crate) fn matrix(&self, cols: &[usize]) -> FqMat {
        let mut m = FqMat::zero(self.field, self.n);
        for (j, &c) in cols.iter().enumerate() {
            for i in 0..self.n {
                m.set(i, j, self.vectors[c][i]);
            }
        }
        m
    }

    /// Calls `visit` on each frame until it returns false. With `offsets`, level j scans
    /// candidates cyclically from `offsets[j]`.
    pub(crate) fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool, offsets: Option<&[usize]>) {
        let mut cols = Vec::with_capacity(self.n);
        self.descend(&mut cols, &[], visit, offsets);
    }

    fn descend(
        &self,
        cols: &mut Vec<usize>,
        echelon: &[(usize, Vec<Fq>)],
        visit: &mut dyn FnMut(&[usize]) -> bool,
        offsets: Option<&[usize]>,
    ) -> bool {
        let j = cols.len();
        if j == self.n {
            return visit(cols);
        }
        let k = &**self.field;
        let len = self.vectors.len();
        let start = offsets.map_or(0, |o| o[j]);
        for step in 0..len {
            let c = (start + step) % len;
            let v = &self.vectors[c];
            if let Some((b, frob, target)) = self.gram {
                if pairing(k, frob, b, v, v) != target.get(j, j) {
                    continue;
                }
                if cols
                    .iter()
                    .enumerate()
                    .any(|(i, &ci)| pairing(k, frob, b, &self.vectors[ci], v) != target.get(i, j))
                {
                    continue;
                }
            }
            let mut w = v.clone();
            for (pc, row) in echelon {
                let f = w[*pc];
                if f != 0 {
                    for t in 0..self.n {
                        w[t] = k.sub(w[t], k.mul(f, row[t]));
                    }
                }
            }
            let Some(pc) = w.iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = k.inv(w[pc]).unwrap();
            w.iter_mut().for_each(|x| *x = k.mul(*x, inv));
            let mut next: Vec<(usize, Vec<Fq>)> = echelon
                .iter()
                .map(|(p, row)| {
                    let f = row[pc];
                    let r = (0..self.n).map(|t| k.sub(row[t], k.mul(f, w[t]))).collect();
                    (*p, r)
                })
                .collect();
            next.push((pc, w));
            cols.push(c);
            let go_on = self.descend(cols, &next, visit, offsets);
            cols.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// A nondegenerate form `B` with `C^T B C^(frob) = B` satisfying `accept`, searched in the
/// solution space of the linear system.
pub(crate) fn invariant_form(c: &FqMat, frob: u64, accept: impl Fn(&FqMat) -> bool) -> Result<FqMat> {
    let k = c.field();
    let n = c.n();
    let cb = c.map_pow(frob);
    let mut sys = vec![0; n * n * n * n];
    for r in 0..n {
        for s in 0..n {
            let row = r * n + s;
            for u in 0..n {
                for v in 0..n {
                    let col = u * n + v;
                    let mut x = k.neg(k.mul(c.get(u, r), cb.get(v, s)));
                    if row == col {
                        x = k.add(x, 1);
                    }
                    sys[row * n * n + col] = x;
                }
            }
        }
    }
    let basis = nullspace(k, n * n, n * n, &sys);
    let qq = k.q();
    let total = qq
        .checked_pow(basis.len() as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or(Error::CapExceeded(1 << 20))?;
    for code in 1..total {
        let mut e = vec![0; n * n];
        let mut x = code;
        for b in &basis {
            let coef = (x % qq) as Fq;
            x /= qq;
            for (t, &bv) in b.iter().enumerate() {
                e[t] = k.add(e[t], k.mul(coef, bv));
            }
        }
        let m = FqMat::from_entries(k, e)?;
        if m.det() != 0 && accept(&m) {
            return Ok(m);
        }
    }
    Err(Error::Domain("no invariant form of the requested kind".into()))
}

/// `P` with `P^T B P^(q) = target`, for a nondegenerate Hermitian `B` over F_{q^2}.
pub(crate) fn standard_frame(b: &FqMat, q: u64, target: &FqMat) -> Result<FqMat> {
    let search = FrameSearch::new(b.field(), b.n(), Some((b, q, target)));
    let mut found = None;
    search.run(
        &mut |cols| {
            found = Some(search.matrix(cols));
            false
        },
        None,
    );
    found.ok_or_else(|| Error::Domain("form is not equivalent to the standard Hermitian form".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders_match_enumeration() {
        for (fam, n, q, ord) in [
            (Family::Linear, 2, 3, 48u128),
            (Family::Linear, 3, 2, 168),
            (Family::Unitary, 2, 3, 96),
            (Family::Unitary, 3, 2, 648),
        ] {
            let g = ClassicalGroup::new(fam, n, q).unwrap();
            assert_eq!(g.order(), ord);
            let els = g.elements(1 << 20).unwrap();
            assert_eq!(els.len() as u128, ord);
            assert!(els.iter().all(|x| g.contains(x)));
        }
    }

    #[test]
    fn large_orders() {
        assert_eq!(ClassicalGroup::new(Family::Linear, 3, 3).unwrap().order(), 11232);
        assert_eq!(ClassicalGroup::new(Family::Unitary, 3, 3).unwrap().order(), 24192);
        assert!(matches!(
            ClassicalGroup::new(Family::Linear, 3, 5).unwrap().elements(1000),
            Err(Error::CapExceeded(1000))
        ));
    }

    #[test]
    fn samples_are_members() {
        let g = ClassicalGroup::new(Family::Unitary, 3, 4).unwrap();
        let s = g.sample(5, 7);
        assert_eq!(s.len(), 5);
        assert!(s.iter().all(|x| g.contains(x)));
        assert_eq!(s, g.sample(5, 7));
    }
}
