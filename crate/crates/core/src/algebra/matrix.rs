//! Dense square matrices over a finite field.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::field::{FieldSpec, Fq};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FqMat {
    field: Arc<FieldSpec>,
    n: usize,
    a: Vec<Fq>,
}

impl PartialEq for FqMat {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.a == o.a
    }
}
impl Eq for FqMat {}

impl Hash for FqMat {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.a.hash(h);
    }
}

impl fmt::Debug for FqMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.field, self.rows_str())
    }
}

impl FqMat {
    pub fn zero(field: &Arc<FieldSpec>, n: usize) -> FqMat {
        FqMat { field: field.clone(), n, a: vec![0; n * n] }
    }

    pub fn identity(field: &Arc<FieldSpec>, n: usize) -> FqMat {
        FqMat::scalar(field, n, 1)
    }

    pub fn scalar(field: &Arc<FieldSpec>, n: usize, c: Fq) -> FqMat {
        let mut m = FqMat::zero(field, n);
        for i in 0..n {
            m.a[i * n + i] = c;
        }
        m
    }

    /// Row-major entries; errors when the length is not a square or an entry lies outside the field.
    pub fn from_entries(field: &Arc<FieldSpec>, entries: Vec<Fq>) -> Result<FqMat> {
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n * n != entries.len() || n == 0 {
            return Err(Error::Domain("matrix must be square and nonempty".into()));
        }
        if entries.iter().any(|&e| !field.contains(e as u64)) {
            return Err(Error::Domain(format!("entry outside F_{}", field.q())));
        }
        Ok(FqMat { field: field.clone(), n, a: entries })
    }

    pub fn from_rows(field: &Arc<FieldSpec>, rows: &[Vec<i64>]) -> Result<FqMat> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("matrix must be square".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| {
                if x < 0 || !field.contains(x as u64) {
                    Err(Error::Domain(format!("entry {x} outside F_{}", field.q())))
                } else {
                    Ok(x as Fq)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FqMat::from_entries(field, entries)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn entries(&self) -> &[Fq] {
        &self.a
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.a[i * self.n + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, o: &FqMat) -> FqMat {
        let n = self.n;
        let k = &*self.field;
        let mut r = vec![0 as Fq; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = self.a[i * n + l];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = o.a[l * n + j];
                    if y != 0 {
                        r[i * n + j] = k.add(r[i * n + j], k.mul(x, y));
                    }
                }
            }
        }
        FqMat { field: self.field.clone(), n, a: r }
    }

    pub fn add(&self, o: &FqMat) -> FqMat {
        let k = &*self.field;
        let a = self.a.iter().zip(&o.a).map(|(&x, &y)| k.add(x, y)).collect();
        FqMat { field: self.field.clone(), n: self.n, a }
    }

    /// `self - lambda * I`.
    pub fn shift(&self, lambda: Fq) -> FqMat {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = self.field.sub(m.get(i, i), lambda);
            m.set(i, i, v);
        }
        m
    }

    pub fn transpose(&self) -> FqMat {
        let n = self.n;
        let mut a = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.a[i * n + j];
            }
        }
        FqMat { field: self.field.clone(), n, a }
    }

    /// Entrywise `x -> x^e` (a Frobenius twist when e is a power of p).
    pub fn map_pow(&self, e: u64) -> FqMat {
        let a = self.a.iter().map(|&x| self.field.pow(x, e)).collect();
        FqMat { field: self.field.clone(), n: self.n, a }
    }

    /// Row echelon form in place; returns the rank and determinant.
    fn eliminate(&self) -> (usize, Fq) {
        let n = self.n;
        let k = &*self.field;
        let mut m = self.a.clone();
        let mut rank = 0;
        let mut det: Fq = 1;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| m[r * n + col] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    m.swap(piv * n + j, rank * n + j);
                }
                det = k.neg(det);
            }
            let pv = m[rank * n + col];
            det = k.mul(det, pv);
            let inv = k.inv(pv).unwrap();
            for r in rank + 1..n {
                let c = m[r * n + col];
                if c == 0 {
                    continue;
                }
                let f = k.mul(c, inv);
                for j in col..n {
                    m[r * n + j] = k.sub(m[r * n + j], k.mul(f, m[rank * n + j]));
                }
            }
            rank += 1;
        }
        (rank, if rank < n { 0 } else { det })
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn det(&self) -> Fq {
        self.eliminate().1
    }

    /// Dimension over F_q of `ker(A - lambda I)`.
    pub fn kernel_dim(&self, lambda: Fq) -> Result<usize> {
        if !self.field.contains(lambda as u64) {
            return Err(Error::Domain(format!("{lambda} is not an element of F_{}", self.field.q())));
        }
        Ok(self.n - self.shift(lambda).rank())
    }

    pub fn inverse(&self) -> Result<FqMat> {
        let n = self.n;
        let k = &*self.field;
        let mut m = self.a.clone();
        let mut inv = FqMat::identity(&self.field, n).a;
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r * n + col] != 0).ok_or(Error::Singular)?;
            for j in 0..n {
                m.swap(piv * n + j, col * n + j);
                inv.swap(piv * n + j, col * n + j);
            }
            let pinv = k.inv(m[col * n + col])?;
            for j in 0..n {
                m[col * n + j] = k.mul(m[col * n + j], pinv);
                inv[col * n + j] = k.mul(inv[col * n + j], pinv);
            }
            for r in 0..n {
                let c = m[r * n + col];
                if r == col || c == 0 {
                    continue;
                }
                for j in 0..n {
                    m[r * n + j] = k.sub(m[r * n + j], k.mul(c, m[col * n + j]));
                    inv[r * n + j] = k.sub(inv[r * n + j], k.mul(c, inv[col * n + j]));
                }
            }
        }
        Ok(FqMat { field: self.field.clone(), n, a: inv })
    }

    pub fn pow(&self, mut e: u64) -> FqMat {
        let mut r = FqMat::identity(&self.field, self.n);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar() == Some(1)
    }

    pub fn as_scalar(&self) -> Option<Fq> {
        let n = self.n;
        let c = self.a[0];
        for i in 0..n {
            for j in 0..n {
                if self.a[i * n + j] != if i == j { c } else { 0 } {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Multiplicative order, or `Singular` if the matrix is not invertible.
    pub fn order(&self) -> Result<u64> {
        if self.det() == 0 {
            return Err(Error::Singular);
        }
        let mut x = self.clone();
        let mut k = 1u64;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        Ok(k)
    }

    /// Least k >= 1 with `self^k` scalar.
    pub fn central_order(&self) -> u64 {
        let mut x = self.clone();
        let mut k = 1u64;
        while x.as_scalar().is_none() {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    pub fn rows_str(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.field.fmt_elem(self.get(i, j))).collect())
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &FqMat) -> FqMat {
        let n = self.n + o.n;
        let mut m = FqMat::zero(&self.field, n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..o.n {
            for j in 0..o.n {
                m.set(self.n + i, self.n + j, o.get(i, j));
            }
        }
        m
    }

    /// Companion matrix of a monic polynomial (low to high).
    pub fn companion(field: &Arc<FieldSpec>, poly: &[Fq]) -> FqMat {
        let n = poly.len() - 1;
        let mut m = FqMat::zero(field, n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for i in 0..n {
            m.set(i, n - 1, field.neg(poly[i]));
        }
        m
    }
}

/// Basis of the right nullspace of a `rows x cols` row-major matrix.
pub fn nullspace(k: &FieldSpec, rows: usize, cols: usize, m: &[Fq]) -> Vec<Vec<Fq>> {
    let mut a = m.to_vec();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(piv * cols + j, r * cols + j);
        }
        let inv = k.inv(a[r * cols + c]).unwrap();
        for j in 0..cols {
            a[r * cols + j] = k.mul(a[r * cols + j], inv);
        }
        for i in 0..rows {
            let f = a[i * cols + c];
            if i != r && f != 0 {
                for j in 0..cols {
                    a[i * cols + j] = k.sub(a[i * cols + j], k.mul(f, a[r * cols + j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(a[i * cols + f]);
            }
            v
        })
        .collect()
}
