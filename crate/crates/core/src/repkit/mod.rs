//! Finite matrix-group engine: closure, classes, spectra and moments.

pub mod elems;
pub mod m4;
pub mod spectrum;

use std::collections::HashMap;
use std::hash::Hash;

pub use elems::{CycMat, MonoMat};
pub use spectrum::{simple_spectrum, spectrum_from_traces, Spectrum};

use crate::algebra::Cyc;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 2_000_000;
pub const CLASS_LIMIT: usize = 100_000;

/// Enumeration cap: `HYPERMONO_CAP` if set and parseable, else [`DEFAULT_CAP`].
pub fn default_cap() -> usize {
    std::env::var("HYPERMONO_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_CAP)
}

pub trait GroupElem: Clone + Eq + Hash + Send + Sync {
    fn op(&self, o: &Self) -> Self;
    fn is_identity(&self) -> bool;
    fn identity_like(&self) -> Self;
    fn check_invertible(&self) -> Result<()> {
        Ok(())
    }
}

/// Elements carrying a matrix representation with exact traces.
pub trait Represented: GroupElem {
    fn trace(&self) -> Cyc;
    fn dim(&self) -> usize;
}

/// Order of `g`, or `Singular` if no power up to `cap` is the identity.
pub fn element_order<E: GroupElem>(g: &E, cap: usize) -> Result<u64> {
    g.check_invertible()?;
    let mut x = g.clone();
    let mut k = 1u64;
    while !x.is_identity() {
        if k as usize >= cap {
            return Err(Error::Singular);
        }
        x = x.op(g);
        k += 1;
    }
    Ok(k)
}

pub fn power<E: GroupElem>(g: &E, k: u64) -> E {
    let mut r = g.identity_like();
    let mut b = g.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            r = r.op(&b);
        }
        b = b.op(&b);
        k >>= 1;
    }
    r
}

#[derive(Clone, Debug)]
pub struct MatGroup<E: GroupElem> {
    gens: Vec<E>,
    elems: Vec<E>,
    index: HashMap<E, usize>,
}

/// Breadth-first closure under right multiplication by the generators.
pub fn closure<E: GroupElem>(gens: &[E], cap: usize) -> Result<MatGroup<E>> {
    let first = gens.first().ok_or_else(|| Error::Domain("no generators".into()))?;
    for g in gens {
        element_order(g, cap)?;
    }
    let id = first.identity_like();
    let mut elems = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = x.op(g);
            if !index.contains_key(&y) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    Ok(MatGroup { gens: gens.to_vec(), elems, index })
}

impl<E: GroupElem> MatGroup<E> {
    pub fn order(&self) -> usize {
        self.elems.len()
    }
    pub fn elements(&self) -> &[E] {
        &self.elems
    }
    pub fn generators(&self) -> &[E] {
        &self.gens
    }
    pub fn index_of(&self, g: &E) -> Option<usize> {
        self.index.get(g).copied()
    }
    pub fn contains(&self, g: &E) -> bool {
        self.index.contains_key(g)
    }

    /// Conjugacy classes as index lists, by orbit partition under the generators.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<usize>>> {
        if self.order() >= CLASS_LIMIT {
            return Err(Error::CapExceeded(CLASS_LIMIT));
        }
        let invs: Vec<E> = self
            .gens
            .iter()
            .map(|g| power(g, element_order(g, self.order() + 1).unwrap() - 1))
            .collect();
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = vec![];
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut orbit = vec![start];
            class_of[start] = c;
            let mut h = 0;
            while h < orbit.len() {
                let x = &self.elems[orbit[h]];
                h += 1;
                for (g, gi) in self.gens.iter().zip(&invs) {
                    let y = gi.op(x).op(g);
                    let k = self.index[&y];
                    if class_of[k] == usize::MAX {
                        class_of[k] = c;
                        orbit.push(k);
                    }
                }
            }
            classes.push(orbit);
        }
        Ok(classes)
    }
}

/// Spectrum of a finite-order represented element.
pub fn spectrum<E: Represented>(g: &E) -> Result<Spectrum> {
    let o = element_order(g, default_cap())?;
    let mut traces = Vec::with_capacity(o as usize);
    let mut x = g.identity_like();
    for _ in 0..o {
        traces.push(x.trace());
        x = x.op(g);
    }
    spectrum_from_traces(&traces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field, FqMat, UnityClass};

    fn cyc3() -> MonoMat {
        MonoMat::new(vec![1, 2, 0], vec![UnityClass::ONE; 3]).unwrap()
    }

    #[test]
    fn closure_small() {
        assert_eq!(closure(&[cyc3()], 100).unwrap().order(), 3);
        let f3 = field(3, 1).unwrap();
        let a = FqMat::from_rows(&f3, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = FqMat::from_rows(&f3, &[vec![1, 0], vec![1, 1]]).unwrap();
        let g = closure(&[a, b], 1000).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.conjugacy_classes().unwrap().len(), 7);
    }

    #[test]
    fn closure_errors() {
        let f3 = field(3, 1).unwrap();
        let s = FqMat::from_rows(&f3, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(closure(&[s], 100).unwrap_err(), Error::Singular);
        let a = FqMat::from_rows(&f3, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = FqMat::from_rows(&f3, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(closure(&[a, b], 10).unwrap_err(), Error::CapExceeded(10));
        let two = CycMat::identity(1, 1).scale(&Cyc::int(2));
        assert_eq!(closure(&[two], 50).unwrap_err(), Error::Singular);
    }

    #[test]
    fn spectra() {
        let s = spectrum(&cyc3()).unwrap();
        assert_eq!(s.to_string(), "{0/1: 1, 1/3: 1, 2/3: 1}");
        let d = MonoMat::new(vec![0, 1], vec![UnityClass::ONE, UnityClass::new(1, 2)]).unwrap();
        assert_eq!(spectrum(&d).unwrap().to_string(), "{0/1: 1, 1/2: 1}");
        let id = CycMat::identity(1, 4);
        assert_eq!(spectrum(&id).unwrap().to_string(), "{0/1: 4}");
    }
}
