//! Stone–von Neumann models of Heisenberg and extraspecial groups, intertwiners for outer
//! automorphisms, and their projective spectra.

mod symplectic;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

pub use symplectic::{
    half_identity_holds, half_identity_sweep, orthogonal_elements, quadratic_value, sp_elements, sp_gram, sp_order, sp_torus_beta,
    sp_torus_minus, sp_torus_plus, ss_extr_enumerate, ss_sp_enumerate, ss_sp_oracle, HalfResult, OracleMode, SpClass,
    SpControl, SpOracleReport, SpTypeResult, FULL_CAP, TARGETED_CAP,
};

use crate::algebra::arith::factorize;
use crate::algebra::{field, Cyc, FieldSpec, Fq, FqMat, UnityClass};
use crate::error::{Error, Result};
use crate::repkit::{spectrum_from_traces, CycMat, GroupElem, MonoMat, Spectrum};

/// Largest model dimension q^n handled by default.
pub const DESK_CAP: u64 = 32;

/// Type of an extraspecial 2-group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Eps {
    Plus,
    Minus,
}

impl Eps {
    pub fn sign(self) -> i64 {
        match self {
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }
}

impl std::ops::Mul for Eps {
    type Output = Eps;
    fn mul(self, o: Eps) -> Eps {
        if self == o {
            Eps::Plus
        } else {
            Eps::Minus
        }
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eps::Plus => "+",
            Eps::Minus => "-",
        })
    }
}

impl FromStr for Eps {
    type Err = Error;
    fn from_str(s: &str) -> Result<Eps> {
        match s {
            "+" | "plus" => Ok(Eps::Plus),
            "-" | "minus" => Ok(Eps::Minus),
            _ => Err(Error::Parse(format!("bad type {s:?}; expected + or -"))),
        }
    }
}

impl Serialize for Eps {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The irreducible q^n-dimensional representation of a Heisenberg group (odd p) or of an
/// extraspecial 2-group, on delta functions of F_q^n.
///
/// Elements of E/Z(E) are vectors v = (a, b) of length 2n. For odd p,
/// `W(a,b) δ_x = ψ(a·b/2 + b·x) δ_{x+a}`; for p = 2, `E(a,b) = X^a Z^b`, twisted by i on the
/// first coordinate pair when ε = −.
#[derive(Clone, Debug, Serialize)]
pub struct HeisenbergModel {
    pub p: u64,
    pub n: usize,
    pub f: u32,
    pub q: u64,
    pub eps: Option<Eps>,
    pub dim: usize,
    /// Order of the group, q^{1+2n}.
    pub order: u64,
    /// Order of its image: the center acts through ψ, so q^{2n}·p.
    pub image_order: u64,
    #[serde(skip)]
    field: Arc<FieldSpec>,
    /// Exponent modulus of all matrix entries (p, or 4 when p = 2).
    #[serde(skip)]
    l: u64,
    #[serde(skip)]
    half: Fq,
    #[serde(skip)]
    gens: Vec<Vec<Fq>>,
}

/// Builds the model; fails when q^n exceeds `cap`.
pub fn heisenberg_irrep(p: u64, n: usize, f: u32, eps: Option<Eps>, cap: u64) -> Result<HeisenbergModel> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let k = field::field(p, f)?;
    let q = k.q();
    if p == 2 && (f != 1 || eps.is_none()) {
        return Err(Error::Domain("p = 2 requires f = 1 and a type ε".into()));
    }
    let dim = q.checked_pow(n as u32).filter(|&d| d <= cap).ok_or(Error::CapExceeded(cap as usize))?;
    let half = if p == 2 { 0 } else { k.inv(k.from_int(2))? };
    let mut gens = vec![];
    for i in 0..2 * n {
        for j in 0..f {
            let mut v = vec![0; 2 * n];
            v[i] = p.pow(j) as Fq;
            gens.push(v);
        }
    }
    let model = HeisenbergModel {
        p,
        n,
        f,
        q,
        eps: if p == 2 { eps } else { None },
        dim: dim as usize,
        order: q.pow(1 + 2 * n as u32),
        image_order: q.pow(2 * n as u32) * p,
        field: k,
        l: if p == 2 { 4 } else { p },
        half,
        gens,
    };
    // the commutant of E must be the scalars
    let id = FqMat::identity(&model.field, 2 * n);
    model.intertwiner_with(&id, &vec![0; model.gens.len()])?;
    Ok(model)
}

impl HeisenbergModel {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.l
    }

    /// F_p-basis of F_q^{2n} whose images generate E modulo the center.
    pub fn generator_vectors(&self) -> &[Vec<Fq>] {
        &self.gens
    }

    fn index(&self, x: &[Fq]) -> usize {
        x.iter().rev().fold(0, |acc, &c| acc * self.q as usize + c as usize)
    }

    fn point(&self, mut i: usize) -> Vec<Fq> {
        (0..self.n)
            .map(|_| {
                let c = (i % self.q as usize) as Fq;
                i /= self.q as usize;
                c
            })
            .collect()
    }

    fn trace_fp(&self, t: Fq) -> u64 {
        let k = &*self.field;
        let mut s = 0;
        let mut x = t;
        for _ in 0..self.f {
            s = k.add(s, x);
            x = k.pow(x, self.p);
        }
        s as u64
    }

    fn dot(&self, u: &[Fq], v: &[Fq]) -> Fq {
        let k = &*self.field;
        u.iter().zip(v).fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
    }

    /// Scalar exponents (mod the conductor) and permutation of the canonical lift of v.
    fn lift_parts(&self, v: &[Fq]) -> (Vec<u32>, Vec<u32>) {
        let k = &*self.field;
        let (a, b) = v.split_at(self.n);
        let mut perm = vec![0u32; self.dim];
        let mut scal = vec![0u32; self.dim];
        let ab = self.dot(a, b);
        let twist = match self.eps {
            Some(Eps::Minus) => (a[0] + b[0]) as u64,
            _ => 0,
        };
        for i in 0..self.dim {
            let x = self.point(i);
            let y: Vec<Fq> = x.iter().zip(a).map(|(&s, &t)| k.add(s, t)).collect();
            perm[i] = self.index(&y) as u32;
            let bx = self.dot(b, &x);
            scal[i] = if self.p == 2 {
                ((2 * bx as u64 + twist) % 4) as u32
            } else {
                self.trace_fp(k.add(k.mul(self.half, ab), bx)) as u32
            };
        }
        (perm, scal)
    }

    /// Image of the canonical lift of v ∈ F_q^{2n}.
    pub fn rho(&self, v: &[Fq]) -> Result<MonoMat> {
        if v.len() != 2 * self.n {
            return Err(Error::Domain(format!("vector length {} != {}", v.len(), 2 * self.n)));
        }
        let (perm, scal) = self.lift_parts(v);
        MonoMat::new(perm, scal.into_iter().map(|s| UnityClass::new(s as i64, self.l)).collect())
    }

    /// Images of the generators of E.
    pub fn generator_images(&self) -> Result<Vec<MonoMat>> {
        self.gens.iter().map(|v| self.rho(v)).collect()
    }

    /// Image of the central element acting by ψ(1).
    pub fn central_generator(&self) -> Result<MonoMat> {
        let c = if self.p == 2 { 2 } else { 1 };
        MonoMat::new((0..self.dim as u32).collect(), vec![UnityClass::new(c, self.l); self.dim])
    }

    fn apply(&self, g: &FqMat, v: &[Fq]) -> Vec<Fq> {
        let k = &*self.field;
        (0..g.n()).map(|i| (0..g.n()).fold(0, |acc, j| k.add(acc, k.mul(g.get(i, j), v[j])))).collect()
    }

    /// Checks that g induces an automorphism of E fixing the center.
    pub fn check_outer(&self, g: &FqMat) -> Result<()> {
        if g.n() != 2 * self.n || g.field().q() != self.q {
            return Err(Error::Domain(format!("expected a {}x{} matrix over F_{}", 2 * self.n, 2 * self.n, self.q)));
        }
        if g.det() == 0 {
            return Err(Error::Singular);
        }
        let ok = match self.eps {
            None => symplectic::is_symplectic(g),
            Some(e) => symplectic::is_orthogonal(e, g),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("matrix does not preserve the {} structure", self.structure())))
        }
    }

    fn structure(&self) -> &'static str {
        match self.eps {
            None => "symplectic",
            Some(Eps::Plus) => "quadratic (+)",
            Some(Eps::Minus) => "quadratic (-)",
        }
    }

    /// Intertwiner for the automorphism sending generator i to `ζ^{extra[i]}` times the
    /// canonical lift of g·v_i.
    fn intertwiner_with(&self, g: &FqMat, extra: &[u32]) -> Result<ProjectiveMatrix> {
        let l = self.l as u32;
        let dim = self.dim;
        let mut uf = PotentialUf::new(dim * dim, l);
        for (v, &x) in self.gens.iter().zip(extra) {
            let (hp, hs) = self.lift_parts(v);
            let (kp, ks) = self.lift_parts(&self.apply(g, v));
            // M ρ(h) = ρ(h') M  ⇔  M[π'(z), π(y)] = ζ^{s'(z) + x - s(y)} M[z, y]
            for z in 0..dim {
                for y in 0..dim {
                    let c = (ks[z] + x + l - hs[y]) % l;
                    uf.relate(z * dim + y, kp[z] as usize * dim + hp[y] as usize, c);
                }
            }
        }
        let roots: Vec<usize> = (0..dim * dim).filter(|&u| uf.find(u).0 == u && !uf.bad[u]).collect();
        if roots.len() != 1 {
            return Err(Error::OracleMismatch(format!("intertwiner space has dimension {}", roots.len())));
        }
        let root = roots[0];
        let mut entries = vec![None; dim * dim];
        let mut base = None;
        for (u, e) in entries.iter_mut().enumerate() {
            let (r, pot) = uf.find(u);
            if r == root {
                let b = *base.get_or_insert(pot);
                *e = Some((pot + l - b) % l);
            }
        }
        Ok(ProjectiveMatrix { dim, l: self.l, entries, source: g.clone() })
    }

    /// Sign cocycle of the canonical lift: σ_g(E'(w)) = ζ^{χ(w)} E'(gw), evaluated on the
    /// images of the generators.
    fn lift_cocycle(&self, g: &FqMat) -> Result<Vec<u32>> {
        if self.p != 2 {
            return Ok(vec![0; self.gens.len()]);
        }
        let images: Vec<MonoMat> = self.gens.iter().map(|v| self.rho(&self.apply(g, v))).collect::<Result<_>>()?;
        let gens = self.generator_images()?;
        let two_n = 2 * self.n;
        let mut chi = vec![0u32; 1 << two_n];
        for code in 0..1usize << two_n {
            let w: Vec<Fq> = (0..two_n).map(|i| ((code >> i) & 1) as Fq).collect();
            let ew = self.rho(&w)?;
            let mut word = ew.identity_like();
            let mut img = ew.identity_like();
            for i in 0..two_n {
                if w[i] == 1 {
                    word = word.op(&gens[i]);
                    img = img.op(&images[i]);
                }
            }
            // E'(w) = ζ^c · word, so σ(E'(w)) = ζ^c · img
            let c = ratio(&ew, &word, self.l)?;
            let target = self.rho(&self.apply(g, &w))?;
            chi[code] = (c + ratio(&img, &target, self.l)?) % self.l as u32;
        }
        Ok(chi)
    }
}

/// Exponent c with a = ζ^c b for proportional monomial matrices.
fn ratio(a: &MonoMat, b: &MonoMat, l: u64) -> Result<u32> {
    if a.perm() != b.perm() {
        return Err(Error::OracleMismatch("monomial matrices are not proportional".into()));
    }
    let d = a.scalars()[0] - b.scalars()[0];
    if a.scalars().iter().zip(b.scalars()).any(|(&x, &y)| x - y != d) || !l.is_multiple_of(d.den()) {
        return Err(Error::OracleMismatch("monomial matrices are not proportional".into()));
    }
    Ok(d.at(l) as u32)
}

/// Union-find with potentials in Z/l: value[u] = ζ^{pot(u)} value[root(u)].
struct PotentialUf {
    parent: Vec<usize>,
    pot: Vec<u32>,
    bad: Vec<bool>,
    l: u32,
}

impl PotentialUf {
    fn new(n: usize, l: u32) -> Self {
        PotentialUf { parent: (0..n).collect(), pot: vec![0; n], bad: vec![false; n], l }
    }

    fn find(&mut self, u: usize) -> (usize, u32) {
        let mut path = vec![];
        let mut r = u;
        while self.parent[r] != r {
            path.push(r);
            r = self.parent[r];
        }
        // compress, accumulating potentials from the top
        let mut acc = 0;
        for &x in path.iter().rev() {
            acc = (acc + self.pot[x]) % self.l;
            self.pot[x] = acc;
            self.parent[x] = r;
        }
        (r, if u == r { 0 } else { self.pot[u] })
    }

    /// Records value[w] = ζ^c value[u].
    fn relate(&mut self, u: usize, w: usize, c: u32) {
        let (ru, pu) = self.find(u);
        let (rw, pw) = self.find(w);
        let l = self.l;
        if ru == rw {
            if pw != (pu + c) % l {
                self.bad[ru] = true;
            }
        } else {
            self.parent[rw] = ru;
            self.pot[rw] = (pu + c + l - pw) % l;
            self.bad[ru] |= self.bad[rw];
        }
    }
}

/// An intertwiner, determined up to a nonzero scalar; entries are `ζ_l^e` or zero.
#[derive(Clone, Debug)]
pub struct ProjectiveMatrix {
    dim: usize,
    l: u64,
    entries: Vec<Option<u32>>,
    source: FqMat,
}

impl Serialize for ProjectiveMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.get(i, j).map_or_else(|| "0".to_string(), |u| format!("z({u})")))
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("ProjectiveMatrix", 4)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("ambiguity", "nonzero scalars")?;
        st.serialize_field("source", &self.source.rows_str())?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

impl ProjectiveMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source(&self) -> &FqMat {
        &self.source
    }

    pub fn get(&self, i: usize, j: usize) -> Option<UnityClass> {
        self.entries[i * self.dim + j].map(|e| UnityClass::new(e as i64, self.l))
    }

    pub fn to_cyc(&self) -> CycMat {
        let rows = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).map_or_else(Cyc::zero, Cyc::root)).collect())
            .collect();
        CycMat::new(self.l, rows).expect("square")
    }

    /// Number of nonzero entries per row; M M* = r I.
    pub fn norm(&self) -> u64 {
        self.entries[..self.dim].iter().filter(|e| e.is_some()).count() as u64
    }

    fn is_scalar(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| (i == j) == self.entries[i * self.dim + j].is_some()))
            && (0..self.dim).all(|i| self.entries[i * self.dim + i] == Some(0))
    }
}

/// The intertwiner M with M ρ(h) = ρ(σ_g(h)) M for the automorphism σ_g lifting g.
pub fn outer_intertwiner(model: &HeisenbergModel, g: &FqMat) -> Result<ProjectiveMatrix> {
    model.check_outer(g)?;
    model.intertwiner_with(g, &vec![0; model.gens.len()])
}

/// Exact √r.
fn sqrt_int(r: u64) -> Cyc {
    factorize(r).into_iter().fold(Cyc::int(1), |acc, (p, e)| &acc * &Cyc::sqrt_prime_power(p, e))
}

/// Traces of the powers of a unitary rescaling U of M, on the whole model and twisted by the
/// parity operator, for j = 0..k where U^k = 1.
#[derive(Clone, Debug)]
pub struct PowerTraces {
    pub order: u64,
    pub traces: Vec<Cyc>,
    /// tr(U^j P) with P δ_x = δ_{-x}.
    pub twisted: Vec<Cyc>,
}

const POWER_GUARD: u64 = 1 << 16;

/// Computes the traces from the normalized intertwiners M_j of the iterated automorphism:
/// U'^j = u_j M_j/√r_j for U' = M/√r, where each step factor u_j/u_{j-1} is a root of unity.
pub fn power_traces(model: &HeisenbergModel, m: &ProjectiveMatrix) -> Result<PowerTraces> {
    let g = &m.source;
    model.check_outer(g)?;
    let dim = model.dim;
    let l = model.l as usize;
    let chi = model.lift_cocycle(g)?;
    let code = |w: &[Fq]| w.iter().enumerate().fold(0usize, |acc, (i, &x)| acc | ((x as usize) << i));
    let neg: Vec<usize> = (0..dim)
        .map(|i| {
            let x: Vec<Fq> = model.point(i).iter().map(|&c| model.field.neg(c)).collect();
            model.index(&x)
        })
        .collect();
    let r = m.norm();
    let sr = sqrt_int(r);
    let not_unitary = || Error::OracleMismatch("intertwiner is not unitarizable".into());
    let mut prev = m.clone();
    let mut u = UnityClass::ONE;
    let mut gj = g.clone();
    let mut extra = vec![0u32; model.gens.len()];
    let mut raw: Vec<(UnityClass, Cyc, Cyc)> = vec![(UnityClass::ONE, Cyc::int(dim as i64), Cyc::int(1))];
    // twisted trace of the identity is the number of fixed points of x -> -x
    if model.p == 2 {
        raw[0].2 = Cyc::int(dim as i64);
    }
    for j in 1..=POWER_GUARD {
        let mj = if j == 1 {
            m.clone()
        } else {
            for (i, v) in model.gens.iter().enumerate() {
                if model.p == 2 {
                    let w = model.apply(&gj, v);
                    extra[i] = (extra[i] + chi[code(&w)]) % l as u32;
                }
            }
            gj = gj.mul(g);
            model.intertwiner_with(&gj, &extra)?
        };
        if j > 1 {
            // (M_{j-1} M)[0, b] = d_j M_j[0, b]
            let b = (0..dim).find(|&b| mj.entries[b].is_some()).expect("nonzero row");
            let mut acc = vec![0i64; l];
            for x in 0..dim {
                if let (Some(e1), Some(e2)) = (prev.entries[x], m.entries[x * dim + b]) {
                    acc[(e1 + e2) as usize % l] += 1;
                }
            }
            let e = mj.entries[b].unwrap() as usize;
            acc.rotate_left(e);
            let d = Cyc::from_group_ring(l as u64, &acc, 1);
            let (rp, rj) = (prev.norm(), mj.norm());
            let f = (&(&(&d * &sqrt_int(rj)) * &sqrt_int(rp)) * &sr).div_int((rp * r) as i64);
            u = u + f.as_root_of_unity().ok_or_else(not_unitary)?;
        }
        if mj.is_scalar() {
            let beta = (-u).div_root(j);
            let mut traces = Vec::with_capacity(j as usize);
            let mut twisted = Vec::with_capacity(j as usize);
            for (t, (uj, tr, tw)) in raw.into_iter().enumerate() {
                let s = beta.scale(t as i64) + uj;
                traces.push(tr.mul_root(s));
                twisted.push(tw.mul_root(s));
            }
            return Ok(PowerTraces { order: j, traces, twisted });
        }
        let rj = mj.norm();
        let inv = sqrt_int(rj).div_int(rj as i64);
        let tr = (0..dim).fold(Cyc::zero(), |acc, x| match mj.get(x, x) {
            Some(z) => &acc + &Cyc::root(z),
            None => acc,
        });
        let tw = (0..dim).fold(Cyc::zero(), |acc, x| match mj.get(x, neg[x]) {
            Some(z) => &acc + &Cyc::root(z),
            None => acc,
        });
        raw.push((u, &tr * &inv, &tw * &inv));
        prev = mj;
    }
    Err(Error::Domain("intertwiner of infinite projective order".into()))
}

/// Spectrum of M up to a global rotation, canonicalized.
pub fn projective_spectrum(model: &HeisenbergModel, m: &ProjectiveMatrix) -> Result<Spectrum> {
    let pt = power_traces(model, m)?;
    Ok(spectrum_from_traces(&pt.traces)?.canonical_rotation())
}

pub fn simple_projective(model: &HeisenbergModel, m: &ProjectiveMatrix) -> Result<bool> {
    Ok(projective_spectrum(model, m)?.is_simple())
}

/// Projective spectra on the even and odd function subspaces (odd p), each canonicalized.
pub fn half_spectra(model: &HeisenbergModel, m: &ProjectiveMatrix) -> Result<(Spectrum, Spectrum)> {
    if model.p == 2 {
        return Err(Error::Domain("parity halves need odd p".into()));
    }
    let pt = power_traces(model, m)?;
    let (ev, od): (Vec<Cyc>, Vec<Cyc>) = pt
        .traces
        .iter()
        .zip(&pt.twisted)
        .map(|(t, s)| ((t + s).div_int(2), (t - s).div_int(2)))
        .unzip();
    Ok((spectrum_from_traces(&ev)?.canonical_rotation(), spectrum_from_traces(&od)?.canonical_rotation()))
}

/// Traces of the unitary normalization U = M/√r on the even and odd subspaces.
pub fn sp_halves(model: &HeisenbergModel, m: &ProjectiveMatrix) -> Result<(Cyc, Cyc)> {
    if model.p == 2 {
        return Err(Error::Domain("parity halves need odd p".into()));
    }
    let dim = model.dim;
    let mut tr = Cyc::zero();
    let mut tw = Cyc::zero();
    for x in 0..dim {
        if let Some(u) = m.get(x, x) {
            tr = &tr + &Cyc::root(u);
        }
        let nx: Vec<Fq> = model.point(x).iter().map(|&c| model.field.neg(c)).collect();
        if let Some(u) = m.get(x, model.index(&nx)) {
            tw = &tw + &Cyc::root(u);
        }
    }
    let r = m.norm();
    let inv_sr = sqrt_int(r).div_int(r as i64);
    let even = (&(&tr + &tw) * &inv_sr).div_int(2);
    let odd = (&(&tr - &tw) * &inv_sr).div_int(2);
    Ok((even, odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repkit::closure;

    fn model(p: u64, n: usize, f: u32, eps: Option<Eps>) -> HeisenbergModel {
        heisenberg_irrep(p, n, f, eps, DESK_CAP).unwrap()
    }

    #[test]
    fn models_have_stated_order() {
        for (p, n, f, e) in [(3, 1, 1, None), (2, 2, 1, Some(Eps::Minus)), (2, 2, 1, Some(Eps::Plus)), (3, 1, 2, None)] {
            let m = model(p, n, f, e);
            let mut gens = m.generator_images().unwrap();
            gens.push(m.central_generator().unwrap());
            let grp = closure(&gens, 1 << 20).unwrap();
            assert_eq!(grp.order() as u64, m.image_order, "{p} {n} {f}");
        }
        let m = model(5, 2, 1, None);
        assert_eq!(m.dim, 25);
        assert!(matches!(heisenberg_irrep(3, 4, 1, None, DESK_CAP), Err(Error::CapExceeded(_))));
        assert!(heisenberg_irrep(2, 2, 1, None, DESK_CAP).is_err());
    }

    #[test]
    fn identity_intertwiner_is_scalar() {
        let m = model(3, 2, 1, None);
        let id = FqMat::identity(m.field(), 4);
        let pm = outer_intertwiner(&m, &id).unwrap();
        assert!(pm.is_scalar());
        let s = projective_spectrum(&m, &pm).unwrap();
        assert_eq!(s.mult(UnityClass::ONE), 9);
        let (e, o) = sp_halves(&m, &pm).unwrap();
        assert_eq!((e, o), (Cyc::int(5), Cyc::int(4)));
    }

    #[test]
    fn non_symplectic_rejected() {
        let m = model(3, 1, 1, None);
        let g = FqMat::from_rows(m.field(), &[vec![1, 1], vec![0, 2]]).unwrap();
        assert!(matches!(outer_intertwiner(&m, &g), Err(Error::Domain(_))));
    }

    #[test]
    fn intertwiner_relation_holds() {
        let m = model(3, 1, 1, None);
        let g = FqMat::from_rows(m.field(), &[vec![1, 1], vec![0, 1]]).unwrap();
        let pm = outer_intertwiner(&m, &g).unwrap().to_cyc();
        for v in m.generator_vectors() {
            let h = m.rho(v).unwrap().to_cyc(3);
            let gv = m.apply(&g, v);
            let h2 = m.rho(&gv).unwrap().to_cyc(3);
            assert_eq!(pm.mul(&h), h2.mul(&pm));
        }
    }

    #[test]
    fn monomial_ratio() {
        let a = MonoMat::new(vec![1, 0], vec![UnityClass::new(1, 4), UnityClass::new(1, 4)]).unwrap();
        let b = MonoMat::new(vec![1, 0], vec![UnityClass::ONE, UnityClass::ONE]).unwrap();
        assert_eq!(ratio(&a, &b, 4).unwrap(), 1);
        let c = MonoMat::new(vec![1, 0], vec![UnityClass::ONE, UnityClass::new(1, 2)]).unwrap();
        assert!(ratio(&a, &c, 4).is_err());
        assert!(a.op(&b).perm() == [0, 1]);
    }

    fn spectrum_of(values: &[(i64, u64)]) -> Spectrum {
        Spectrum::from_values(values.iter().map(|&(a, d)| UnityClass::new(a, d)))
    }

    #[test]
    fn extraspecial_minus_c5() {
        let m = model(2, 2, 1, Some(Eps::Minus));
        let g = orthogonal_elements(2, Eps::Minus, 1000)
            .unwrap()
            .into_iter()
            .find(|g| g.order().unwrap() == 5)
            .unwrap();
        let pm = outer_intertwiner(&m, &g).unwrap();
        let s = projective_spectrum(&m, &pm).unwrap();
        assert_eq!(s, spectrum_of(&[(1, 5), (2, 5), (3, 5), (4, 5)]).canonical_rotation());
        assert!(s.is_simple());
    }

    #[test]
    fn extraspecial_plus_c3() {
        let m = model(2, 2, 1, Some(Eps::Plus));
        let g = sp_torus_plus(2, 2).unwrap();
        assert_eq!(g.order().unwrap(), 3);
        let pm = outer_intertwiner(&m, &g).unwrap();
        let s = projective_spectrum(&m, &pm).unwrap();
        assert_eq!(s, spectrum_of(&[(0, 1), (0, 1), (1, 3), (2, 3)]).canonical_rotation());
        assert!(!s.is_simple());
    }

    #[test]
    fn sp45_minus_torus_simple_on_halves() {
        let m = model(5, 2, 1, None);
        let g = sp_torus_minus(2, 5).unwrap();
        let pm = outer_intertwiner(&m, &g).unwrap();
        let (e, o) = half_spectra(&m, &pm).unwrap();
        assert_eq!((e.dim(), o.dim()), (13, 12));
        assert!(e.is_simple() && o.is_simple());
        assert!(half_identity_holds(&m, &g.pow(2)).unwrap());
    }

    #[test]
    fn half_identity_sp23_exhaustive() {
        let m = model(3, 1, 1, None);
        let mut n_odd = 0;
        for g in sp_elements(1, 3, 100).unwrap() {
            if g.order().unwrap() % 2 == 1 {
                n_odd += 1;
                assert!(half_identity_holds(&m, &g).unwrap());
            } else if g.order().unwrap() == 2 {
                // the central involution acts by ±1 on the halves
                let (e, o) = sp_halves(&m, &outer_intertwiner(&m, &g).unwrap()).unwrap();
                assert_eq!((&e - &o).abs2(), Cyc::int(9));
            }
        }
        assert_eq!(n_odd, 9);
    }

    #[test]
    fn composition_is_projective() {
        let m = model(3, 1, 1, None);
        let els = sp_elements(1, 3, 100).unwrap();
        for g in els.iter().step_by(5) {
            for h in els.iter().step_by(7) {
                let a = outer_intertwiner(&m, g).unwrap().to_cyc();
                let b = outer_intertwiner(&m, h).unwrap().to_cyc();
                let c = outer_intertwiner(&m, &g.mul(h)).unwrap();
                let prod = a.mul(&b);
                let (i, j) = (0..9).flat_map(|i| (0..9).map(move |j| (i, j))).find(|&(i, j)| c.get(i, j).is_some()).unwrap();
                let scale = prod.get(i, j).mul_root(-c.get(i, j).unwrap());
                assert_eq!(prod, c.to_cyc().scale(&scale));
            }
        }
    }

    /// Number of w with Q(w) = 0, read off from squares of the lifts.
    fn singular_count(m: &HeisenbergModel) -> usize {
        let two_n = 2 * m.n;
        (0..1usize << two_n)
            .filter(|&code| {
                let w: Vec<Fq> = (0..two_n).map(|i| ((code >> i) & 1) as Fq).collect();
                let x = m.rho(&w).unwrap();
                x.op(&x).is_identity()
            })
            .count()
    }

    #[test]
    fn eps_is_multiplicative() {
        for (e1, e2) in [(Eps::Plus, Eps::Plus), (Eps::Plus, Eps::Minus), (Eps::Minus, Eps::Minus)] {
            let a = model(2, 2, 1, Some(e1));
            let b = model(2, 1, 1, Some(e2));
            // squares of tensor products multiply, so Q adds over the blocks
            let (za, zb) = (singular_count(&a), singular_count(&b));
            let (na, nb) = (16 - za, 4 - zb);
            let zeros = za * zb + na * nb;
            let e = e1 * e2;
            let expect = (1usize << 5) as i64 + e.sign() * (1 << 2);
            assert_eq!(zeros as i64, expect, "{e1} {e2}");
            assert_eq!(singular_count(&model(2, 3, 1, Some(e))), zeros);
        }
    }

    #[test]
    fn rescaling_invariance() {
        let m = model(5, 2, 1, None);
        let pm = outer_intertwiner(&m, &sp_torus_plus(2, 5).unwrap()).unwrap();
        let mut scaled = pm.clone();
        scaled.entries.iter_mut().flatten().for_each(|e| *e = (*e + 2) % 5);
        let s = projective_spectrum(&m, &pm).unwrap();
        assert_eq!(projective_spectrum(&m, &scaled).unwrap(), s);
        assert_eq!(s.canonical_rotation(), s);
    }
}
