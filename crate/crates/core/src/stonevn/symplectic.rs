//! Symplectic and orthogonal groups acting on the models, their cyclic tori, and the
//! simple-spectrum enumerations and oracle.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{half_spectra, heisenberg_irrep, outer_intertwiner, sp_halves, Eps, HeisenbergModel};
use crate::algebra::arith::{gcd, least_prime_divisor};
use crate::algebra::{field_of_order, Cyc, FieldSpec, Fq, FqMat};
use crate::error::{Error, Result};
use crate::weilgl::groups::{invariant_form, standard_frame, FrameSearch};
use crate::weilgl::tori::{poly_with_root_order, primitive_companion};

/// Gram matrix [[0, I], [-I, 0]] of the standard symplectic form on F_q^{2n}.
pub fn sp_gram(k: &Arc<FieldSpec>, n: usize) -> FqMat {
    let mut m = FqMat::zero(k, 2 * n);
    for i in 0..n {
        m.set(i, n + i, 1);
        m.set(n + i, i, k.neg(1));
    }
    m
}

pub(crate) fn is_symplectic(g: &FqMat) -> bool {
    let om = sp_gram(g.field(), g.n() / 2);
    g.n().is_multiple_of(2) && g.transpose().mul(&om).mul(g) == om
}

/// Q_ε(a, b) = a·b, plus a_1 + b_1 when ε = −, on F_2^{2n}.
pub fn quadratic_value(eps: Eps, w: &[Fq]) -> u8 {
    let n = w.len() / 2;
    let mut s = (0..n).map(|i| w[i] & w[n + i]).fold(0, |a, x| a ^ x);
    if eps == Eps::Minus {
        s ^= w[0] ^ w[n];
    }
    s as u8
}

pub(crate) fn is_orthogonal(eps: Eps, g: &FqMat) -> bool {
    let m = g.n();
    if g.field().q() != 2 || m % 2 == 1 || g.det() == 0 {
        return false;
    }
    (0..1usize << m).all(|code| {
        let w: Vec<Fq> = (0..m).map(|i| ((code >> i) & 1) as Fq).collect();
        let gw: Vec<Fq> = (0..m).map(|i| (0..m).fold(0, |acc, j| acc ^ (g.get(i, j) & w[j]))).collect();
        quadratic_value(eps, &w) == quadratic_value(eps, &gw)
    })
}

/// |Sp_{2n}(q)|.
pub fn sp_order(n: usize, q: u64) -> u128 {
    let q = q as u128;
    (1..=n as u32).fold(q.pow((n * n) as u32), |acc, i| acc * (q.pow(2 * i) - 1))
}

/// Every element of Sp_{2n}(q).
pub fn sp_elements(n: usize, q: u64, cap: usize) -> Result<Vec<FqMat>> {
    if sp_order(n, q) > cap as u128 {
        return Err(Error::CapExceeded(cap));
    }
    let k = field_of_order(q)?;
    let om = sp_gram(&k, n);
    let search = FrameSearch::new(&k, 2 * n, Some((&om, 1, &om)));
    let mut out = vec![];
    search.run(
        &mut |cols| {
            out.push(search.matrix(cols));
            true
        },
        None,
    );
    Ok(out)
}

fn sp_sample(n: usize, q: u64, count: usize, seed: u64) -> Result<Vec<FqMat>> {
    let k = field_of_order(q)?;
    let om = sp_gram(&k, n);
    let search = FrameSearch::new(&k, 2 * n, Some((&om, 1, &om)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let offsets: Vec<usize> = (0..2 * n).map(|_| rng.gen_range(0..search.vectors.len())).collect();
        search.run(
            &mut |cols| {
                out.push(search.matrix(cols));
                false
            },
            Some(&offsets),
        );
    }
    Ok(out)
}

/// Every element of O^ε_{2n}(2), as the subgroup of Sp_{2n}(2) preserving Q_ε.
pub fn orthogonal_elements(n: usize, eps: Eps, cap: usize) -> Result<Vec<FqMat>> {
    Ok(sp_elements(n, 2, cap)?.into_iter().filter(|g| is_orthogonal(eps, g)).collect())
}

/// diag(C, C^{-T}) for a Singer cycle C of GL_n(q): order q^n − 1.
pub fn sp_torus_plus(n: usize, q: u64) -> Result<FqMat> {
    let k = field_of_order(q)?;
    let c = primitive_companion(&k, n as u32)?;
    Ok(c.direct_sum(&c.inverse()?.transpose()))
}

/// Element of order q^m + 1 acting irreducibly on F_q^{2m}, with an invariant alternating form.
fn minus_block(k: &Arc<FieldSpec>, m: usize) -> Result<(FqMat, FqMat)> {
    let q = k.q();
    let f = poly_with_root_order(k, 2 * m as u32, q.pow(m as u32) as u128 + 1)?;
    let c = FqMat::companion(k, &f);
    let b = invariant_form(&c, 1, |b| {
        let s = b.add(&b.transpose());
        s.entries().iter().all(|&x| x == 0) && (0..b.n()).all(|i| b.get(i, i) == 0)
    })?;
    Ok((c, b))
}

fn to_standard(g: &FqMat, b: &FqMat) -> Result<FqMat> {
    let om = sp_gram(g.field(), g.n() / 2);
    let p = standard_frame(b, 1, &om)?;
    Ok(p.inverse()?.mul(g).mul(&p))
}

/// Generator of the cyclic torus of order q^n + 1 in Sp_{2n}(q).
pub fn sp_torus_minus(n: usize, q: u64) -> Result<FqMat> {
    let k = field_of_order(q)?;
    let (c, b) = minus_block(&k, n)?;
    to_standard(&c, &b)
}

/// Generator of T_{a,b} < Sp_{2a}(q) × Sp_{2b}(q), with projective order (q^a+1)(q^b+1)/2.
pub fn sp_torus_beta(a: usize, b: usize, q: u64) -> Result<FqMat> {
    let k = field_of_order(q)?;
    let (ca, ba) = minus_block(&k, a)?;
    let (cb, bb) = minus_block(&k, b)?;
    let target = (q.pow(a as u32) + 1) * (q.pow(b as u32) + 1) / 2;
    let ob = q.pow(b as u32) + 1;
    let g = (1..=2)
        .flat_map(|s| (1..ob).filter(|&t| gcd(t, ob) == 1).map(move |t| (s, t)))
        .map(|(s, t)| ca.pow(s).direct_sum(&cb.pow(t)))
        .find(|g| g.central_order() == target)
        .ok_or_else(|| Error::Domain(format!("no generator of T_{{{a},{b}}}")))?;
    to_standard(&g, &ba.direct_sum(&bb))
}

/// Central orders allowed for simple spectrum on the extraspecial normalizer: p^n + 1 for
/// odd p, and products of pairwise coprime 2^{a_i} + 1 over strictly decreasing a_i with
/// Σ a_i = n for p = 2.
pub fn ss_extr_enumerate(p: u64, n: u32, override_range: bool) -> Result<Vec<u64>> {
    let pn = p.checked_pow(n).ok_or_else(|| Error::Domain("p^n overflows".into()))?;
    if pn < 11 && !override_range {
        return Err(Error::Excluded(format!("p^n = {pn} < 11")));
    }
    if p != 2 {
        return Ok(vec![pn + 1]);
    }
    fn go(rest: u32, max: u32, parts: &mut Vec<u64>, out: &mut Vec<u64>) {
        if rest == 0 {
            out.push(parts.iter().product());
            return;
        }
        for a in (1..=rest.min(max)).rev() {
            let t = (1u64 << a) + 1;
            if parts.iter().all(|&s| gcd(s, t) == 1) {
                parts.push(t);
                go(rest - a, a - 1, parts, out);
                parts.pop();
            }
        }
    }
    let mut out = vec![];
    go(n, n, &mut vec![], &mut out);
    Ok(out)
}

/// One simple-spectrum type of PSp_{2n}(q).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpClass {
    pub n: usize,
    pub q: u64,
    /// "alpha" or "beta".
    pub kind: String,
    pub torus: String,
    pub central_order: u64,
    /// (a, b) for the β type, with 2·gcd(a,b) | a.
    pub blocks: Option<(usize, usize)>,
    /// Weil-module dimensions on which the spectrum can be simple (those ≤ the central order).
    pub dims: Vec<u64>,
}

/// The torus types for PSp_{2n}(q), q odd, with warnings for pairs outside the
/// hypergeometric non-existence range.
pub fn ss_sp_enumerate(n: usize, q: u64) -> Result<(Vec<SpClass>, Vec<String>)> {
    if q.is_multiple_of(2) || n < 2 {
        return Err(Error::Domain("need q odd and n >= 2".into()));
    }
    if (n, q) == (2, 3) {
        return Err(Error::Excluded("(n,q) = (2,3)".into()));
    }
    let qn = q.pow(n as u32);
    let halves = [qn.div_ceil(2), (qn - 1) / 2];
    let dims = |o: u64| halves.iter().copied().filter(|&d| d <= o).collect::<Vec<_>>();
    let mk = |kind: &str, torus: String, o: u64, blocks| SpClass {
        n,
        q,
        kind: kind.into(),
        torus,
        central_order: o,
        blocks,
        dims: dims(o),
    };
    let mut out = vec![
        mk("alpha", "T_+".into(), (qn - 1) / 2, None),
        mk("alpha", "T_-".into(), qn.div_ceil(2), None),
    ];
    for b in 1..n {
        let a = n - b;
        let e = gcd(a as u64, b as u64) as usize;
        if a.is_multiple_of(2 * e) {
            let o = (q.pow(a as u32) + 1) * (q.pow(b as u32) + 1) / 2;
            out.push(mk("beta", format!("T_{{{a},{b}}}"), o, Some((a, b))));
        }
    }
    let mut warnings = vec![];
    if (n, q) == (3, 3) {
        warnings.push("(n,q) = (3,3): the T_+ type with central order (q^n-1)/2 is not ruled out for hypergeometric sheaves".into());
    }
    Ok((out, warnings))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// Torus types, controls and the half-trace identity; q^n ≤ 32.
    Full,
    /// Torus types and controls only; q^n ≤ 128.
    Targeted,
}

pub const FULL_CAP: u64 = 32;
pub const TARGETED_CAP: u64 = 128;
const HALF_IDENTITY_EXHAUSTIVE: usize = 100_000;
const HALF_IDENTITY_SAMPLE: usize = 200;
const SAMPLE_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, Serialize)]
pub struct HalfResult {
    pub dim: u64,
    pub simple: bool,
    /// None when nothing is forced either way.
    pub expected_simple: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpTypeResult {
    pub class: SpClass,
    pub order: u64,
    pub projective_order: u64,
    pub even: HalfResult,
    pub odd: HalfResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpControl {
    pub label: String,
    pub projective_order: u64,
    pub even: HalfResult,
    pub odd: HalfResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpOracleReport {
    pub n: usize,
    pub q: u64,
    pub mode: OracleMode,
    pub warnings: Vec<String>,
    pub types: Vec<SpTypeResult>,
    pub controls: Vec<SpControl>,
    /// Odd-order elements on which |tr_even − tr_odd|² = 1 was checked, and failures.
    pub half_identity_checked: usize,
    pub half_identity_failures: usize,
    pub half_identity_exhaustive: bool,
    pub agrees: bool,
}

fn halves_of(model: &HeisenbergModel, g: &FqMat, expect: impl Fn(u64, u64) -> Option<bool>) -> Result<(u64, HalfResult, HalfResult)> {
    let pm = outer_intertwiner(model, g)?;
    let (ev, od) = half_spectra(model, &pm)?;
    let po = g.central_order();
    let half = |s: &crate::repkit::Spectrum| HalfResult { dim: s.dim(), simple: s.is_simple(), expected_simple: expect(s.dim(), po) };
    Ok((po, half(&ev), half(&od)))
}

/// |tr_even(g) − tr_odd(g)|² = 1 for the unitary normalization of the intertwiner of g.
pub fn half_identity_holds(model: &HeisenbergModel, g: &FqMat) -> Result<bool> {
    let pm = outer_intertwiner(model, g)?;
    let (e, o) = sp_halves(model, &pm)?;
    Ok((&e - &o).abs2() == Cyc::int(1))
}

/// Checks |tr_even − tr_odd|² = 1 on the odd-order parts of all elements of Sp_{2n}(q)
/// (or of a seeded sample when the group is large). Returns (checked, failures, exhaustive).
pub fn half_identity_sweep(model: &HeisenbergModel) -> Result<(usize, usize, bool)> {
    let (n, q) = (model.n, model.q);
    let exhaustive = sp_order(n, q) <= HALF_IDENTITY_EXHAUSTIVE as u128;
    let elems = if exhaustive {
        sp_elements(n, q, HALF_IDENTITY_EXHAUSTIVE)?
    } else {
        sp_sample(n, q, HALF_IDENTITY_SAMPLE, SAMPLE_SEED)?
    };
    let mut failures = 0;
    for g in &elems {
        let o = g.order()?;
        let h = g.pow(o & o.wrapping_neg());
        if !half_identity_holds(model, &h)? {
            failures += 1;
        }
    }
    Ok((elems.len(), failures, exhaustive))
}

/// Builds each torus generator, checks simplicity of its projective spectrum on the two
/// halves of the model, runs non-simple controls, and checks the half-trace identity.
pub fn ss_sp_oracle(n: usize, q: u64, mode: OracleMode) -> Result<SpOracleReport> {
    let (classes, warnings) = ss_sp_enumerate(n, q)?;
    let k = field_of_order(q)?;
    let cap = match mode {
        OracleMode::Full => FULL_CAP,
        OracleMode::Targeted => TARGETED_CAP,
    };
    let model = heisenberg_irrep(k.p(), n, k.f(), None, cap)?;
    let mut types = vec![];
    let mut controls = vec![];
    for class in &classes {
        let g = match (class.torus.as_str(), class.blocks) {
            ("T_+", _) => sp_torus_plus(n, q)?,
            ("T_-", _) => sp_torus_minus(n, q)?,
            (_, Some((a, b))) => sp_torus_beta(a, b, q)?,
            _ => unreachable!(),
        };
        let dims = class.dims.clone();
        let (po, even, odd) = halves_of(&model, &g, |d, _| Some(dims.contains(&d)))?;
        if po != class.central_order {
            return Err(Error::OracleMismatch(format!("{} generator has projective order {po}", class.torus)));
        }
        types.push(SpTypeResult { class: class.clone(), order: g.order()?, projective_order: po, even, odd });
        // a proper power: forced non-simple once its projective order drops below the dimension
        let d = least_prime_divisor(po)?;
        let h = g.pow(d);
        let (po2, even, odd) = halves_of(&model, &h, |dim, o| (dim > o).then_some(false))?;
        controls.push(SpControl { label: format!("{}^{d}", class.torus), projective_order: po2, even, odd });
    }
    let id = FqMat::identity(&k, 2 * n);
    let (po, even, odd) = halves_of(&model, &id, |d, _| Some(d == 1))?;
    controls.push(SpControl { label: "identity".into(), projective_order: po, even, odd });
    let mut tv = FqMat::identity(&k, 2 * n);
    tv.set(n, 0, 1);
    let (po, even, odd) = halves_of(&model, &tv, |d, _| Some(d == 1))?;
    controls.push(SpControl { label: "transvection".into(), projective_order: po, even, odd });

    let (checked, failures, exhaustive) = match mode {
        OracleMode::Full => half_identity_sweep(&model)?,
        OracleMode::Targeted => (0, 0, false),
    };
    let ok = |h: &HalfResult| h.expected_simple.is_none_or(|e| e == h.simple);
    let agrees = failures == 0
        && types.iter().all(|t| ok(&t.even) && ok(&t.odd))
        && controls.iter().all(|c| ok(&c.even) && ok(&c.odd));
    Ok(SpOracleReport {
        n,
        q,
        mode,
        warnings,
        types,
        controls,
        half_identity_checked: checked,
        half_identity_failures: failures,
        half_identity_exhaustive: exhaustive,
        agrees,
    })
}
