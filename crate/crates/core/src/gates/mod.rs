//! Arithmetic gates: Landau's function, primitive prime divisors, element-order and degree
//! bounds, characteristic determination and trace transfer.

mod brauer;
mod family;

use serde::Serialize;

pub use brauer::{brauerp_transfer, gl2_unipotent_tables, m11_trace_tables, ClassTrace, TraceTable, Transfer};
pub use family::{
    char_sheaf1_family, char_sheaf_decision, meo_bound, min_dim, CharDecision, GroupFamily, Kind, Quantity, CHAR_SHEAF1_EXCEPTIONS,
    CHAR_SHEAF2_DEGREES,
};

use crate::algebra::arith::{gcd, is_prime};
use crate::chargeom::HypDescriptor;
use crate::error::{Error, Result};

/// Landau's function: the largest lcm of a partition of n, which is meo(S_n).
pub fn landau(n: u32) -> Result<u128> {
    if n == 0 {
        return Err(Error::Domain("landau(n) needs n >= 1".into()));
    }
    let n = n as usize;
    let mut best = vec![1u128; n + 1];
    for p in (2..=n as u64).filter(|&p| is_prime(p)) {
        for s in (p as usize..=n).rev() {
            let mut pk = p as usize;
            while pk <= s {
                let cand = best[s - pk]
                    .checked_mul(pk as u128)
                    .ok_or_else(|| Error::Domain(format!("landau({n}) overflows 128 bits")))?;
                best[s] = best[s].max(cand);
                pk *= p as usize;
            }
        }
    }
    Ok(best[n])
}

/// Least primitive prime divisor of p^k - 1, or `None` in the Zsigmondy exceptions.
pub fn ppd(p: u64, k: u32) -> Result<Option<u64>> {
    if !is_prime(p) || k == 0 {
        return Err(Error::Domain(format!("ppd({p},{k}) needs p prime and k >= 1")));
    }
    let pk = p.checked_pow(k).ok_or_else(|| Error::Domain(format!("{p}^{k} exceeds 64 bits")))?;
    let mut m = pk - 1;
    for j in (1..k).filter(|j| k.is_multiple_of(*j)) {
        let mut g = gcd(m, p.pow(j) - 1);
        while g > 1 {
            m /= g;
            g = gcd(m, g);
        }
    }
    if m == 1 {
        return Ok(None);
    }
    // every prime left in m is 1 mod k
    let step = k as u64;
    let mut l = if k == 1 { 2 } else { step + 1 };
    while l.saturating_mul(l) <= m {
        if m % l == 0 {
            return Ok(Some(l));
        }
        l += if k == 1 { 1 } else { step };
    }
    Ok(Some(m))
}

/// d(S) <= dim V <= o(g) <= meo(G/Z(G)).
pub fn order_chain(d_s: u64, dim_v: u64, obar: u64, meo: u64) -> bool {
    d_s <= dim_v && dim_v <= obar && obar <= meo
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Bound1Verdict {
    /// d < W: the representation is tame with cyclic image of order prime to p; if
    /// irreducible it is one-dimensional.
    TameCyclic { d: u64, w: u64, text: String },
    NoConclusion { d: u64, w: u64 },
}

pub fn bound1_consequence(d: u64, w: u64) -> Bound1Verdict {
    if d < w {
        Bound1Verdict::TameCyclic { d, w, text: "tame => cyclic p'-image; irreducible => d = 1".into() }
    } else {
        Bound1Verdict::NoConclusion { d, w }
    }
}

/// W <= d * [G/Z(G) : R] for a linear representation of degree d.
pub fn bound2_check(w: u64, d: u64, index: u64) -> bool {
    w <= d * index
}

/// W <= (e^2 - 1) * [G/Z(G) : R] for a projective representation of degree e.
pub fn bound2_projective_check(w: u64, e: u64, index: u64) -> bool {
    w <= (e * e - 1) * index
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub clause: &'static str,
    pub assertion: String,
}

/// Constraints any finite geometric monodromy group of `h` must satisfy; Q is the image
/// of wild inertia at infinity.
pub fn p_center_constraints(h: &HypDescriptor) -> Vec<Constraint> {
    let (p, d, m, w) = (h.p(), h.d() as u64, h.m(), h.w());
    let mut out = vec![];
    let mut push = |clause, s: &str| out.push(Constraint { clause, assertion: s.to_string() });
    if m > 0 {
        push("i", "Q ∩ Z(G) = 1");
    } else if d > 1 {
        push("ii", "Q is not contained in Z(G)");
        if d % p != 0 {
            push("ii", "Q ∩ Z(G) = 1");
        } else {
            push("ii", "Q ∩ Z(G) = 1 or Q ∩ Z(G) ≅ C_p");
        }
    }
    if d > 1 {
        push("iii", "1 ≠ Q/(Q ∩ Z(G)) embeds in G/Z(G); p divides |G/Z(G)|");
    }
    if w >= 2 {
        push("iv", "det(G) is a p'-group");
        if d % p != 0 {
            push("iv", "Z(G) is a p'-group");
        }
        push("generation", "G = O^p(G)");
    }
    if p == 2 {
        push("v", "traces are 2-rational; the 2-part of |Z(G)| is at most 2");
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct M12Case {
    pub case: u8,
    pub hypotheses: &'static str,
    pub status: &'static str,
    pub note: &'static str,
}

/// Case analysis for a hypergeometric sheaf of rank at most 12 with S = M12.
pub fn m12_cases() -> Vec<M12Case> {
    vec![
        M12Case {
            case: 1,
            hypotheses: "D = 12, o(g0) = 24, G/Z(G) = M12.2",
            status: "excluded",
            note: "p = 11, W = 10 forces Kummer induction from rank 6",
        },
        M12Case {
            case: 2,
            hypotheses: "D = 10",
            status: "open in source",
            note: "p = 2, W = 10, Kloosterman with upstairs Char*(11)·χ; presumably leads to SU5(2)",
        },
        M12Case {
            case: 3,
            hypotheses: "D = 11, o(g0) = 11",
            status: "excluded",
            note: "p = 2, W = 10 forces the trivial character both upstairs and downstairs",
        },
    ]
}
