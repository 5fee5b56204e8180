use serde::Serialize;

use super::tables::RowStatus;
use crate::algebra::arith::{gcd, p_prime_part};
use crate::chargeom::HypDescriptor;

/// One row of the catalog of hypergeometric sheaves in non-generic cases.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub simple: &'static str,
    pub group: &'static str,
    pub p: u64,
    pub rank: usize,
    /// Marker printed next to the rank, verbatim ("(WS)", a reference, or empty).
    pub marker: &'static str,
    pub status: RowStatus,
    pub upstairs: &'static str,
    pub downstairs: &'static str,
    /// Conjectured image of I(infinity), e.g. "3^2:8".
    pub image: &'static str,
}

type Raw = (&'static str, &'static str, u64, usize, &'static str, &'static str, &'static str, &'static str);

const ROWS: &[Raw] = &[
    ("M11", "S", 3, 10, "(WS)", "Char*(11)", "Char(2)", "3^2:8"),
    ("M11", "S", 3, 10, "Lemma m11", "Char*(11)", "xi(8),xi(8)^3", "3^2:8"),
    ("M11", "S", 3, 11, "(WS)", "Char(11)", "Char(4)\\{1}", "3^2:8"),
    ("M22", "2S", 2, 10, "companion:sporadic", "Char*(11)", "xi(7),xi(7)^2,xi(7)^4", "2^3:7"),
    ("M23", "S", 2, 22, "", "Char*(23)", "Char(15)\\Char*(15)", "2^4:15"),
    ("M24", "S", 2, 23, "(WS)", "Char(23)", "Char*(3)", "2^6:21"),
    ("McL", "S.2", 3, 22, "companion:sporadic", "Char(22)", "Char*(5)", "3^{1+4}:20"),
    ("McL", "S.2", 5, 22, "companion:sporadic", "Char(22)", "Char*(3)", "5^{1+2}:24"),
    ("J2", "2S.2", 5, 14, "companion:sporadic", "Char(28)\\Char(14)", "xi(8),xi(8)^-1", "5^2:24"),
    ("J3", "3S", 2, 18, "companion:sporadic", "xi(3)*Char*(19)", "1,xi(5),xi(5)^-1", "2^4:15"),
    ("Ru", "2S", 5, 28, "companion:sporadic", "Char*(29)", "xi(12),xi(12)^3,xi(12)^5,xi(12)^9", "5^2:24"),
    ("PSU4(3)", "6_1.S", 3, 6, "companion:sporadic", "Char*(7)", "xi(2)", "3^4:10"),
    ("Sp6(2)", "2S", 7, 8, "", "Char(9)\\{1}", "Char(2)", "7:6"),
    ("O8+(2)", "2S.2", 3, 8, "companion:sporadic", "Char*(20)", "Char(2)", "3^{1+2}:8"),
    ("O8+(2)", "2S.2", 7, 8, "companion:sporadic", "Char*(20)", "Char(2)", "7:6"),
    ("PSL3(4)", "2S.2_2", 3, 10, "", "Char(14)\\{1,xi(7),xi(7)^2,xi(7)^4}", "Char*(4)", "3^2:8"),
    ("G2(4)", "2.S", 2, 12, "companion:sporadic", "Char*(13)", "Char*(3)", "2-group:15"),
    ("G2(3)", "S.2", 13, 14, "companion:sporadic", "Char(18)\\{1,xi(6),xi(6)^2,xi(6)^3}", "Char*(4)", "13:12"),
    ("2B2(8)", "S.3", 13, 14, "companion:sporadic", "Char(15)\\{1}", "xi(12),xi(12)^5", "13:12"),
];

/// Every row is conjectured to have the listed G as geometric monodromy group; rows with a
/// reference are proved. The first three rows are all covered by Lemma m11.
fn row_status(simple: &str, marker: &str) -> RowStatus {
    if simple == "M11" {
        return RowStatus::Proved("Lemma m11".into());
    }
    match marker {
        "" | "(WS)" => RowStatus::Conjectured,
        r => RowStatus::Proved(r.to_string()),
    }
}

pub fn table3_entries() -> Vec<CatalogEntry> {
    ROWS.iter()
        .map(|&(simple, group, p, rank, marker, upstairs, downstairs, image)| CatalogEntry {
            simple,
            group,
            p,
            rank,
            marker,
            status: row_status(simple, marker),
            upstairs,
            downstairs,
            image,
        })
        .collect()
}

impl CatalogEntry {
    pub fn descriptor(&self) -> crate::Result<HypDescriptor> {
        HypDescriptor::from_exprs(self.p, &[self.upstairs], &[self.downstairs])
    }

    /// (p-part, cyclic part) of the image string; the p-part is `None` for an unspecified
    /// p-group.
    pub fn image_parts(&self) -> Option<(Option<(u64, u64)>, u64)> {
        let (pp, cyc) = self.image.split_once(':')?;
        let cyc: u64 = cyc.parse().ok()?;
        if pp.ends_with("-group") {
            return Some((None, cyc));
        }
        let (base, exp) = match pp.split_once('^') {
            None => (pp, 1),
            Some((b, e)) => {
                let e = e.trim_start_matches('{').trim_end_matches('}');
                let e: u32 = e.split('+').map(|t| t.parse::<u32>().ok()).sum::<Option<u32>>()?;
                (b, e)
            }
        };
        let base: u64 = base.parse().ok()?;
        Some((Some((base, base.checked_pow(exp)?)), cyc))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Table3RowCheck {
    pub row: usize,
    pub simple: &'static str,
    pub p: u64,
    pub d: usize,
    pub m: usize,
    pub w: usize,
    pub rank_ok: bool,
    pub i0_simple: bool,
    pub wild_image_order: Option<u64>,
    pub image_p_part: Option<u64>,
    /// "pass", "fail", or "skipped: ..." for the wild-inertia order check.
    pub wild_check: String,
    pub notes: Vec<String>,
    pub errors: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table3Report {
    pub rows: Vec<Table3RowCheck>,
    pub all_pass: bool,
}

fn check_row(row: usize, e: &CatalogEntry) -> Table3RowCheck {
    let mut out = Table3RowCheck {
        row,
        simple: e.simple,
        p: e.p,
        d: 0,
        m: 0,
        w: 0,
        rank_ok: false,
        i0_simple: false,
        wild_image_order: None,
        image_p_part: None,
        wild_check: String::new(),
        notes: vec![],
        errors: vec![],
        pass: false,
    };
    let h = match e.descriptor() {
        Ok(h) => h,
        Err(err) => {
            out.errors.push(err.to_string());
            out.wild_check = "skipped: invalid descriptor".into();
            return out;
        }
    };
    (out.d, out.m, out.w) = (h.d(), h.m(), h.w());
    out.rank_ok = h.d() == e.rank;
    if !out.rank_ok {
        out.errors.push(format!("rank column {} but D = {}", e.rank, h.d()));
    }
    out.i0_simple = h.i0_simple();
    if !out.i0_simple {
        out.errors.push("upstairs characters are not pairwise distinct".into());
    }
    let Some((ppart, cyclic)) = e.image_parts() else {
        out.errors.push(format!("cannot parse image {:?}", e.image));
        return out;
    };
    if let Some((base, _)) = ppart {
        if base != e.p {
            out.errors.push(format!("image p-part has base {base}, row has p = {}", e.p));
        }
    }
    out.image_p_part = ppart.map(|x| x.1);
    let w = h.w() as u64;
    if gcd(e.p, w) == 1 {
        out.wild_image_order = h.wild_image_order();
        match (out.wild_image_order, out.image_p_part) {
            (Some(a), Some(b)) if a == b => out.wild_check = "pass".into(),
            (a, b) => {
                out.wild_check = "fail".into();
                out.errors.push(format!("wild image order {a:?} differs from image p-part {b:?}"));
            }
        }
    } else {
        out.wild_check = format!("skipped: p = {} divides W = {w}", e.p);
    }
    let w0 = p_prime_part(w, e.p);
    if cyclic % w0 != 0 {
        out.notes.push(format!("p'-part {w0} of W does not divide the cyclic part {cyclic}"));
    }
    out.pass = out.errors.is_empty();
    out
}

pub fn table3_consistency() -> Table3Report {
    let rows: Vec<_> = table3_entries().iter().enumerate().map(|(i, e)| check_row(i + 1, e)).collect();
    let all_pass = rows.iter().all(|r| r.pass);
    Table3Report { rows, all_pass }
}
