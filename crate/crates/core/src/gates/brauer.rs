use serde::{Deserialize, Serialize};

use crate::algebra::Cyc;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTrace {
    pub id: String,
    pub p_class: bool,
    pub trace: Cyc,
}

/// Character values of one representation on a list of classes; the first class is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceTable {
    #[serde(default)]
    pub label: String,
    pub degree: i64,
    pub classes: Vec<ClassTrace>,
}

impl TraceTable {
    pub fn new(label: &str, classes: Vec<ClassTrace>) -> Result<TraceTable> {
        let degree = classes
            .first()
            .and_then(|c| c.trace.as_integer())
            .ok_or_else(|| Error::Domain(format!("{label}: first class must be the identity with an integer trace")))?;
        let t = TraceTable { label: label.to_string(), degree, classes };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let first = self.classes.first().ok_or_else(|| Error::Domain(format!("{}: no classes", self.label)))?;
        if first.trace != Cyc::int(self.degree) || !first.p_class {
            return Err(Error::Domain(format!(
                "{}: degree {} differs from the trace at the identity class {}",
                self.label, self.degree, first.id
            )));
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<TraceTable> {
        let t: TraceTable = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub a: i64,
    pub d: i64,
    pub m: i64,
}

/// If Trace(T2) = a + Trace(T1) on every flagged p-class, the type (D1, m1) of the sheaf
/// realizing T1 moves to (D1 + a, m1 + a) for T2.
pub fn brauerp_transfer(t1: &TraceTable, t2: &TraceTable, type1: (i64, i64)) -> Result<Option<Transfer>> {
    t1.validate()?;
    t2.validate()?;
    let same_classes = t1.classes.len() == t2.classes.len()
        && t1.classes.iter().zip(&t2.classes).all(|(x, y)| x.id == y.id && x.p_class == y.p_class);
    if !same_classes {
        return Err(Error::Domain(format!("{} and {} do not share class indexing and p-class flags", t1.label, t2.label)));
    }
    let (d1, m1) = type1;
    if d1 <= m1 || m1 < 0 {
        return Err(Error::Type(d1.max(0) as usize, m1.max(0) as usize));
    }
    if t1.degree != d1 {
        return Err(Error::Domain(format!("{} has degree {} but the sheaf has rank {d1}", t1.label, t1.degree)));
    }
    let a = t2.degree - t1.degree;
    let shift = Cyc::int(a);
    let constant = t1.classes.iter().zip(&t2.classes).filter(|(x, _)| x.p_class).all(|(x, y)| &y.trace - &x.trace == shift);
    if !constant {
        return Ok(None);
    }
    if m1 + a < 0 {
        return Err(Error::Domain(format!("shift a = {a} gives a negative number of downstairs characters")));
    }
    Ok(Some(Transfer { a, d: d1 + a, m: m1 + a }))
}

fn ct(id: &str, p_class: bool, trace: Cyc) -> ClassTrace {
    ClassTrace { id: id.to_string(), p_class, trace }
}

/// M11 characters of degree 11, 10 (rational) and 10 (non-real) on all classes; the
/// 3-classes are 1A and 3A.
pub fn m11_trace_tables() -> [TraceTable; 3] {
    let ids = ["1A", "2A", "3A", "4A", "5A", "6A", "8A", "8B", "11A", "11B"];
    let i_sqrt2 = Cyc::from_group_ring(8, &[0, 1, 0, 1, 0, 0, 0, 0], 1);
    let ints = |v: [i64; 10]| v.map(Cyc::int).to_vec();
    let mut nonreal = ints([10, -2, 1, 0, 0, 1, 0, 0, -1, -1]);
    nonreal[6] = i_sqrt2.clone();
    nonreal[7] = -&i_sqrt2;
    let make = |label: &str, vals: Vec<Cyc>| {
        let classes = ids.iter().zip(vals).map(|(id, t)| ct(id, *id == "1A" || *id == "3A", t)).collect();
        TraceTable::new(label, classes).expect("embedded table")
    };
    [
        make("M11 degree 11", ints([11, 3, 2, -1, 1, 0, -1, -1, 0, 0])),
        make("M11 degree 10a", ints([10, 2, 1, 2, 0, -1, 0, 0, -1, -1])),
        make("M11 degree 10b", nonreal),
    ]
}

/// GL2(q) characters on its p-elements (identity and a transvection): principal series
/// (q+1), twisted Steinberg (q), cuspidal (q-1), linear (1).
pub fn gl2_unipotent_tables(q: i64) -> [TraceTable; 4] {
    let make = |label: &str, deg: i64, u: i64| {
        TraceTable::new(label, vec![ct("1", true, Cyc::int(deg)), ct("u", true, Cyc::int(u))]).expect("embedded table")
    };
    [
        make("GL2 principal series", q + 1, 1),
        make("GL2 twisted Steinberg", q, 0),
        make("GL2 cuspidal", q - 1, -1),
        make("GL2 linear", 1, 1),
    ]
}
