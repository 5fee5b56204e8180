//! Embedded data of the simple-spectrum tables for sporadic and small Lie-type groups.

use serde::Serialize;

/// Realization status of a representation row, read off the row markers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "ref", rename_all = "snake_case")]
pub enum RowStatus {
    /// A reference constructs a local system realizing the representation.
    Proved(String),
    /// Marked with a sharp sign: a conjectured local system exists.
    Conjectured,
    /// Marked "(-)": no hypergeometric sheaf with this monodromy group exists.
    Impossible,
    /// No marker and no reference.
    Unmarked,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Rep {
    pub group: &'static str,
    pub dim: u64,
    pub reps: u32,
    /// Marker text as printed: "#", "(-)", a reference label, or empty.
    pub marker: &'static str,
    pub status: RowStatus,
    pub ss_classes: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub simple: &'static str,
    pub meo: u64,
    pub min_degree: u64,
    pub reps: Vec<Table1Rep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table2Row {
    pub simple: &'static str,
    pub meo: u64,
    pub min_degree: u64,
}

fn status(marker: &str) -> RowStatus {
    match marker {
        "#" => RowStatus::Conjectured,
        "(-)" => RowStatus::Impossible,
        "" => RowStatus::Unmarked,
        r => RowStatus::Proved(r.to_string()),
    }
}

type RawRep = (&'static str, u64, u32, &'static str, &'static str);

const TABLE1: &[(&str, u64, u64, &[RawRep])] = &[
    (
        "A7",
        12,
        4,
        &[
            ("2A7", 4, 2, "", "9 classes"),
            ("S7", 6, 2, "", "7A, 6C, 10A, 12A (4 classes)"),
            ("3A7", 6, 2, "", "6 classes"),
            ("6A7", 6, 4, "", "15 classes"),
        ],
    ),
    ("M11", 11, 10, &[("M11", 10, 3, "#", "11AB (2 classes)"), ("M11", 11, 1, "#", "11AB (2 classes)")]),
    (
        "M12",
        12,
        10,
        &[
            ("2M12.2", 10, 4, "(-)", "11 classes"),
            ("M12", 11, 2, "(-)", "11AB (2 classes)"),
            ("2M12.2", 12, 2, "(-)", "24AB (2 classes)"),
        ],
    ),
    ("M22", 14, 10, &[("2M22.2", 10, 4, "#", "10 classes")]),
    ("M23", 23, 22, &[("M23", 22, 1, "#", "23AB (2 classes)")]),
    ("M24", 23, 23, &[("M24", 23, 1, "#", "23AB (2 classes)")]),
    (
        "J2",
        24,
        6,
        &[("2J2", 6, 2, "companion:2J2", "17 classes"), ("2J2.2", 14, 2, "#", "28AB, 24CDEF (6 classes)")],
    ),
    ("J3", 34, 18, &[("3J3", 18, 4, "", "19AB, 57ABCD (6 classes)")]),
    ("HS", 30, 22, &[("HS.2", 22, 2, "(-)", "30A")]),
    ("McL", 30, 22, &[("McL.2", 22, 2, "#", "30A, 22AB (3 classes)")]),
    ("Ru", 29, 28, &[("2Ru", 28, 1, "", "29AB, 58AB (4 classes)")]),
    ("Suz", 40, 12, &[("6Suz", 12, 2, "companion:2Co1", "57 classes")]),
    ("Co1", 60, 24, &[("2Co1", 24, 1, "companion:2Co1", "17 classes")]),
    ("Co2", 30, 23, &[("Co2", 23, 1, "companion:Co2", "23AB, 30AB (4 classes)")]),
    ("Co3", 30, 23, &[("Co3", 23, 1, "companion:Co3", "23AB, 30A (3 classes)")]),
    (
        "PSL3(4)",
        21,
        6,
        &[
            ("6S.2_1", 6, 4, "", "many classes"),
            ("4_1S.2_3", 8, 8, "", "12 classes"),
            ("2S.2_2", 10, 4, "#", "14CDEF (4 classes)"),
        ],
    ),
    ("PSU4(3)", 28, 6, &[("6_1S.2_2", 6, 4, "#", "many classes")]),
    (
        "Sp6(2)",
        15,
        7,
        &[
            ("Sp6(2)", 7, 1, "", "7A, 8B, 9A, 12C, 15A"),
            ("2Sp6(2)", 8, 1, "#", "8 classes"),
            ("Sp6(2)", 15, 1, "(-)", "15A"),
        ],
    ),
    ("O8+(2)", 30, 8, &[("2O8+(2).2", 8, 1, "#", "22 classes")]),
    ("2B2(8)", 15, 14, &[("2B2(8).3", 14, 6, "#", "15AB (2 classes)")]),
    ("G2(3)", 18, 14, &[("G2(3).2", 14, 2, "#", "14A, 18ABC (4 classes)")]),
    ("G2(4)", 24, 12, &[("2G2(4).2", 12, 2, "#", "20 classes")]),
];

const TABLE2: &[(&str, u64, u64)] = &[
    ("J1", 19, 56),
    ("J4", 66, 1333),
    ("He", 42, 51),
    ("Ly", 62, 2480),
    ("O'N", 56, 342),
    ("HN", 60, 133),
    ("Fi22", 42, 78),
    ("Fi23", 60, 782),
    ("Fi24'", 84, 783),
    ("Th", 39, 248),
    ("BM", 70, 4371),
    ("M", 119, 196883),
];

/// The 26 sporadic simple groups, by the names used in the tables.
pub const SPORADIC: &[&str] = &[
    "M11", "M12", "M22", "M23", "M24", "J1", "J2", "J3", "J4", "HS", "McL", "Suz", "Co1", "Co2", "Co3", "He", "Ly", "O'N", "Ru",
    "HN", "Th", "Fi22", "Fi23", "Fi24'", "BM", "M",
];

pub fn table1() -> Vec<Table1Row> {
    TABLE1
        .iter()
        .map(|&(simple, meo, d, reps)| Table1Row {
            simple,
            meo,
            min_degree: d,
            reps: reps
                .iter()
                .map(|&(group, dim, reps, marker, ss)| Table1Rep {
                    group,
                    dim,
                    reps,
                    marker,
                    status: status(marker),
                    ss_classes: ss,
                })
                .collect(),
        })
        .collect()
}

pub fn table2() -> Vec<Table2Row> {
    TABLE2.iter().map(|&(simple, meo, d)| Table2Row { simple, meo, min_degree: d }).collect()
}

/// (meo(Aut S), minimal degree) for a group named in Table 1 or Table 2.
pub fn lookup(name: &str) -> Option<(u64, u64, u8)> {
    TABLE1
        .iter()
        .find(|r| r.0 == name)
        .map(|r| (r.1, r.2, 1))
        .or_else(|| TABLE2.iter().find(|r| r.0 == name).map(|r| (r.1, r.2, 2)))
}

#[derive(Clone, Debug, Serialize)]
pub struct GateRow {
    pub simple: &'static str,
    pub meo: u64,
    pub min_degree: u64,
    pub killed: bool,
}

/// Checks meo(Aut S) < minimal degree on every Table 2 row.
pub fn table2_gate_check() -> Vec<GateRow> {
    table2()
        .into_iter()
        .map(|r| GateRow { simple: r.simple, meo: r.meo, min_degree: r.min_degree, killed: r.meo < r.min_degree })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Check {
    pub simple: &'static str,
    pub meo: u64,
    pub min_degree: u64,
    /// Dimensions of listed representations outside [min_degree, meo].
    pub out_of_range: Vec<u64>,
    pub pass: bool,
}

/// Every Table 1 group survives the order gate: min_degree <= dim <= meo for each listed
/// representation.
pub fn table1_gate_check() -> Vec<Table1Check> {
    table1()
        .into_iter()
        .map(|r| {
            let out_of_range: Vec<u64> =
                r.reps.iter().map(|x| x.dim).filter(|&d| d < r.min_degree || d > r.meo).collect();
            let pass = r.min_degree <= r.meo && out_of_range.is_empty();
            Table1Check { simple: r.simple, meo: r.meo, min_degree: r.min_degree, out_of_range, pass }
        })
        .collect()
}
