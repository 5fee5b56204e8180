//! Golden-file tests for every CLI path. Each golden holds stdout, stderr and the exit
//! code; regenerate with `UPDATE_GOLDEN=1 cargo test -p hypermono --test cli_golden`.

use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, &str)] = &[
    ("analyze_m11", "analyze tests/data/m11_row1.json"),
    ("analyze_kloosterman", "analyze tests/data/kl7.json"),
    ("analyze_overlap", "analyze tests/data/overlap.json"),
    ("analyze_missing", "analyze tests/data/missing.json"),
    ("analyze_bad_json", "analyze tests/data/bad.json"),
    ("splus_9_3_yes", "splus tests/data/d9_m3_p2.json --primitive yes"),
    ("splus_9_3_unknown", "splus tests/data/d9_m3_p2.json"),
    ("splus_kloosterman", "splus tests/data/kl7.json --primitive unknown"),
    ("splus_bad_flag", "splus tests/data/kl7.json --primitive maybe"),
    ("ss_linear_3_2_exhaustive", "ss linear 3 2 --exhaustive"),
    ("ss_unitary_2_3_exhaustive", "ss unitary 2 3 --exhaustive"),
    ("ss_linear_4_3", "ss linear 4 3"),
    ("ss_unitary_2_3", "ss unitary 2 3"),
    ("ss_unitary_3_3_excluded", "ss unitary 3 3"),
    ("ss_symplectic_2_5_exhaustive", "ss symplectic 2 5 --exhaustive"),
    ("ss_symplectic_2_3_excluded", "ss symplectic 2 3 --exhaustive"),
    ("ss_symplectic_3_3_full", "ss symplectic 3 3 --exhaustive --mode full"),
    ("ss_symplectic_3_3", "ss symplectic 3 3"),
    ("ss_extraspecial_2_2", "ss extraspecial 2 2 --override-range"),
    ("ss_extraspecial_2_4", "ss extraspecial 4 2"),
    ("ss_extraspecial_3_2_excluded", "ss extraspecial 2 3"),
    ("ss_alternating_9", "ss alternating 9"),
    ("ss_missing_q", "ss linear 3"),
    ("ss_bad_family", "ss orthogonal 3 3"),
    ("spectrum_linear_3_2_singer", "spectrum linear:3:2 singer"),
    ("spectrum_unitary_3_3_singer", "spectrum unitary:3:3 singer"),
    ("spectrum_unitary_3_3_sub", "spectrum unitary:3:3 sub:T_{2,1}"),
    ("spectrum_symplectic_2_3_minus", "spectrum symplectic:2:3 minus"),
    ("spectrum_symplectic_2_3_plus", "spectrum symplectic:2:3 plus"),
    ("spectrum_extraspecial_minus_c5", "spectrum extraspecial:2:2:- order:5"),
    ("spectrum_extraspecial_plus_c3", "spectrum extraspecial:2:2:+ order:3"),
    ("spectrum_bad_torus", "spectrum linear:3:2 minus"),
    ("gates_landau_12", "gates landau 12"),
    ("gates_landau_0", "gates landau 0"),
    ("gates_ppd_2_6", "gates ppd 2 6"),
    ("gates_ppd_3_4", "gates ppd 3 4"),
    ("gates_meo_linear_4_2", "gates meo linear:4:2"),
    ("gates_meo_alternating_12", "gates meo alternating:12"),
    ("gates_mindim_symplectic_3_2", "gates mindim symplectic:3:2"),
    ("gates_chain", "gates chain 10 10 11 11"),
    ("gates_char_linear_4_5", "gates char linear:4:5 156"),
    ("gates_char_symplectic_2_5", "gates char symplectic:2:5 13"),
    ("gates_char_sporadic", "gates char sporadic:M11 10"),
    ("gates_bound1", "gates bound1 10 11"),
    ("gates_bound2", "gates bound2 21 10 2"),
    ("gates_bound2_projective", "gates bound2 8 3 1 --projective"),
    ("gates_pcenter_m11", "gates pcenter tests/data/m11_row1.json"),
    ("gates_brauer_m11", "gates brauer builtin:m11:11 builtin:m11:10b --d 11 --m 3"),
    ("gates_brauer_gl2", "gates brauer builtin:gl2:4:ps builtin:gl2:4:st --d 5 --m 1"),
    ("gates_brauer_files", "gates brauer tests/data/trace_ps.json tests/data/trace_st.json --d 4 --m 1"),
    ("gates_brauer_not_constant", "gates brauer builtin:gl2:4:ps builtin:gl2:4:lin --d 5 --m 1"),
    ("gates_brauer_mismatch", "gates brauer tests/data/trace_ps.json tests/data/trace_z3.json --d 4 --m 1"),
    ("gates_m12", "gates m12"),
    ("construct_sawin_m11", "construct sawin 11 1 3"),
    ("construct_sawin_m24_raw", "construct sawin 23 1 2 --raw"),
    ("construct_sawin_side_a", "construct sawin 3 4 3 --side a"),
    ("construct_sawin_bad", "construct sawin 4 2 3"),
    ("construct_alt2_i", "construct alt2 7 3"),
    ("construct_alt2_ii_m11", "construct alt2 12 3 --k 1"),
    ("construct_alt2_ii", "construct alt2 10 5 --k 3"),
    ("construct_special_f", "construct special f 7 3"),
    ("construct_special_g", "construct special g 4 1/3 5"),
    ("tables_1", "tables 1"),
    ("tables_2", "tables 2"),
    ("tables_3", "tables 3"),
    ("tables_1_check", "tables 1 --check"),
    ("tables_2_check", "tables 2 --check"),
    ("tables_3_check", "tables 3 --check"),
    ("tables_4", "tables 4"),
    ("m4_monomial_j3", "m4 tests/data/gens_monomial_j3.json"),
    ("m4_heisenberg_c4", "m4 tests/data/gens_heisenberg_c4.json"),
    ("m4_monomial_file", "m4 tests/data/gens_heis3.json"),
    ("m4_bad", "m4 tests/data/gens_bad.json"),
    ("unknown_subcommand", "frobnicate"),
];

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_hypermono"))
        .args(args)
        .current_dir(manifest_dir())
        .env_remove("HYPERMONO_CAP")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

fn render(stdout: &str, stderr: &str, code: i32) -> String {
    format!("{stdout}--- stderr ---\n{stderr}--- exit {code} ---\n")
}

fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.txt"))
}

fn check(name: &str, got: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(got, want, "golden {name} differs");
}

#[test]
fn goldens() {
    for (name, line) in CASES {
        let args: Vec<&str> = line.split_whitespace().collect();
        let (o, e, c) = run(&args);
        check(name, &render(&o, &e, c));
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for line in ["tables 3 --check", "ss unitary 2 3 --exhaustive", "spectrum unitary:3:3 singer"] {
        let args: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(run(&args), run(&args), "{line}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let target_str = target.to_str().unwrap();
    let (o, e, c) = run(&["tables", "3", "--check", "--out", target_str]);
    assert_eq!((o.as_str(), e.as_str(), c), ("", "", 0));
    let (stdout, _, _) = run(&["tables", "3", "--check"]);
    assert_eq!(std::fs::read_to_string(&target).unwrap(), stdout);
    let bad = Path::new(target_str).join("no/such/dir.json");
    let (_, _, c) = run(&["gates", "m12", "--out", bad.to_str().unwrap()]);
    assert_eq!(c, 1);
}

#[test]
fn construct_raw_feeds_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let desc = dir.path().join("m24.json");
    let (_, _, c) = run(&["construct", "sawin", "23", "1", "2", "--raw", "--out", desc.to_str().unwrap()]);
    assert_eq!(c, 0);
    let (o, _, c) = run(&["analyze", desc.to_str().unwrap()]);
    assert_eq!(c, 0);
    let v: serde_json::Value = serde_json::from_str(&o).unwrap();
    assert_eq!(v["result"]["w"], 21);
    assert_eq!(v["result"]["wild_image_order"], 64);
}

#[test]
fn cap_exceeded_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_hypermono"))
        .args(["ss", "linear", "3", "2", "--exhaustive"])
        .env("HYPERMONO_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
