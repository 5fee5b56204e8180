//! Command-line surface: every subcommand prints one JSON report
//! `{"schema", "command", "input", "result"}`.

mod parse;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::UnityClass;
use crate::chargeom::HypDescriptor;
use crate::constructions::{self as cons, SawinSide, SpecialFamily};
use crate::error::{Error, Result};
use crate::gates::{self, GroupFamily, TraceTable};
use crate::repkit::{self, m4 as m4mod, MonoMat};
use crate::splus::{self, Primitivity};
use crate::stonevn::{self, OracleMode};
use crate::weilgl::{self, ClassicalGroup, Family};

use parse::{prime_power, SpectrumFamily, TorusSpec};

pub const SCHEMA: &str = "hypermono/1";

#[derive(Debug, Parser)]
#[command(name = "hypermono", version, about = "Local monodromy data, simple-spectrum oracles and gates for hypergeometric sheaves")]
pub struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Local data of a descriptor file.
    Analyze { file: PathBuf },
    /// (S+) verdict and tensor-induction candidates.
    Splus {
        file: PathBuf,
        #[arg(long, default_value = "unknown")]
        primitive: Primitivity,
    },
    /// Simple-spectrum classes: linear|unitary|symplectic <n> <q>, extraspecial <n> <p>, alternating <n>.
    Ss {
        family: String,
        n: u64,
        q: Option<u64>,
        /// Run the enumeration oracle and compare.
        #[arg(long)]
        exhaustive: bool,
        /// Symplectic oracle mode.
        #[arg(long, default_value = "targeted")]
        mode: String,
        /// Extraspecial: allow p^n < 11.
        #[arg(long)]
        override_range: bool,
    },
    /// Spectrum of a torus element on the Weil or Stone-von Neumann module.
    Spectrum { family: String, torus: String },
    /// Arithmetic gates.
    Gates {
        #[command(subcommand)]
        gate: Gate,
    },
    /// Descriptor constructions.
    Construct {
        #[command(subcommand)]
        what: Construct,
        /// Print the bare descriptor instead of a report.
        #[arg(long, global = true)]
        raw: bool,
    },
    /// Embedded tables 1, 2 or 3.
    Tables {
        table: u8,
        #[arg(long)]
        check: bool,
    },
    /// Fourth moment of a finite group given by generators.
    M4 { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum Gate {
    /// Landau's function g(n) = meo(S_n).
    Landau { n: u32 },
    /// Least primitive prime divisor of p^k - 1.
    Ppd { p: u64, k: u32 },
    /// Maximal element order of a family, e.g. linear:4:2 or sporadic:Ly.
    Meo { family: String },
    /// Minimal projective degree of a family.
    Mindim { family: String },
    /// d(S) <= dim V <= o(g) <= meo.
    Chain { d_s: u64, dim: u64, obar: u64, meo: u64 },
    /// Characteristic determination for a sheaf of rank d.
    Char { family: String, d: u64 },
    /// Consequence of a degree-d representation when d < W.
    Bound1 { d: u64, w: u64 },
    /// W <= d * index, or W <= (d^2 - 1) * index with --projective.
    Bound2 {
        w: u64,
        d: u64,
        index: u64,
        #[arg(long)]
        projective: bool,
    },
    /// p-center constraints of a descriptor file.
    Pcenter { file: PathBuf },
    /// Brauer-p transfer; tables are files or builtin:m11:{11,10a,10b} / builtin:gl2:q:{ps,st,cusp,lin}.
    Brauer {
        t1: String,
        t2: String,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        m: i64,
    },
    /// M12 case analysis.
    M12,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Hypergeometric part of the direct image under x^A (1-x)^B; --side c needs p | A+B, a needs p | A.
    Sawin {
        a: u64,
        b: u64,
        p: u64,
        #[arg(long, default_value = "c")]
        side: SawinSide,
    },
    /// Sheaves with monodromy A_n or S_n; part (ii) when --k is given.
    Alt2 {
        n: u32,
        p: u64,
        #[arg(long)]
        k: Option<u32>,
    },
    /// The F_N and G_D families.
    Special {
        #[command(subcommand)]
        family: SpecialArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpecialArg {
    /// F_N: x^N + tx.
    F { n: u64, p: u64 },
    /// G_D: x^D + tx twisted by chi ("a/N").
    G { d: u64, chi: UnityClass, p: u64 },
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub input: Value,
    pub result: Value,
}

/// A finished command: the report, plus an error to exit with after printing it
/// (an oracle or consistency check that did not agree).
pub struct Outcome {
    pub report: Report,
    pub raw: Option<Value>,
    pub failure: Option<Error>,
}

impl Outcome {
    /// The JSON document the command prints.
    pub fn body(&self) -> Value {
        self.raw.as_ref().map_or_else(|| to_value(&self.report), Clone::clone)
    }
}

/// Parses a full argument vector (program name first) without printing anything.
pub fn parse_args<I, T>(args: I) -> Result<Cli>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(args).map_err(|e| Error::Parse(e.to_string().trim_end().to_string()))
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn descriptor_file(path: &Path) -> Result<(Value, HypDescriptor)> {
    let v = read_json(path)?;
    let h = HypDescriptor::from_json_value(&v)?;
    Ok((v, h))
}

fn outcome(command: &str, input: Value, result: Value) -> Outcome {
    Outcome { report: Report { schema: SCHEMA, command: command.into(), input, result }, raw: None, failure: None }
}

fn mismatch_if(o: &mut Outcome, ok: bool, what: &str) {
    if !ok {
        o.failure = Some(Error::OracleMismatch(what.into()));
    }
}

pub fn analyze(h: &HypDescriptor) -> Value {
    let belyi = match h.belyi_wild_obstruction() {
        Ok(b) => to_value(&b),
        Err(e) => json!({ "inapplicable": e.to_string() }),
    };
    let (num, den) = h.max_slope();
    json!({
        "descriptor": h.to_json_value(),
        "p": h.p(),
        "d": h.d(),
        "m": h.m(),
        "w": h.w(),
        "kloosterman": h.is_kloosterman(),
        "max_slope": format!("{num}/{den}"),
        "swan_infinity": h.swan_infinity(),
        "kummer_induced": h.kummer_induced(),
        "belyi_wild_obstruction": belyi,
        "determinant_char": h.determinant_char(),
        "wild_image_order": h.wild_image_order(),
        "i0_spectrum": h.i0_spectrum(),
        "i0_simple": h.i0_simple(),
        "p_center_constraints": gates::p_center_constraints(h),
    })
}

fn cmd_ss(family: &str, n: u64, q: Option<u64>, exhaustive: bool, mode: &str, override_range: bool) -> Result<Outcome> {
    let need_q = || q.ok_or_else(|| Error::Parse(format!("ss {family} needs <n> <q>")));
    match family {
        "linear" | "gl" | "unitary" | "gu" => {
            let fam: Family = family.parse()?;
            let q = need_q()?;
            let input = json!({ "family": fam, "n": n, "q": q, "exhaustive": exhaustive });
            let mut result = match weilgl::ss_enumerate(fam, n as usize, q) {
                Ok(classes) => json!({ "classes": classes }),
                Err(Error::Excluded(why)) if exhaustive => json!({ "excluded": why }),
                Err(e) => return Err(e),
            };
            let mut agrees = true;
            if exhaustive {
                let rep = weilgl::ss_exhaustive_check(fam, n as usize, q, repkit::default_cap())?;
                agrees = rep.agrees;
                result["oracle"] = to_value(&rep);
            }
            let mut o = outcome("ss", input, result);
            mismatch_if(&mut o, agrees, "simple-spectrum oracle disagrees with the classification");
            Ok(o)
        }
        "symplectic" | "sp" => {
            let q = need_q()?;
            let mode = match mode {
                "full" => OracleMode::Full,
                "targeted" => OracleMode::Targeted,
                m => return Err(Error::Parse(format!("mode must be full|targeted, got {m:?}"))),
            };
            let input = json!({ "family": "symplectic", "n": n, "q": q, "exhaustive": exhaustive, "mode": mode });
            let mut result = match stonevn::ss_sp_enumerate(n as usize, q) {
                Ok((classes, warnings)) => json!({ "classes": classes, "warnings": warnings }),
                Err(Error::Excluded(why)) if exhaustive => json!({ "excluded": why }),
                Err(e) => return Err(e),
            };
            let mut agrees = true;
            if exhaustive {
                let rep = stonevn::ss_sp_oracle(n as usize, q, mode)?;
                agrees = rep.agrees;
                result["oracle"] = to_value(&rep);
            }
            let mut o = outcome("ss", input, result);
            mismatch_if(&mut o, agrees, "symplectic intertwiner oracle disagrees with the classification");
            Ok(o)
        }
        "extraspecial" | "extr" => {
            let p = need_q()?;
            let input = json!({ "family": "extraspecial", "n": n, "p": p, "override_range": override_range });
            let n32 = u32::try_from(n).map_err(|_| Error::Domain(format!("n = {n} too large")))?;
            let orders = stonevn::ss_extr_enumerate(p, n32, override_range)?;
            Ok(outcome("ss", input, json!({ "central_orders": orders })))
        }
        "alternating" | "alt" => {
            if q.is_some() {
                return Err(Error::Parse("ss alternating takes only <n>".into()));
            }
            if n < 5 {
                return Err(Error::Domain(format!("alternating needs n >= 5, got {n}")));
            }
            let rep = weilgl::alt_exhaustive_check(n)?;
            let agrees = rep.agrees;
            let mut o = outcome("ss", json!({ "family": "alternating", "n": n }), to_value(&rep));
            mismatch_if(&mut o, agrees, "alternating oracle disagrees with the classification");
            Ok(o)
        }
        f => Err(Error::Parse(format!("unknown family {f:?}; expected linear, unitary, symplectic, extraspecial or alternating"))),
    }
}

fn cmd_spectrum(family: &str, torus: &str) -> Result<Outcome> {
    let fam: SpectrumFamily = family.parse()?;
    let spec: TorusSpec = torus.parse()?;
    let input = json!({ "family": family, "torus": torus });
    let result = match (fam, spec) {
        (SpectrumFamily::Classical(family, n, q), spec) => {
            let grp = ClassicalGroup::new(family, n, q)?;
            let t = match spec {
                TorusSpec::Singer => weilgl::singer_torus(family, n, q)?,
                TorusSpec::Sub(label) => weilgl::sub_tori(family, n, q)?
                    .into_iter()
                    .find(|t| t.label == label)
                    .ok_or_else(|| Error::Domain(format!("no sub-torus {label:?} in {}", grp.label())))?,
                _ => return Err(Error::Parse(format!("torus {torus:?} does not apply to {}", grp.label()))),
            };
            let prof = weilgl::power_profile(&grp, &t.matrix)?;
            let spectra = weilgl::weil_spectra(&grp, &prof)?;
            let modules: Vec<Value> = spectra
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    json!({
                        "index": i,
                        "degree": weilgl::weil_degree(family, n, q, i as u64),
                        "spectrum": s,
                        "simple": s.is_simple(),
                    })
                })
                .collect();
            json!({ "torus": t, "modules": modules })
        }
        (SpectrumFamily::Symplectic(n, q), spec) => {
            let (p, f) = prime_power(q)?;
            if p == 2 {
                return Err(Error::Domain("symplectic spectra need q odd".into()));
            }
            let g = match spec {
                TorusSpec::Plus => stonevn::sp_torus_plus(n, q)?,
                TorusSpec::Minus => stonevn::sp_torus_minus(n, q)?,
                TorusSpec::Beta(a, b) if a + b == n => stonevn::sp_torus_beta(a, b, q)?,
                _ => return Err(Error::Parse(format!("torus {torus:?} does not apply to Sp_{}({q})", 2 * n))),
            };
            let model = stonevn::heisenberg_irrep(p, n, f, None, stonevn::TARGETED_CAP)?;
            let pm = stonevn::outer_intertwiner(&model, &g)?;
            let (even, odd) = stonevn::half_spectra(&model, &pm)?;
            json!({
                "order": g.order()?,
                "projective_order": g.central_order(),
                "even": { "dim": even.dim(), "spectrum": even, "simple": even.is_simple() },
                "odd": { "dim": odd.dim(), "spectrum": odd, "simple": odd.is_simple() },
            })
        }
        (SpectrumFamily::Extraspecial(n, eps), spec) => {
            let model = stonevn::heisenberg_irrep(2, n, 1, Some(eps), stonevn::TARGETED_CAP)?;
            let g = match spec {
                TorusSpec::Order(k) => stonevn::orthogonal_elements(n, eps, repkit::default_cap())?
                    .into_iter()
                    .find(|g| g.order() == Ok(k))
                    .ok_or_else(|| Error::Domain(format!("no element of order {k}")))?,
                _ => return Err(Error::Parse(format!("torus {torus:?} does not apply to an extraspecial 2-group"))),
            };
            let pm = stonevn::outer_intertwiner(&model, &g)?;
            let s = stonevn::projective_spectrum(&model, &pm)?;
            json!({ "order": g.order()?, "dim": s.dim(), "spectrum": s, "simple": s.is_simple() })
        }
    };
    Ok(outcome("spectrum", input, result))
}

fn trace_table(spec: &str) -> Result<(Value, TraceTable)> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let t = match parts.as_slice() {
            ["m11", which] => {
                let [t11, t10a, t10b] = gates::m11_trace_tables();
                match *which {
                    "11" => t11,
                    "10a" => t10a,
                    "10b" => t10b,
                    w => return Err(Error::Parse(format!("M11 table {w:?}; expected 11, 10a or 10b"))),
                }
            }
            ["gl2", q, which] => {
                let q: i64 = q.parse().map_err(|_| Error::Parse(format!("bad q in {spec:?}")))?;
                if q < 2 {
                    return Err(Error::Domain(format!("q = {q} < 2")));
                }
                let [ps, st, cusp, lin] = gates::gl2_unipotent_tables(q);
                match *which {
                    "ps" => ps,
                    "st" => st,
                    "cusp" => cusp,
                    "lin" => lin,
                    w => return Err(Error::Parse(format!("GL2 table {w:?}; expected ps, st, cusp or lin"))),
                }
            }
            _ => return Err(Error::Parse(format!("unknown builtin table {spec:?}"))),
        };
        return Ok((Value::String(spec.into()), t));
    }
    let path = Path::new(spec);
    let text = read(path)?;
    let t = TraceTable::from_json_str(&text)?;
    Ok((serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?, t))
}

fn family_arg(s: &str) -> Result<GroupFamily> {
    s.parse()
}

fn cmd_gates(gate: &Gate) -> Result<Outcome> {
    let o = match gate {
        Gate::Landau { n } => outcome("gates landau", json!({ "n": n }), json!({ "landau": gates::landau(*n)?.to_string() })),
        Gate::Ppd { p, k } => outcome("gates ppd", json!({ "p": p, "k": k }), json!({ "ppd": gates::ppd(*p, *k)? })),
        Gate::Meo { family } => {
            let f = family_arg(family)?;
            outcome("gates meo", json!({ "family": f }), to_value(&gates::meo_bound(&f)?))
        }
        Gate::Mindim { family } => {
            let f = family_arg(family)?;
            outcome("gates mindim", json!({ "family": f }), to_value(&gates::min_dim(&f)?))
        }
        Gate::Chain { d_s, dim, obar, meo } => outcome(
            "gates chain",
            json!({ "d_s": d_s, "dim": dim, "obar": obar, "meo": meo }),
            json!({ "holds": gates::order_chain(*d_s, *dim, *obar, *meo) }),
        ),
        Gate::Char { family, d } => {
            let f = family_arg(family)?;
            outcome("gates char", json!({ "family": f, "d": d }), to_value(&gates::char_sheaf_decision(&f, *d)?))
        }
        Gate::Bound1 { d, w } => outcome("gates bound1", json!({ "d": d, "w": w }), to_value(&gates::bound1_consequence(*d, *w))),
        Gate::Bound2 { w, d, index, projective } => {
            let holds = if *projective {
                gates::bound2_projective_check(*w, *d, *index)
            } else {
                gates::bound2_check(*w, *d, *index)
            };
            outcome(
                "gates bound2",
                json!({ "w": w, "d": d, "index": index, "projective": projective }),
                json!({ "holds": holds }),
            )
        }
        Gate::Pcenter { file } => {
            let (v, h) = descriptor_file(file)?;
            outcome("gates pcenter", v, to_value(&gates::p_center_constraints(&h)))
        }
        Gate::Brauer { t1, t2, d, m } => {
            let (v1, a) = trace_table(t1)?;
            let (v2, b) = trace_table(t2)?;
            let r = gates::brauerp_transfer(&a, &b, (*d, *m))?;
            outcome(
                "gates brauer",
                json!({ "t1": v1, "t2": v2, "type": [d, m] }),
                json!({ "constant_on_p_classes": r.is_some(), "transfer": r }),
            )
        }
        Gate::M12 => outcome("gates m12", json!({}), to_value(&gates::m12_cases())),
    };
    Ok(o)
}

fn cmd_construct(what: &Construct, raw: bool) -> Result<Outcome> {
    let (name, input, h, extra) = match what {
        Construct::Sawin { a, b, p, side } => {
            let h = cons::sawin(*a, *b, *p, *side)?;
            ("construct sawin", json!({ "a": a, "b": b, "p": p, "side": side }), h, Value::Null)
        }
        Construct::Alt2 { n, p, k } => {
            let fam = cons::alt2_family(*n, *k, *p)?;
            let extra = json!({ "expected": fam.expected, "i0_cycle_type": fam.i0_cycle_type });
            ("construct alt2", json!({ "n": n, "p": p, "k": k }), fam.descriptor, extra)
        }
        Construct::Special { family } => {
            let (fam, p) = match family {
                SpecialArg::F { n, p } => (SpecialFamily::F { n: *n }, *p),
                SpecialArg::G { d, chi, p } => (SpecialFamily::G { d: *d, chi: *chi }, *p),
            };
            let h = cons::special_family(&fam, p)?;
            ("construct special", json!({ "family": fam, "p": p }), h, Value::Null)
        }
    };
    let desc = h.to_json_value();
    let mut result = json!({ "descriptor": desc });
    if let Value::Object(m) = extra {
        for (k, v) in m {
            result[k] = v;
        }
    }
    let mut o = outcome(name, input, result);
    if raw {
        o.raw = Some(desc);
    }
    Ok(o)
}

fn cmd_tables(table: u8, check: bool) -> Result<Outcome> {
    let input = json!({ "table": table, "check": check });
    let mut o = match (table, check) {
        (1, false) => outcome("tables", input, to_value(&cons::table1())),
        (2, false) => outcome("tables", input, to_value(&cons::table2())),
        (3, false) => outcome("tables", input, to_value(&cons::table3_entries())),
        (1, true) => {
            let rows = cons::table1_gate_check();
            let all = rows.iter().all(|r| r.pass);
            let mut o = outcome("tables", input, json!({ "rows": rows, "all_pass": all }));
            mismatch_if(&mut o, all, "Table 1 order gate failed");
            o
        }
        (2, true) => {
            let rows = cons::table2_gate_check();
            let all = rows.iter().all(|r| r.killed);
            let mut o = outcome("tables", input, json!({ "rows": rows, "all_pass": all }));
            mismatch_if(&mut o, all, "a Table 2 row has meo >= minimal degree");
            o
        }
        (3, true) => {
            let rep = cons::table3_consistency();
            let all = rep.all_pass;
            let mut o = outcome("tables", input, to_value(&rep));
            mismatch_if(&mut o, all, "Table 3 consistency check failed");
            o
        }
        (t, _) => return Err(Error::Domain(format!("no table {t}; expected 1, 2 or 3"))),
    };
    o.report.command = format!("tables {table}");
    Ok(o)
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoGen {
    perm: Vec<u32>,
    scal: Vec<UnityClass>,
}

#[derive(serde::Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum GeneratorsFile {
    Builtin { builtin: String, q: Option<u64> },
    Monomial { monomial: Vec<MonoGen> },
}

fn cmd_m4(file: &Path) -> Result<Outcome> {
    let v = read_json(file)?;
    let spec: GeneratorsFile = serde_json::from_value(v.clone())
        .map_err(|e| Error::Parse(format!("generators file: {e}; expected {{\"builtin\", \"q\"}} or {{\"monomial\": [...]}}")))?;
    let cap = repkit::default_cap();
    let report = match spec {
        GeneratorsFile::Builtin { builtin, q } => match (builtin.as_str(), q) {
            ("monomial_j", Some(q)) => m4mod::moments(&m4mod::monomial_j(q, cap)?)?,
            ("heisenberg_c4", None) => m4mod::moments(&m4mod::heisenberg_c4(cap)?)?,
            (b, _) => {
                return Err(Error::Parse(format!("builtin {b:?}: expected monomial_j with q, or heisenberg_c4")));
            }
        },
        GeneratorsFile::Monomial { monomial } => {
            if monomial.is_empty() {
                return Err(Error::Domain("no generators".into()));
            }
            let gens = monomial.into_iter().map(|g| MonoMat::new(g.perm, g.scal)).collect::<Result<Vec<_>>>()?;
            m4mod::moments(&repkit::closure(&gens, cap)?)?
        }
    };
    Ok(outcome("m4", v, to_value(&report)))
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze { file } => {
            let (v, h) = descriptor_file(file)?;
            Ok(outcome("analyze", v, analyze(&h)))
        }
        Command::Splus { file, primitive } => {
            let (v, h) = descriptor_file(file)?;
            let result = json!({
                "primitive": primitive,
                "verdict": splus::splus_verdict(&h, *primitive),
                "tensor_induction_candidates": splus::tensor_induction_candidates(&h),
                "indecomposability": splus::indecomposability_ok(&h),
            });
            Ok(outcome("splus", v, result))
        }
        Command::Ss { family, n, q, exhaustive, mode, override_range } => {
            cmd_ss(family, *n, *q, *exhaustive, mode, *override_range)
        }
        Command::Spectrum { family, torus } => cmd_spectrum(family, torus),
        Command::Gates { gate } => cmd_gates(gate),
        Command::Construct { what, raw } => cmd_construct(what, *raw),
        Command::Tables { table, check } => cmd_tables(*table, *check),
        Command::M4 { file } => cmd_m4(file),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(Error::from)
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let res = execute(&cli).and_then(|o| {
        let text = serde_json::to_string_pretty(&o.body()).expect("json values serialize") + "\n";
        emit(cli.out.as_deref(), &text)?;
        o.failure.map_or(Ok(()), Err)
    });
    match res {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("hypermono: {e}");
            e.exit_code()
        }
    }
}
