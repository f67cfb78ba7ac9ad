//! The JSON input format and the commands behind the `realcoh` binary.
//!
//! A document is a JSON object with `schema_version`, an optional `name`, a `kind`
//! (`torus`, `quasitorus`, `group`, `sequence`) and the fields of that kind. Integer
//! matrices are row-major arrays; rationals are strings `"p/q"`. See `SCHEMA.md`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::gmod::{tate, FinAbGroup, GammaModule};
use crate::kac::h1;
use crate::linalg::{IMat, Int, QMat, Rat};
use crate::oracle::{crosscheck, crosscheck_all, OracleReport};
use crate::pi0::pi0;
use crate::rootdata::{catalog, fundamental_group, BasedRootDatum, GroupSpec};
use crate::structure::{ab1, ab1_group, exactness_report_central, CentralSequence, ExactnessReport, GroupSequence};
use crate::torus::{quasitorus_tate, QuasiTorusSpec, TorusSpec};

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported schema_version {0}")]
    Version(u32),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown catalog entry {0}")]
    UnknownEntry(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("command does not apply to kind {0}")]
    WrongKind(&'static str),
    #[error("oracle mismatch")]
    OracleMismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::OracleMismatch(_) => EXIT_ORACLE,
            _ => EXIT_INVALID,
        }
    }
}

fn invalid<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Invalid(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPayload {
    pub rank: usize,
    /// simple roots as functionals on `X∨ = ℤ^rank`
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    /// `τ` on `X`
    pub tau: Vec<Vec<i64>>,
    pub q: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Torus {
        /// `γ` on cocharacters
        gamma: Vec<Vec<i64>>,
    },
    Quasitorus {
        source_gamma: Vec<Vec<i64>>,
        target_gamma: Vec<Vec<i64>>,
        map: Vec<Vec<i64>>,
    },
    Group(GroupPayload),
    Sequence {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        g1: Option<GroupPayload>,
        g2: GroupPayload,
        g3: GroupPayload,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        i: Option<Vec<Vec<i64>>>,
        j: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        split: Option<Vec<Vec<String>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub payload: Payload,
}

/// A validated document.
#[derive(Clone, Debug)]
pub enum Loaded {
    Torus(TorusSpec),
    Quasitorus(QuasiTorusSpec),
    Group(GroupSpec),
    Central(CentralSequence, Option<GroupSequence>),
}

impl Loaded {
    fn kind(&self) -> &'static str {
        match self {
            Loaded::Torus(_) => "torus",
            Loaded::Quasitorus(_) => "quasitorus",
            Loaded::Group(_) => "group",
            Loaded::Central(..) => "sequence",
        }
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, CliError> {
    let bad = || CliError::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (Int, Int) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(Rat::new(a, b))
        }
        None => Ok(Rat::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn imat(rows: &[Vec<i64>], ncols: usize) -> Result<IMat, CliError> {
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(CliError::Invalid(format!("matrix rows must have {ncols} entries")));
    }
    if rows.is_empty() {
        return Ok(IMat::zeros(0, ncols));
    }
    Ok(IMat::from_i64_rows(rows))
}

fn square(rows: &[Vec<i64>]) -> Result<IMat, CliError> {
    imat(rows, rows.len())
}

fn rows_of(m: &IMat) -> Vec<Vec<i64>> {
    m.row_vecs().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| x as Int).collect()
}

impl GroupPayload {
    pub fn from_spec(spec: &GroupSpec) -> Self {
        let b = spec.brd();
        let conv = |vs: &[Vec<Int>]| vs.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
        GroupPayload {
            rank: b.rank(),
            roots: conv(b.simple_roots()),
            coroots: conv(b.simple_coroots()),
            tau: rows_of(spec.tau()),
            q: spec.q().iter().map(|&x| x as i64).collect(),
        }
    }

    pub fn to_spec(&self) -> Result<GroupSpec, CliError> {
        let n = self.rank;
        if self.roots.iter().chain(&self.coroots).any(|v| v.len() != n) {
            return Err(CliError::Invalid(format!("roots and coroots must have {n} entries")));
        }
        let roots = self.roots.iter().map(|v| ints(v)).collect();
        let coroots = self.coroots.iter().map(|v| ints(v)).collect();
        let brd = BasedRootDatum::new(n, roots, coroots).map_err(invalid)?;
        let tau = imat(&self.tau, n)?;
        if tau.rows() != n {
            return Err(CliError::Invalid(format!("tau must be {n}×{n}")));
        }
        GroupSpec::new(brd, tau, ints(&self.q)).map_err(invalid)
    }
}

impl SpecDocument {
    pub fn group(name: Option<String>, spec: &GroupSpec) -> Self {
        SpecDocument { schema_version: SCHEMA_VERSION, name, payload: Payload::Group(GroupPayload::from_spec(spec)) }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: SpecDocument = serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CliError::Version(doc.schema_version));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        match &self.payload {
            Payload::Torus { gamma } => Ok(Loaded::Torus(TorusSpec::new(square(gamma)?).map_err(invalid)?)),
            Payload::Quasitorus { source_gamma, target_gamma, map } => {
                let s = TorusSpec::new(square(source_gamma)?).map_err(invalid)?;
                let t = TorusSpec::new(square(target_gamma)?).map_err(invalid)?;
                let m = imat(map, s.rank())?;
                Ok(Loaded::Quasitorus(QuasiTorusSpec::new(s, t, m).map_err(invalid)?))
            }
            Payload::Group(g) => Ok(Loaded::Group(g.to_spec()?)),
            Payload::Sequence { g1, g2, g3, i, j, split } => {
                let (s2, s3) = (g2.to_spec()?, g3.to_spec()?);
                let jm = imat(j, s2.brd().rank())?;
                let central = CentralSequence::new(s2.clone(), s3.clone(), jm.clone()).map_err(invalid)?;
                let full = match (g1, i, split) {
                    (Some(g1), Some(i), Some(split)) => {
                        let s1 = g1.to_spec()?;
                        let im = imat(i, s1.brd().rank())?;
                        let rows: Vec<Vec<Rat>> = split
                            .iter()
                            .map(|r| r.iter().map(|x| parse_rat(x)).collect::<Result<_, _>>())
                            .collect::<Result<_, _>>()?;
                        if rows.iter().any(|r| r.len() != s3.brd().rank()) {
                            return Err(CliError::Invalid("split has the wrong shape".into()));
                        }
                        let sq = if rows.is_empty() { QMat::zeros(0, s3.brd().rank()) } else { QMat::from_rows(&rows) };
                        Some(GroupSequence::new(s1, s2, s3, im, jm, sq).map_err(invalid)?)
                    }
                    (None, None, None) => None,
                    _ => return Err(CliError::Invalid("g1, i and split must be given together".into())),
                };
                Ok(Loaded::Central(central, full))
            }
        }
    }
}

/// Reads `catalog:<name>` or a file path.
pub fn read_input(arg: &str) -> Result<SpecDocument, CliError> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        let spec = catalog::lookup(name).ok_or_else(|| CliError::UnknownEntry(name.to_string()))?;
        return Ok(SpecDocument::group(Some(name.to_string()), &spec));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| CliError::Io { path: arg.to_string(), message: e.to_string() })?;
    SpecDocument::parse(&text)
}

/// A torus as a reductive spec with no roots: `τ = −γᵀ`.
fn torus_as_group(t: &TorusSpec) -> GroupSpec {
    let n = t.rank();
    GroupSpec::new(BasedRootDatum::torus(n), t.gamma().transpose().neg(), vec![]).expect("torus spec")
}

fn group_of(l: &Loaded) -> Result<GroupSpec, CliError> {
    match l {
        Loaded::Group(g) => Ok(g.clone()),
        Loaded::Torus(t) => Ok(torus_as_group(t)),
        other => Err(CliError::WrongKind(other.kind())),
    }
}

/// Text and JSON renderings of the same data.
#[derive(Clone, Debug)]
pub struct Output {
    pub data: Value,
    pub text: String,
}

impl Output {
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.data).expect("serializable") + "\n"
        } else {
            self.text.clone()
        }
    }
}

fn group_json(g: &FinAbGroup) -> Value {
    json!({ "invariants": g.invariants().iter().map(|&d| d as i64).collect::<Vec<_>>(), "display": g.to_string() })
}

fn vec_str(v: &[Int]) -> String {
    format!("{v:?}")
}

pub fn cmd_tate(doc: &SpecDocument, k: i64) -> Result<Output, CliError> {
    let l = doc.load()?;
    let (what, g) = match &l {
        Loaded::Torus(t) => ("X∨", tate(&t.module(), k)),
        Loaded::Quasitorus(a) => ("A", quasitorus_tate(a, k).group),
        Loaded::Group(s) => ("π₁G", tate(&fundamental_group(s), k)),
        other => return Err(CliError::WrongKind(other.kind())),
    };
    Ok(Output {
        data: json!({ "k": k, "of": what, "group": group_json(&g) }),
        text: format!("H^{k}({what}) = {g}\n"),
    })
}

pub fn cmd_h1(doc: &SpecDocument, reps: bool) -> Result<Output, CliError> {
    let l = doc.load()?;
    if let Loaded::Quasitorus(a) = &l {
        let h = quasitorus_tate(a, 1);
        let order = h.group.order().unwrap_or(0);
        let elems: Vec<Value> = h.reps.iter().map(|r| json!(r.element.iter().map(format_rat).collect::<Vec<_>>())).collect();
        let mut text = format!("{order} classes\n");
        if reps {
            for r in &h.reps {
                let _ = writeln!(text, "  generator Exp({})", r.element.iter().map(format_rat).collect::<Vec<_>>().join(", "));
            }
        }
        return Ok(Output { data: json!({ "count": order as i64, "generators": elems }), text });
    }
    let spec = group_of(&l)?;
    let h = h1(&spec).map_err(invalid)?;
    let mut text = format!("{} classes\n", h.len());
    let mut rows = Vec::new();
    for (i, c) in h.classes.iter().enumerate() {
        let lab = &c.rep.labeling;
        let mark = if i == h.neutral { " (neutral)" } else { "" };
        let _ = write!(text, "  [{i}] p = {} m = {} orbit = {}{mark}", vec_str(&lab.p), vec_str(&lab.m_class), c.orbit.len());
        if reps {
            let _ = write!(text, " nu = {}", vec_str(&c.rep.nu));
        }
        text.push('\n');
        let mut row = json!({
            "p": lab.p.iter().map(|&x| x as i64).collect::<Vec<_>>(),
            "m": lab.m_class.iter().map(|&x| x as i64).collect::<Vec<_>>(),
            "orbit_size": c.orbit.len(),
            "neutral": i == h.neutral,
        });
        if reps {
            row["nu"] = json!(c.rep.nu.iter().map(|&x| x as i64).collect::<Vec<_>>());
        }
        rows.push(row);
    }
    Ok(Output { data: json!({ "count": h.len(), "classes": rows }), text })
}

pub fn cmd_pi0(doc: &SpecDocument) -> Result<Output, CliError> {
    let spec = group_of(&doc.load()?)?;
    let p = pi0(&spec).map_err(invalid)?;
    let gens: Vec<Vec<i64>> = p.witnesses.iter().map(|w| w.iter().map(|&x| x as i64).collect()).collect();
    Ok(Output {
        data: json!({ "order": p.order(), "display": p.to_string(), "witnesses": gens }),
        text: format!("{p}\n"),
    })
}

pub fn cmd_ab1(doc: &SpecDocument) -> Result<Output, CliError> {
    let spec = group_of(&doc.load()?)?;
    let h = h1(&spec).map_err(invalid)?;
    let g = ab1_group(&spec);
    let mut text = format!("H^1(pi_1 G) = {g}\n");
    let mut rows = Vec::new();
    for (i, c) in h.classes.iter().enumerate() {
        let a = ab1(&spec, &c.rep).map_err(invalid)?;
        let _ = writeln!(text, "  [{i}] p = {} -> {}", vec_str(&c.rep.labeling.p), vec_str(&a));
        rows.push(json!({ "class": i, "ab1": a.iter().map(|&x| x as i64).collect::<Vec<_>>() }));
    }
    Ok(Output { data: json!({ "group": group_json(&g), "classes": rows }), text })
}

fn oracle_output(reports: &[OracleReport]) -> Output {
    let mut text = String::new();
    for r in reports {
        let p = r.pipeline.map_or("error".to_string(), |v| v.to_string());
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "{verdict} {} {} pipeline={p} oracle={}", r.name, r.check, r.oracle);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(text, "{} checks, {failed} failed", reports.len());
    Output { data: json!({ "reports": reports, "failed": failed }), text }
}

fn exactness_output(r: &ExactnessReport) -> Output {
    let mut text = String::new();
    for j in &r.joints {
        let verdict = if j.exact { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "{verdict} exact at {} (image {}, kernel {})", j.name, j.image_size, j.kernel_size);
    }
    if let Some(a) = r.recipes_agree {
        let _ = writeln!(text, "{} connecting-map recipes agree", if a { "PASS" } else { "FAIL" });
    }
    Output { data: serde_json::to_value(r).expect("serializable"), text }
}

/// Returns the output and whether every check passed.
pub fn cmd_verify(doc: Option<&SpecDocument>) -> Result<(Output, bool), CliError> {
    let Some(doc) = doc else {
        let reports = crosscheck_all(&catalog::entries());
        let ok = reports.iter().all(OracleReport::passed);
        return Ok((oracle_output(&reports), ok));
    };
    match doc.load()? {
        Loaded::Central(seq, _) => {
            let r = exactness_report_central(&seq).map_err(invalid)?;
            let ok = r.passed();
            Ok((exactness_output(&r), ok))
        }
        Loaded::Quasitorus(a) => {
            let r = crate::structure::exactness_report_torus(&a);
            let ok = r.passed();
            Ok((exactness_output(&r), ok))
        }
        l => {
            let spec = group_of(&l)?;
            let name = doc.name.clone().unwrap_or_else(|| "input".to_string());
            let reports = crosscheck(&name, &spec);
            let ok = reports.iter().all(OracleReport::passed);
            Ok((oracle_output(&reports), ok))
        }
    }
}

pub fn cmd_catalog() -> Output {
    let names = catalog::names();
    let mut text = String::new();
    for n in &names {
        let _ = writeln!(text, "catalog:{n}");
    }
    Output { data: json!({ "entries": names }), text }
}

/// `name ↦ document` for every catalog entry.
pub fn catalog_documents() -> BTreeMap<String, SpecDocument> {
    catalog::entries().into_iter().map(|e| (e.name.clone(), SpecDocument::group(Some(e.name), &e.spec))).collect()
}

pub fn oracle_mismatch(out: &Output) -> CliError {
    CliError::OracleMismatch(out.text.clone())
}

/// `GammaModule` of a torus document, for callers that want the raw module.
pub fn torus_module(doc: &SpecDocument) -> Result<GammaModule, CliError> {
    match doc.load()? {
        Loaded::Torus(t) => Ok(t.module()),
        other => Err(CliError::WrongKind(other.kind())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_outputs() {
        let h = cmd_h1(&read_input("catalog:su2").unwrap(), false).unwrap();
        assert!(h.text.starts_with("2 classes"));
        let h = cmd_h1(&read_input("catalog:Gsq-l8-r0-rp0").unwrap(), false).unwrap();
        assert!(h.text.starts_with("4 classes"));
        let p = cmd_pi0(&read_input("catalog:Gcq-l8").unwrap()).unwrap();
        assert_eq!(p.text, "trivial\n");
    }

    #[test]
    fn catalog_roundtrip() {
        for (name, doc) in catalog_documents() {
            let back = SpecDocument::parse(&doc.to_json()).unwrap();
            assert_eq!(back, doc);
            let Loaded::Group(s) = back.load().unwrap() else { panic!("group") };
            assert_eq!(s, catalog::lookup(&name).unwrap(), "{name}");
        }
    }

    #[test]
    fn json_and_text_agree() {
        let doc = read_input("catalog:Gcq-l6-r1-rp0").unwrap();
        let o = cmd_h1(&doc, true).unwrap();
        let n = o.data["count"].as_u64().unwrap();
        assert!(o.text.starts_with(&format!("{n} classes")));
        assert_eq!(o.text.lines().count() as u64, n + 1);
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = SpecDocument::parse("{\n  \"schema_version\": 1,\n  \"kind\": \"torus\",\n  \"gamma\": [[1,]]\n}").unwrap_err();
        match e {
            CliError::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        let e = SpecDocument::parse(r#"{"schema_version": 9, "kind": "torus", "gamma": [[1]]}"#).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_INVALID);
    }

    #[test]
    fn other_kinds() {
        let t = SpecDocument::parse(r#"{"schema_version": 1, "kind": "torus", "gamma": [[-1]]}"#).unwrap();
        assert_eq!(cmd_h1(&t, false).unwrap().data["count"], 2);
        assert_eq!(cmd_tate(&t, 1, ).unwrap().text, "H^1(X∨) = Z/2\n");
        let q = SpecDocument::parse(
            r#"{"schema_version": 1, "kind": "quasitorus", "source_gamma": [[1]], "target_gamma": [[1]], "map": [[2]]}"#,
        )
        .unwrap();
        assert_eq!(cmd_h1(&q, false).unwrap().data["count"], 2);
        assert!(cmd_verify(Some(&q)).unwrap().1);
        let s = SpecDocument::parse(
            r#"{"schema_version": 1, "kind": "sequence",
                "g2": {"rank": 1, "roots": [[2]], "coroots": [[1]], "tau": [[1]], "q": [1, 1]},
                "g3": {"rank": 1, "roots": [[1]], "coroots": [[2]], "tau": [[1]], "q": [1, 1]},
                "j": [[2]]}"#,
        )
        .unwrap();
        assert!(cmd_verify(Some(&s)).unwrap().1);
        assert!(cmd_pi0(&s).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rat("-3/6").unwrap(), Rat::new(-1, 2));
        assert_eq!(format_rat(&Rat::new(4, 2)), "2");
        assert!(parse_rat("1/0").is_err());
    }
}
