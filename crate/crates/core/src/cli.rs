//! Loading data, running check suites and rendering their reports for the
//! command-line front end.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::cqt::{check_both_paths, check_cqt_conditions, check_ct, check_star, Classification, Tally};
use crate::error::{Error, Result};
use crate::inhomogeneous::{
    abstract_candidate, check_braid_hexagons, check_r_v_lambda, check_structure, classify_poincare,
    poincare_ct, poincare_star, theorem_candidate, InhomDatum, PoincareCandidate,
};
use crate::lorentz::{classify_lorentz, LorentzDatum, SL2Datum};
use crate::presentation::{parse_document, CandidateR, Document, Presentation, Saturation};
use crate::report::{CheckReport, Status};
use crate::scalars::{Gauss, Scalar};
use crate::tensor::Tensor;
use crate::uea::uea_suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Validate,
    Cqt,
    Star,
    Ct,
    Classify,
    Poincare,
    Uea,
}

impl Suite {
    /// Every suite, in the order they run.
    pub const ALL: [Suite; 7] = [
        Suite::Validate,
        Suite::Cqt,
        Suite::Star,
        Suite::Ct,
        Suite::Classify,
        Suite::Poincare,
        Suite::Uea,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Validate => "validate",
            Suite::Cqt => "cqt",
            Suite::Star => "star",
            Suite::Ct => "ct",
            Suite::Classify => "classify",
            Suite::Poincare => "poincare",
            Suite::Uea => "uea",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Shipped data files by builtin name.
pub const BUILTINS: [(&str, &str); 5] = [
    ("slq2", include_str!("../data/slq2.qg")),
    ("lorentz-flip", include_str!("../data/lorentz_flip.qg")),
    ("poincare-classical", include_str!("../data/poincare_classical.qg")),
    ("poincare-twisted", include_str!("../data/poincare_twisted.qg")),
    ("poincare-negative", include_str!("../data/poincare_negative.qg")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DatumKind {
    /// `E` only.
    Sl2,
    /// `E` and `X`.
    Lorentz,
    /// `mat R`, or a Lorentz file with `param at`, `param s`, `mat T` or rep tables.
    Poincare,
    /// Any other presentation, with candidate blocks from `cand` lines.
    Generic,
}

impl DatumKind {
    pub fn of(doc: &Document) -> DatumKind {
        let has = |n: &str| doc.mat(n).is_some();
        if has("R") {
            DatumKind::Poincare
        } else if has("E") && has("X") {
            let inhom = doc.param("at").is_some()
                || doc.param("s").is_some()
                || has("T")
                || !doc.tables.is_empty();
            if inhom {
                DatumKind::Poincare
            } else {
                DatumKind::Lorentz
            }
        } else if has("E") {
            DatumKind::Sl2
        } else {
            DatumKind::Generic
        }
    }

    fn default_suites(self, doc: &Document) -> Vec<Suite> {
        match self {
            DatumKind::Sl2 | DatumKind::Lorentz => vec![Suite::Validate, Suite::Classify],
            DatumKind::Poincare => vec![Suite::Validate, Suite::Poincare],
            DatumKind::Generic if doc.candidates.is_empty() => vec![Suite::Validate],
            DatumKind::Generic => vec![Suite::Validate, Suite::Cqt, Suite::Star, Suite::Ct],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub doc: Document,
    pub kind: DatumKind,
    /// Shipped data, whose reference counts are asserted rather than flagged.
    pub builtin: bool,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Resolves `builtin:NAME`, `builtin:lorentz-user(<file>)` or a file path.
pub fn load(input: &str) -> Result<Loaded> {
    if let Some(name) = input.strip_prefix("builtin:") {
        if let Some(path) = name.strip_prefix("lorentz-user(").and_then(|r| r.strip_suffix(')')) {
            let doc = parse_document(&read(Path::new(path))?)?;
            if doc.mat("E").is_none() || doc.mat("X").is_none() {
                return Err(Error::Shape(format!("{path}: a Lorentz datum needs `mat E` and `mat X`")));
            }
            return Ok(Loaded {
                name: name.to_string(),
                doc,
                kind: DatumKind::Lorentz,
                builtin: false,
            });
        }
        let text = BUILTINS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| *t)
            .ok_or_else(|| Error::UnknownInput(input.to_string()))?;
        let doc = parse_document(text)?;
        return Ok(Loaded {
            name: name.to_string(),
            kind: DatumKind::of(&doc),
            doc,
            builtin: true,
        });
    }
    let doc = parse_document(&read(Path::new(input))?)?;
    Ok(Loaded {
        name: input.to_string(),
        kind: DatumKind::of(&doc),
        doc,
        builtin: false,
    })
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: String,
    /// Empty means the defaults for the kind of datum.
    pub suites: Vec<Suite>,
    /// Numeric mode: evaluate at `t = value`.
    pub eval: Option<Gauss>,
    pub max_len: usize,
    pub depth: usize,
    pub with_n: Option<String>,
    pub json: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(input: impl Into<String>) -> Self {
        RunConfig {
            input: input.into(),
            suites: vec![],
            eval: None,
            max_len: crate::uea::DEFAULT_MAX_LEN,
            depth: crate::presentation::DEFAULT_DEPTH,
            with_n: None,
            json: None,
        }
    }

    pub fn suite(mut self, s: Suite) -> Self {
        self.suites.push(s);
        self
    }

    pub fn at(mut self, t: Gauss) -> Self {
        self.eval = Some(t);
        self
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub suite: Suite,
    pub report: CheckReport,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub datum: String,
    pub entries: Vec<Entry>,
    /// Count lines such as `CQT candidates: 4`.
    pub summary: Vec<String>,
}

impl RunOutput {
    pub fn reports(&self) -> impl Iterator<Item = &CheckReport> {
        self.entries.iter().map(|e| &e.report)
    }

    pub fn find(&self, check_id: &str) -> Option<&CheckReport> {
        self.reports().find(|r| r.check_id == check_id)
    }

    /// 0 when every non-skipped report passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.reports().all(|r| matches!(r.status, Status::Pass | Status::Skipped)) {
            0
        } else {
            1
        }
    }
}

/// Exit code for a finished run: 2 when the input could not be loaded or
/// had the wrong shape.
pub fn exit_code(run: &Result<RunOutput>) -> i32 {
    match run {
        Ok(out) => out.exit_code(),
        Err(_) => 2,
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    loaded: &'a Loaded,
    summary: Vec<String>,
}

/// Runs the requested suites in their fixed order. Reports are sorted by
/// check id within each suite.
pub fn dispatch(cfg: &RunConfig) -> Result<RunOutput> {
    let loaded = load(&cfg.input)?;
    let mut suites = if cfg.suites.is_empty() {
        loaded.kind.default_suites(&loaded.doc)
    } else {
        cfg.suites.clone()
    };
    suites.sort();
    suites.dedup();
    let mut ctx = Ctx {
        cfg,
        loaded: &loaded,
        summary: vec![],
    };
    let mut entries = Vec::new();
    for suite in suites {
        let mut reports = ctx.run(suite)?;
        reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        entries.extend(reports.into_iter().map(|report| Entry { suite, report }));
    }
    let out = RunOutput {
        datum: loaded.name.clone(),
        entries,
        summary: ctx.summary,
    };
    if let Some(path) = &cfg.json {
        std::fs::write(path, render_json(&out)).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(out)
}

fn prefixed(prefix: &str, reports: Vec<CheckReport>) -> Vec<CheckReport> {
    reports
        .into_iter()
        .map(|mut r| {
            r.check_id = format!("{prefix}/{}", r.check_id);
            r
        })
        .collect()
}

fn axiom_report(id: &str, e: Error) -> Result<CheckReport> {
    match e {
        Error::AxiomViolation { axiom, witness } => Ok(CheckReport::fail(format!("{id}/{axiom}"), witness)),
        Error::ForbiddenParameter(why) => Ok(CheckReport::fail(format!("{id}/parameter"), why)),
        e => Err(e),
    }
}

fn first_problem(reports: &[CheckReport]) -> Option<&CheckReport> {
    reports.iter().find(|r| !matches!(r.status, Status::Pass | Status::Skipped))
}

fn describe(r: &CheckReport) -> String {
    let mut s = r.check_id.clone();
    if let Some(w) = &r.witness {
        let idx: Vec<String> = w.index.iter().map(|i| (i + 1).to_string()).collect();
        let _ = write!(s, " at ({}) = {}", idx.join(","), w.value);
    }
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Ctx<'_> {
    fn doc(&self) -> &Document {
        &self.loaded.doc
    }

    fn run(&mut self, suite: Suite) -> Result<Vec<CheckReport>> {
        match suite {
            Suite::Validate => self.validate(),
            Suite::Cqt | Suite::Star | Suite::Ct => self.candidate_suite(suite),
            Suite::Classify => self.classify(),
            Suite::Poincare => self.poincare(),
            Suite::Uea => self.uea(),
        }
    }

    fn sl2(&self) -> Result<std::result::Result<SL2Datum, CheckReport>> {
        let e = self.doc().mat("E").ok_or_else(|| Error::Shape("no `mat E`".into()))?;
        let d = match SL2Datum::from_e(&e.tensor) {
            Ok(d) => d,
            Err(e) => return axiom_report("sl2", e).map(Err),
        };
        Ok(Ok(match &self.cfg.eval {
            Some(t) => d.eval_at(t)?,
            None => d,
        }))
    }

    fn lorentz(&self) -> Result<std::result::Result<LorentzDatum, CheckReport>> {
        match LorentzDatum::from_document(self.doc()) {
            Ok(d) => Ok(Ok(d)),
            Err(e) => axiom_report("lorentz-axioms", e).map(Err),
        }
    }

    fn inhom(&self) -> Result<InhomDatum> {
        InhomDatum::from_document_at(self.doc(), self.cfg.eval.as_ref())
    }

    /// The declared presentation and candidate, evaluated in numeric mode.
    fn declared(&self) -> Result<(Presentation, CandidateR)> {
        let p = self.doc().presentation();
        let c = self.doc().candidate();
        Ok(match &self.cfg.eval {
            Some(t) => (p.eval_at(t)?, c.eval_at(t)?),
            None => (p, c),
        })
    }

    fn validate(&mut self) -> Result<Vec<CheckReport>> {
        let doc = self.doc();
        let p = doc.presentation();
        p.validate()?;
        let mut out = vec![CheckReport::pass("presentation").with_detail(format!(
            "{} generators, {} relations, {} matrices",
            p.generators.len(),
            p.relations.len(),
            doc.mats.len()
        ))];
        match self.loaded.kind {
            DatumKind::Sl2 => match self.sl2()? {
                Ok(d) => {
                    out.extend(prefixed("sl2", d.check_axioms()?));
                    if let Some(ep) = doc.mat("Ep") {
                        let ep = match &self.cfg.eval {
                            Some(t) => ep.tensor.eval_at(t)?,
                            None => ep.tensor.clone(),
                        };
                        out.push(CheckReport::compare("sl2/ep-matches-e", &ep, &d.ep));
                    }
                }
                Err(r) => out.push(r),
            },
            DatumKind::Lorentz => match self.lorentz()? {
                Ok(d) => {
                    let d = match &self.cfg.eval {
                        Some(t) => d.eval_at(t)?,
                        None => d,
                    };
                    out.extend(prefixed("sl2", d.base.check_axioms()?));
                    out.push(CheckReport::pass("lorentz-axioms").with_detail(format!("beta = {}", d.beta)));
                }
                Err(r) => out.push(r),
            },
            DatumKind::Poincare => match self.inhom() {
                Ok(d) => out.extend(prefixed("structure", check_structure(&d)?)),
                Err(e @ Error::StructureViolation(_)) => {
                    out.push(CheckReport::fail("structure/t-tilde", e.to_string()))
                }
                Err(e) => out.push(axiom_report("lorentz-axioms", e)?),
            },
            DatumKind::Generic => {}
        }
        Ok(out)
    }

    fn candidate_suite(&mut self, suite: Suite) -> Result<Vec<CheckReport>> {
        if self.loaded.kind == DatumKind::Poincare {
            return self.poincare_candidate_suite(suite);
        }
        if self.doc().candidates.is_empty() {
            return Ok(vec![CheckReport::skipped(
                suite.name(),
                "no `cand` blocks declared; the classify suite enumerates the built-in families",
            )]);
        }
        let (p, c) = self.declared()?;
        Ok(match suite {
            Suite::Cqt => {
                let sat = Saturation::for_presentation(&p, 2, self.cfg.depth)?;
                let mut out = check_cqt_conditions(&p, &c, &sat)?;
                for a in check_both_paths(&p, &c, &sat)? {
                    let id = format!("paths-agree/{}", a.generator);
                    out.push(if a.agrees() {
                        CheckReport::pass(id)
                    } else {
                        CheckReport::fail(
                            id,
                            format!(
                                "relation blocks {}/{}, homomorphisms {}/{}",
                                a.left, a.right, a.hom, a.anti
                            ),
                        )
                    });
                }
                out
            }
            Suite::Star => check_star(&p, &c, p.mode)?,
            _ => check_ct(&p, &c)?,
        })
    }

    fn c_param(&self) -> Result<Gauss> {
        match self.doc().param("c") {
            None => Ok(Gauss::zero()),
            Some(c) => c
                .as_constant()
                .ok_or_else(|| Error::ForbiddenParameter(format!("param c = {c} must be a constant"))),
        }
    }

    fn poincare_candidates(&self, d: &InhomDatum, c: Option<Scalar>) -> Result<Vec<PoincareCandidate>> {
        if d.is_abstract() {
            Ok(vec![abstract_candidate(c)])
        } else {
            [1, -1].into_iter().map(|k| theorem_candidate(d, k, c.clone())).collect()
        }
    }

    fn poincare_candidate_suite(&mut self, suite: Suite) -> Result<Vec<CheckReport>> {
        let d = self.inhom()?;
        let c = self.c_param()?;
        let mut out = Vec::new();
        for cand in self.poincare_candidates(&d, None)? {
            let reports = match suite {
                Suite::Star => poincare_star(&d, &cand, &c)?,
                Suite::Ct => poincare_ct(&d, &cand, &c)?,
                _ => {
                    let mut r = check_r_v_lambda(&d, &cand)?;
                    r.extend(check_braid_hexagons(&d, &cand)?);
                    r
                }
            };
            out.extend(prefixed(&cand.label, reports));
        }
        Ok(out)
    }

    fn tally_lines(&mut self, t: &Tally, full: bool) {
        self.summary.push(format!("distinct candidates: {} of {}", t.distinct, t.total));
        self.summary.push(format!("CQT candidates: {}", t.cqt));
        if full {
            self.summary.push(format!("CQT* candidates: {}", t.cqt_star));
        }
        self.summary.push(format!("CT candidates: {}", t.ct));
        if full {
            self.summary.push(format!("CT* candidates: {}", t.ct_star));
        }
        if t.unwitnessed > 0 {
            self.summary.push(format!("candidates with unwitnessed blocks: {}", t.unwitnessed));
        }
    }

    fn verdict_reports(cl: &Classification, star: bool) -> Vec<CheckReport> {
        cl.verdicts
            .iter()
            .map(|v| {
                let id = format!("classify/{}", v.label);
                if let Some(j) = v.duplicate_of {
                    return CheckReport::pass(id).with_detail(format!("same blocks as {}", cl.verdicts[j].label));
                }
                let mut detail = format!("CQT {}", yes(v.cqt));
                if star {
                    let _ = write!(detail, ", * {}", yes(v.star));
                }
                let _ = write!(detail, ", CT {}", yes(v.ct));
                if let Some(r) = first_problem(&v.reports) {
                    let _ = write!(detail, "; first failure {}", describe(r));
                }
                if v.reports.iter().any(|r| r.status == Status::Unwitnessed) {
                    CheckReport::unwitnessed(id, detail)
                } else {
                    CheckReport::pass(id).with_detail(detail)
                }
            })
            .collect()
    }

    fn classify(&mut self) -> Result<Vec<CheckReport>> {
        match self.loaded.kind {
            DatumKind::Sl2 => {
                let d = match self.sl2()? {
                    Ok(d) => d,
                    Err(r) => return Ok(vec![r]),
                };
                let cl = crate::lorentz::classify_sl2(&d, None)?;
                self.tally_lines(&cl.tally, false);
                Ok(Self::verdict_reports(&cl, false))
            }
            DatumKind::Lorentz => {
                let d = match self.lorentz()? {
                    Ok(d) => d,
                    Err(r) => return Ok(vec![r]),
                };
                let lc = classify_lorentz(&d, self.cfg.eval.as_ref())?;
                self.tally_lines(&lc.classification.tally, true);
                let mut out = Self::verdict_reports(&lc.classification, true);
                let reference = lc.reference;
                out.push(if lc.divergences.is_empty() {
                    CheckReport::pass("reference-counts").with_detail(format!(
                        "CQT {}, CQT* {}, CT {}, CT* {}",
                        reference.cqt, reference.cqt_star, reference.ct, reference.ct_star
                    ))
                } else if self.loaded.builtin {
                    CheckReport::fail("reference-counts", lc.divergences.join("; "))
                } else {
                    CheckReport::skipped(
                        "reference-counts",
                        format!("divergence flagged: {}", lc.divergences.join("; ")),
                    )
                });
                Ok(out)
            }
            DatumKind::Poincare => {
                let d = self.inhom()?;
                let pc = classify_poincare(&d)?;
                self.summary.push(format!("CQT candidates: {}", pc.cqt));
                let ks: Vec<String> = pc
                    .verdicts
                    .iter()
                    .filter(|v| v.cqt)
                    .filter_map(|v| v.k.map(|k| format!("{k:+}")))
                    .collect();
                if !ks.is_empty() {
                    self.summary.push(format!("valid k: {}", ks.join(", ")));
                }
                let mut out = vec![if crate::inhomogeneous::structure_ok(&pc.structure) {
                    CheckReport::pass("structure")
                } else {
                    let bad = first_problem(&pc.structure).map(describe).unwrap_or_default();
                    CheckReport::fail("structure", format!("first failure {bad}"))
                }];
                for v in &pc.verdicts {
                    let id = format!("classify/{}", v.label);
                    let mut detail = format!("CQT {}", yes(v.cqt));
                    if let Some(k) = v.k {
                        let _ = write!(detail, ", k = {k:+}");
                    }
                    if v.cqt && !d.is_abstract() {
                        let _ = write!(
                            detail,
                            ", * for real c {}, CT at c = 0 {}",
                            yes(v.star_for_real_c),
                            yes(v.ct_at_zero)
                        );
                    }
                    if let Some(r) = first_problem(&v.reports) {
                        let _ = write!(detail, "; first failure {}", describe(r));
                    }
                    out.push(CheckReport::pass(id).with_detail(detail));
                }
                Ok(out)
            }
            DatumKind::Generic => Ok(vec![CheckReport::skipped(
                "classify",
                "no built-in candidate family for this presentation",
            )]),
        }
    }

    fn poincare(&mut self) -> Result<Vec<CheckReport>> {
        if self.loaded.kind != DatumKind::Poincare {
            return Ok(vec![CheckReport::skipped("poincare", "not an inhomogeneous datum")]);
        }
        self.poincare_candidate_suite(Suite::Poincare)
    }

    fn uea(&mut self) -> Result<Vec<CheckReport>> {
        if self.loaded.kind != DatumKind::Poincare {
            return Ok(vec![CheckReport::skipped("uea", "not an inhomogeneous datum")]);
        }
        let d = self.inhom()?;
        let n_row = match self.cfg.with_n.as_deref() {
            None => None,
            Some("n0") => Some(d.build_n0()?),
            Some(name) => Some(
                self.doc()
                    .mat(name)
                    .map(|m| m.tensor.clone())
                    .ok_or_else(|| Error::UnknownName {
                        name: name.into(),
                        line: 0,
                        col: 0,
                    })?,
            ),
        };
        uea_suite(&d, None, self.cfg.max_len, n_row.as_ref())
    }
}

/// One row per report, then the summary lines.
pub fn render_text(out: &RunOutput) -> String {
    let mut s = String::new();
    let mut current = None;
    for e in &out.entries {
        if current != Some(e.suite) {
            let _ = writeln!(s, "== {} ({})", e.suite.name(), out.datum);
            current = Some(e.suite);
        }
        let _ = writeln!(s, "{}", e.report);
    }
    for line in &out.summary {
        let _ = writeln!(s, "{line}");
    }
    s
}

#[derive(Serialize)]
struct JsonWitness {
    index: Vec<usize>,
    value: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    check_id: &'a str,
    status: Status,
    witness: Option<JsonWitness>,
    suite: &'static str,
    datum: &'a str,
    detail: &'a str,
}

#[derive(Serialize)]
struct JsonRun<'a> {
    datum: &'a str,
    reports: Vec<JsonReport<'a>>,
    summary: &'a [String],
}

/// Deterministic JSON; witness indices are 1-based and values are exact
/// canonical strings.
pub fn render_json(out: &RunOutput) -> String {
    let run = JsonRun {
        datum: &out.datum,
        reports: out
            .entries
            .iter()
            .map(|e| JsonReport {
                check_id: &e.report.check_id,
                status: e.report.status,
                witness: e.report.witness.as_ref().map(|w| JsonWitness {
                    index: w.index.iter().map(|i| i + 1).collect(),
                    value: w.value.to_string(),
                }),
                suite: e.suite.name(),
                datum: &out.datum,
                detail: &e.report.detail,
            })
            .collect(),
        summary: &out.summary,
    };
    let mut s = serde_json::to_string_pretty(&run).expect("report serialization");
    s.push('\n');
    s
}

fn words_of(list: &str) -> Vec<String> {
    list.split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

/// The saturated basis of `Mor(src, dst)` for a datum's presentation.
/// Words are comma- or space-separated generator names.
pub fn mor_text(input: &str, src: &str, dst: &str, eval: Option<&Gauss>, depth: usize) -> Result<String> {
    let loaded = load(input)?;
    let p = match loaded.kind {
        DatumKind::Lorentz | DatumKind::Poincare if loaded.doc.mat("X").is_some() => {
            LorentzDatum::from_document(&loaded.doc)?.presentation()
        }
        DatumKind::Sl2 => SL2Datum::from_e(&loaded.doc.mat("E").expect("E").tensor)?.presentation(),
        _ => loaded.doc.presentation(),
    };
    let p = match eval {
        Some(t) => p.eval_at(t)?,
        None => p,
    };
    p.validate()?;
    let (src, dst) = (words_of(src), words_of(dst));
    p.legs(&src)?;
    p.legs(&dst)?;
    let sat = Saturation::new(&p, src.len().max(dst.len()), depth)?;
    let basis = sat.basis(&src, &dst);
    let mut s = format!(
        "Mor([{}] -> [{}]) at depth {depth}: {} basis elements\n",
        src.join(" "),
        dst.join(" "),
        basis.len()
    );
    for (k, b) in basis.iter().enumerate() {
        let _ = writeln!(s, "-- {}\n{b}", k + 1);
    }
    Ok(s)
}

fn show_tensor(s: &mut String, name: &str, t: &Tensor) {
    let _ = writeln!(s, "{name}:\n{t}");
}

/// Pretty-prints the declared matrices of a datum and the ones derived
/// from them, optionally restricted to `names`.
pub fn show_text(input: &str, names: &[String], eval: Option<&Gauss>) -> Result<String> {
    let loaded = load(input)?;
    let ev = |t: &Tensor| -> Result<Tensor> {
        match eval {
            Some(v) => t.eval_at(v),
            None => Ok(t.clone()),
        }
    };
    let mut items: Vec<(String, Tensor)> = Vec::new();
    for m in &loaded.doc.mats {
        items.push((m.name.clone(), ev(&m.tensor)?));
    }
    match loaded.kind {
        DatumKind::Sl2 => {
            let d = SL2Datum::from_e(&loaded.doc.mat("E").expect("E").tensor)?;
            for i in 1..=4 {
                items.push((format!("L{i}"), ev(&d.l(i)?)?));
            }
        }
        DatumKind::Lorentz => {
            let d = LorentzDatum::from_document(&loaded.doc)?;
            let d = match eval {
                Some(v) => d.eval_at(v)?,
                None => d,
            };
            items.push(("Et".into(), d.et.clone()));
            items.push(("Etp".into(), d.etp.clone()));
            for i in 1..=4 {
                items.push((format!("L{i}"), d.base.l(i)?));
            }
        }
        DatumKind::Poincare => {
            let d = InhomDatum::from_document_at(&loaded.doc, eval)?;
            if !d.is_abstract() {
                items.push(("R".into(), d.r.clone()));
                items.push(("Z".into(), d.z.clone()));
                items.push(("T".into(), d.t.clone()));
                items.push(("V".into(), d.v.clone()));
                items.push(("m0".into(), d.build_m0()?));
                items.push(("n0".into(), d.build_n0()?));
            }
            items.push(("R_P".into(), d.build_rp()?));
        }
        DatumKind::Generic => {}
    }
    let mut s = String::new();
    for (name, t) in &items {
        if names.is_empty() || names.contains(name) {
            show_tensor(&mut s, name, t);
        }
    }
    if let Some(missing) = names.iter().find(|n| !items.iter().any(|(m, _)| m == *n)) {
        return Err(Error::UnknownName {
            name: missing.clone(),
            line: 0,
            col: 0,
        });
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse_and_have_expected_kinds() {
        let kinds = [
            DatumKind::Sl2,
            DatumKind::Lorentz,
            DatumKind::Poincare,
            DatumKind::Poincare,
            DatumKind::Poincare,
        ];
        for ((name, _), kind) in BUILTINS.iter().zip(kinds) {
            let l = load(&format!("builtin:{name}")).unwrap();
            assert_eq!(l.kind, kind, "{name}");
        }
        assert!(matches!(load("builtin:nope"), Err(Error::UnknownInput(_))));
    }

    #[test]
    fn shipped_poincare_files_match_constructors() {
        use crate::inhomogeneous::{negative_control_datum, twisted_flip_datum};
        let doc = |n: &str| load(&format!("builtin:{n}")).unwrap().doc;
        let c = InhomDatum::from_document(&doc("poincare-classical")).unwrap();
        let k = InhomDatum::classical();
        assert_eq!((&c.r, &c.z, &c.t), (&k.r, &k.z, &k.t));
        assert_eq!(c.build_m0().unwrap(), k.build_m0().unwrap());
        for (name, built) in [
            ("poincare-twisted", twisted_flip_datum()),
            ("poincare-negative", negative_control_datum()),
        ] {
            let d = InhomDatum::from_document(&doc(name)).unwrap();
            assert_eq!((&d.r, &d.z, &d.t), (&built.r, &built.z, &built.t), "{name}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn slq2_validate_and_mor() {
        let out = dispatch(&RunConfig::new("builtin:slq2").suite(Suite::Validate)).unwrap();
        assert_eq!(out.exit_code(), 0, "{}", render_text(&out));
        assert!(out.find("sl2/ep-matches-e").unwrap().passed());
        let m = mor_text("builtin:slq2", "w,w", "", None, 2).unwrap();
        assert!(m.contains(": 1 basis elements"), "{m}");
    }

    #[test]
    fn empty_run_renders_empty_table() {
        let out = RunOutput {
            datum: "x".into(),
            entries: vec![],
            summary: vec![],
        };
        assert_eq!(render_text(&out), "");
        assert_eq!(out.exit_code(), 0);
        let v: serde_json::Value = serde_json::from_str(&render_json(&out)).unwrap();
        assert_eq!(v["reports"].as_array().unwrap().len(), 0);
    }
}
