use std::collections::BTreeMap;
use std::ffi::OsStr;
use std::fmt::Write;
use std::fs;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use foliar_core::arborescent::{check_arborescent, generate_diagram, parse_tree, TreeError};
use foliar_core::batch::map_items;
use foliar_core::braid::{braid_to_diagram, check_braid, closure_components, parse_and_reduce};
use foliar_core::catalog;
use foliar_core::criterion::{analyze, check_main, diagnose, CheckError, Status, Verdict};
use foliar_core::diagram::{parse_pd, LinkDiagram};
use foliar_core::dot;
use foliar_core::side::SideError;
use foliar_core::surgery::{self, classify_borromean, plan_configurations, verify_plan, PlanError, Slope};
use foliar_core::tait::{build_tait, check_tait, TaitError};
use foliar_core::twist::{reduce_assumption1, TwistError};
use serde::Serialize;
use serde_json::json;

use crate::report::{join, to_json, Agreement, OracleCheck, RunReport};

#[derive(Debug)]
pub enum Failure {
    /// Exit code 2.
    Input(String),
    /// Exit code 3; `output` is still printed.
    Invariant { output: String, message: String },
}

fn invariant(message: impl Into<String>) -> Failure {
    Failure::Invariant { output: String::new(), message: message.into() }
}

/// Pipeline errors that can only come from a bug are invariant failures;
/// the rest describe diagrams outside the criterion's reach.
fn check_failure(e: CheckError) -> Failure {
    match &e {
        CheckError::Twist(TwistError::UnknotCollapse) | CheckError::Side(SideError::DegenerateCollapse) => {
            Failure::Input(e.to_string())
        }
        _ => invariant(e.to_string()),
    }
}

fn read_input(path: Option<&Path>) -> Result<(String, String), Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            Ok((p.display().to_string(), text))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            Ok(("<stdin>".into(), text))
        }
    }
}

/// Diagram JSON if the text starts with `{`, PD code otherwise.
fn parse_diagram(text: &str) -> Result<LinkDiagram, Failure> {
    let parsed = if text.trim_start().starts_with('{') { LinkDiagram::from_json_str(text) } else { parse_pd(text) };
    parsed.map_err(|e| Failure::Input(e.to_string()))
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn tait_oracle(d: &LinkDiagram, status: Status) -> Result<OracleCheck, Failure> {
    Ok(match check_tait(d) {
        Ok(t) => OracleCheck {
            route: "tait",
            agreement: if t.status == status { Agreement::Agree } else { Agreement::Disagree },
            status: Some(t.status),
            detail: None,
        },
        Err(e @ TaitError::OutsideDomain(_)) => {
            OracleCheck { route: "tait", agreement: Agreement::OutsideDomain, status: None, detail: Some(e.to_string()) }
        }
        Err(e) => return Err(invariant(format!("tait route: {e}"))),
    })
}

fn diagram_report(input: String, d: &LinkDiagram, timings: bool) -> Result<RunReport, Failure> {
    let t = Instant::now();
    let verdict = check_main(d).map_err(check_failure)?;
    let main_ms = ms(t);
    let t = Instant::now();
    let diagnostics = diagnose(d).map_err(check_failure)?;
    let diagnose_ms = ms(t);
    let t = Instant::now();
    let oracle = tait_oracle(d, verdict.status)?;
    let tait_ms = ms(t);
    let mut report = RunReport::new(input, verdict);
    report.diagnostics = diagnostics;
    report.oracles.push(oracle);
    if timings {
        report.timings_ms = Some(BTreeMap::from([("main", main_ms), ("diagnose", diagnose_ms), ("tait", tait_ms)]));
    }
    Ok(report)
}

fn write_dot(dir: &Path, d: &LinkDiagram) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    if let Some(a) = analyze(d).map_err(check_failure)? {
        files.push(("collapsed.dot", dot::collapsed_to_dot(&a.collapsed)));
        files.push(("side.dot", dot::side_graphs_to_dot(&a.green, &a.red)));
    }
    let (t0, t1) = build_tait(d);
    files.push(("tait0.dot", dot::tait_to_dot(&t0)));
    files.push(("tait1.dot", dot::tait_to_dot(&t1)));
    for (name, body) in files {
        let p = dir.join(name);
        fs::write(&p, body).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn finish(report: RunReport, json: bool) -> Result<String, Failure> {
    let output = report.render(json);
    match report.disagreement() {
        Some(message) => Err(Failure::Invariant { output, message }),
        None => Ok(output),
    }
}

pub fn check(input: Option<&Path>, emit_dot: Option<&Path>, timings: bool, json: bool) -> Result<String, Failure> {
    let (name, text) = read_input(input)?;
    let d = parse_diagram(&text)?;
    let report = diagram_report(name, &d, timings)?;
    if let Some(dir) = emit_dot {
        write_dot(dir, &d)?;
    }
    finish(report, json)
}

fn braid_report(word: &str, strands: Option<usize>, crosscheck: bool) -> Result<(RunReport, LinkDiagram), Failure> {
    let w = parse_and_reduce(word, strands).map_err(|e| Failure::Input(e.to_string()))?;
    let mut report = RunReport::new(w.to_string(), check_braid(&w));
    report.details = Some(json!({
        "strands": w.strands,
        "components": closure_components(&w),
        "permutation": w.permutation(),
    }));
    let d = braid_to_diagram(&w).map_err(|e| invariant(format!("closure of {w}: {e}")))?;
    if crosscheck {
        let main = check_main(&d).map_err(check_failure)?;
        report.oracles.push(OracleCheck {
            route: "closure",
            agreement: Agreement::compare(report.verdict.status, main.status),
            status: Some(main.status),
            detail: (!main.reasons.is_empty()).then(|| join(&main.reasons)),
        });
    }
    Ok((report, d))
}

pub fn braid(word: &str, strands: Option<usize>, crosscheck: bool, emit_dot: Option<&Path>, json: bool) -> Result<String, Failure> {
    let (report, d) = braid_report(word, strands, crosscheck)?;
    if let Some(dir) = emit_dot {
        write_dot(dir, &d)?;
    }
    finish(report, json)
}

fn tree_report(expr: &str, crosscheck: bool) -> Result<(RunReport, LinkDiagram), Failure> {
    let t = parse_tree(expr).map_err(|e| Failure::Input(e.to_string()))?;
    let d = generate_diagram(&t).map_err(|e| invariant(format!("tree {t}: {e}")))?;
    let verdict = check_arborescent(&t).map_err(|e| match e {
        TreeError::Check(c) => check_failure(c),
        TreeError::ZeroWeight | TreeError::Malformed(_) => Failure::Input(e.to_string()),
        e => invariant(e.to_string()),
    })?;
    let mut report = RunReport::new(t.to_string(), verdict);
    report.details = Some(json!({ "diagram": d.to_string(), "components": d.component_count() }));
    if crosscheck {
        let main = check_main(&d).map_err(check_failure)?;
        report.oracles.push(OracleCheck {
            route: "diagram",
            agreement: Agreement::compare(report.verdict.status, main.status),
            status: Some(main.status),
            detail: None,
        });
        report.oracles.push(tait_oracle(&d, main.status)?);
    }
    Ok((report, d))
}

pub fn tree(expr: &str, crosscheck: bool, emit_dot: Option<&Path>, json: bool) -> Result<String, Failure> {
    let (report, d) = tree_report(expr, crosscheck)?;
    if let Some(dir) = emit_dot {
        write_dot(dir, &d)?;
    }
    finish(report, json)
}

pub fn borromean(slopes: &[String], json: bool) -> Result<String, Failure> {
    let r: Vec<Slope> = slopes
        .iter()
        .map(|s| s.parse::<Slope>().map_err(|e| Failure::Input(format!("{s}: {e}"))))
        .collect::<Result<_, _>>()?;
    let [a, b, c] = r[..] else { return Err(Failure::Input("expected three slopes".into())) };
    let class = classify_borromean(a, b, c);
    if json {
        let slopes: Vec<String> = r.iter().map(ToString::to_string).collect();
        return Ok(to_json(&json!({ "slopes": slopes, "classification": class })));
    }
    Ok(format!("{:?}\n", class.verdict))
}

#[derive(Serialize)]
struct AugmentReport {
    input: String,
    augmentation: surgery::AugmentedLink,
    plan: Option<surgery::ConfigAssignment>,
    plan_error: Option<String>,
}

pub fn augment(input: Option<&Path>, json: bool) -> Result<String, Failure> {
    let (name, text) = read_input(input)?;
    let d = parse_diagram(&text)?;
    let augmentation = match diagnose(&d).map_err(check_failure)? {
        Some(diag) => diag.augmentation,
        None => {
            let reduced = reduce_assumption1(&d).map_err(|e| check_failure(e.into()))?;
            surgery::augment(&reduced).map_err(|e| invariant(e.to_string()))?
        }
    };
    let (plan, plan_error) = match plan_configurations(&augmentation) {
        Ok(p) => {
            if let Err(v) = verify_plan(&augmentation, &p) {
                return Err(invariant(format!("planner witness rejected: {v:?}")));
            }
            (Some(p), None)
        }
        Err(e @ PlanError::Unsatisfiable(_)) if augmentation.kept_crossings.is_empty() => {
            return Err(invariant(e.to_string()));
        }
        Err(e) => (None, Some(e.to_string())),
    };
    let report = AugmentReport { input: name, augmentation, plan, plan_error };
    if json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    let a = &report.augmentation;
    writeln!(out, "input: {}", report.input).unwrap();
    writeln!(out, "surgery: {}", a.surgery).unwrap();
    writeln!(out, "circles: {}", a.circles.len()).unwrap();
    for (i, c) in a.circles.iter().enumerate() {
        writeln!(
            out,
            "  circle {i}: region {}, {} crossings, handedness {:+}, k = {}, coefficient {}",
            c.region, c.count, c.handedness, c.k, c.coefficient
        )
        .unwrap();
    }
    if !a.kept_crossings.is_empty() {
        writeln!(out, "kept crossings: regions {:?}", a.kept_crossings).unwrap();
    }
    match (&report.plan, &report.plan_error) {
        (Some(p), _) => {
            let kinds: Vec<String> = p.configs.iter().map(|c| serde_json::to_value(c.kind).unwrap().as_str().unwrap().to_string()).collect();
            writeln!(out, "plan: first {}, cusp {}, flip {}, kinds [{}]", p.first, p.cusp, p.flip, kinds.join(", ")).unwrap();
        }
        (None, Some(e)) => writeln!(out, "plan: none ({e})").unwrap(),
        (None, None) => {}
    }
    Ok(out)
}

#[derive(Serialize)]
struct CorpusRow {
    file: String,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<Verdict>,
    oracles: Vec<OracleCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    invariant: bool,
}

fn corpus_row(path: &Path) -> CorpusRow {
    let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    let kind = path.extension().and_then(OsStr::to_str).unwrap_or("").to_string();
    let result = fs::read_to_string(path).map_err(|e| Failure::Input(e.to_string())).and_then(|text| {
        let text = text.trim();
        match kind.as_str() {
            "braid" => braid_report(text, None, true).map(|r| r.0),
            "tree" => tree_report(text, true).map(|r| r.0),
            _ => parse_diagram(text).and_then(|d| diagram_report(file.clone(), &d, false)),
        }
    });
    match result {
        Ok(r) => {
            let message = r.disagreement();
            CorpusRow { file, kind, invariant: message.is_some(), error: message, verdict: Some(r.verdict), oracles: r.oracles }
        }
        Err(Failure::Input(e)) => CorpusRow { file, kind, verdict: None, oracles: Vec::new(), error: Some(e), invariant: false },
        Err(Failure::Invariant { message, .. }) => {
            CorpusRow { file, kind, verdict: None, oracles: Vec::new(), error: Some(message), invariant: true }
        }
    }
}

#[derive(Serialize, Default)]
struct CorpusSummary {
    inputs: usize,
    certified: usize,
    fail: usize,
    excluded: usize,
    input_errors: usize,
    invariant_failures: usize,
}

pub fn corpus(dir: &Path, json: bool) -> Result<String, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(OsStr::to_str), Some("pd" | "json" | "braid" | "tree")))
        .collect();
    paths.sort();
    let rows = map_items(&paths, |p| corpus_row(p));
    let mut s = CorpusSummary { inputs: rows.len(), ..Default::default() };
    for r in &rows {
        match (&r.verdict, r.invariant) {
            (_, true) => s.invariant_failures += 1,
            (None, false) => s.input_errors += 1,
            (Some(v), false) => match v.status {
                Status::Certified => s.certified += 1,
                Status::Fail => s.fail += 1,
                Status::Excluded => s.excluded += 1,
            },
        }
    }
    let output = if json {
        to_json(&json!({ "rows": rows, "summary": s }))
    } else {
        let mut out = String::new();
        writeln!(out, "{:<28} {:<6} {:<10} {:<32} oracles", "file", "kind", "status", "reasons").unwrap();
        for r in &rows {
            let (status, reasons) = match (&r.verdict, &r.error) {
                (Some(v), _) => (v.status.to_string(), join(&v.reasons)),
                (None, Some(e)) => ((if r.invariant { "INVARIANT" } else { "error" }).to_string(), e.clone()),
                (None, None) => (String::new(), String::new()),
            };
            let oracles: Vec<String> = r
                .oracles
                .iter()
                .map(|o| format!("{}:{}", o.route, serde_json::to_value(o.agreement).unwrap().as_str().unwrap()))
                .collect();
            writeln!(out, "{:<28} {:<6} {:<10} {:<32} {}", r.file, r.kind, status, reasons, oracles.join(" ")).unwrap();
        }
        writeln!(
            out,
            "{} inputs: {} certified, {} fail, {} excluded, {} input errors, {} invariant failures",
            s.inputs, s.certified, s.fail, s.excluded, s.input_errors, s.invariant_failures
        )
        .unwrap();
        out
    };
    if s.invariant_failures > 0 {
        let bad: Vec<&str> = rows.iter().filter(|r| r.invariant).map(|r| r.file.as_str()).collect();
        return Err(Failure::Invariant { output, message: format!("oracle disagreement or pipeline error in {}", bad.join(", ")) });
    }
    if s.input_errors > 0 {
        print!("{output}");
        return Err(Failure::Input(format!("{} inputs could not be checked", s.input_errors)));
    }
    Ok(output)
}

pub fn catalog(name: Option<&str>) -> Result<String, Failure> {
    match name {
        None => {
            let mut names: Vec<String> = catalog::corpus().into_iter().map(|(n, _)| n).collect();
            names.push("hopf".into());
            Ok(names.iter().map(|n| format!("{n}\n")).collect())
        }
        Some(n) => catalog::lookup(n)
            .map(|d| format!("{d}\n"))
            .ok_or_else(|| Failure::Input(format!("no built-in diagram named {n:?}; try d_<k> or k_<n>"))),
    }
}
