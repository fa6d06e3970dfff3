//! Verification suites behind `plring verify`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use plring::chain::chain_checks;
use plring::cvgraph::{check_cv_criterion, ring_cv_set, WitnessFile};
use plring::report::{Check, CheckReport, Status};
use plring::ring::{ring_axiom_checks, validate_ring, verify_ar_lemma, RingSystem};
use serde_json::json;

use crate::group::{Group, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Chain,
    Ring,
    Cv,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

pub struct SuiteOutput {
    suite: Suite,
    report: CheckReport,
    verdict: Option<(&'static str, &'static str)>,
}

impl SuiteOutput {
    pub fn exit_code(&self) -> u8 {
        self.report.exit_code() as u8
    }

    pub fn render(&self, format: Format) -> String {
        let pass = self.report.count(Status::Pass);
        let fail = self.report.count(Status::Fail);
        let skip = self.report.count(Status::Skip);
        match format {
            Format::Text => {
                let mut s = self.report.to_string();
                if let Some((verdict, note)) = self.verdict {
                    let _ = writeln!(s, "VERDICT {verdict}");
                    let _ = writeln!(s, "NOTE {note}");
                }
                let _ = writeln!(s, "SUMMARY pass={pass} fail={fail} skip={skip}");
                s
            }
            Format::Structured => {
                let checks: Vec<_> = self
                    .report
                    .checks()
                    .iter()
                    .map(|c| json!({ "id": c.id, "status": c.status.as_str(), "witness": c.witness }))
                    .collect();
                let doc = json!({
                    "suite": format!("{:?}", self.suite).to_lowercase(),
                    "checks": checks,
                    "verdict": self.verdict.map(|v| v.0),
                    "note": self.verdict.map(|v| v.1),
                    "summary": { "pass": pass, "fail": fail, "skip": skip },
                    "exit": self.exit_code(),
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("json value serializes");
                s.push('\n');
                s
            }
        }
    }
}

pub fn run(group: &Group, suite: Suite, witness: Option<&Path>, k_max: usize) -> Result<SuiteOutput, String> {
    let mut report = CheckReport::new();
    let mut verdict = None;
    let want_chain = suite == Suite::Chain || (suite == Suite::All && group.circle_maps().is_none());
    let want_ring = suite == Suite::Ring || (suite == Suite::All && group.circle_maps().is_some());
    let want_cv = suite == Suite::Cv || (suite == Suite::All && group.circle_maps().is_some_and(|m| m.len() == 5));

    if want_chain {
        let maps = group.line_maps().ok_or("suite chain needs maps of the line")?;
        report.extend(chain_checks(&maps));
    }
    if want_ring {
        report.extend(ring_suite(group)?);
    }
    if want_cv {
        let (checks, v) = cv_suite(group, witness, k_max)?;
        report.extend(checks);
        verdict = v;
    }
    Ok(SuiteOutput { suite, report, verdict })
}

fn ring_suite(group: &Group) -> Result<Vec<Check>, String> {
    let maps = group.circle_maps().ok_or("suite ring needs maps of the circle")?;
    let mut checks = ring_axiom_checks(&maps).map_err(|e| e.to_string())?;
    if !checks.iter().all(Check::passed) {
        return Ok(checks);
    }
    let ring = validate_ring(&maps).map_err(|e| e.to_string())?;
    let hyp = ring.hypothesis_checks();
    if ring.len() != 5 || !hyp.iter().all(Check::passed) {
        checks.extend(hyp);
        return Ok(checks);
    }
    let cert = verify_ar_lemma(&ring).map_err(|e| e.to_string())?;
    checks.extend(cert.checks);
    Ok(checks)
}

/// A 5-ring whose conjugates `r'_i` are defined, or the reason there is none.
fn five_ring(group: &Group) -> Result<RingSystem, String> {
    let maps = group.circle_maps().ok_or("maps of the circle are required")?;
    let ring = validate_ring(&maps).map_err(|e| e.to_string())?;
    if ring.len() != 5 {
        return Err(format!("a ring of 5 maps is required, got {}", ring.len()));
    }
    if let Some(c) = ring.hypothesis_checks().into_iter().find(|c| !c.passed()) {
        return Err(format!("{} fails", c.id));
    }
    Ok(ring)
}

type CvOutcome = (Vec<Check>, Option<(&'static str, &'static str)>);

fn cv_suite(group: &Group, witness: Option<&Path>, k_max: usize) -> Result<CvOutcome, String> {
    let ring = match five_ring(group) {
        Ok(r) => r,
        Err(why) => return Ok((vec![Check::skip("DELTA_COMPLETE", format!("not run: {why}"))], None)),
    };
    let wf = match (witness, &group.witness) {
        (Some(p), _) => read_witness(p)?,
        (None, Some(Witness::File(p))) => read_witness(p)?,
        (None, Some(Witness::Inline(w))) => w.clone(),
        (None, None) => WitnessFile::default(),
    };
    let env = ring.env_with_rprimes().map_err(|e| e.to_string())?;
    let cv = check_cv_criterion(&env, &ring_cv_set(&ring), &wf, k_max).map_err(|e| e.to_string())?;
    let verdict = (cv.verdict(), cv.soundness_note);
    Ok((cv.checks, Some(verdict)))
}

/// A witness file that does not exist reads as empty, so the edges it
/// would have supplied are reported as skipped.
fn read_witness(p: &Path) -> Result<WitnessFile, String> {
    match fs::read_to_string(p) {
        Ok(text) => WitnessFile::parse(&text).map_err(|e| format!("{}: {e}", p.display())),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            eprintln!("plring: witness file {} not found; edges without a default witness are skipped", p.display());
            Ok(WitnessFile::default())
        }
        Err(e) => Err(format!("{}: {e}", p.display())),
    }
}
