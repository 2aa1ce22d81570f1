//! Command-line front end: argument handling, text rendering and exit codes.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use conecrafter_core::exact::rational::{format_rational, parse_rational};
use conecrafter_core::pipeline::report::{rational_strings, CheckRecord, ReductionRecord};
use conecrafter_core::pipeline::{parse_document, run, ParsedDocument, PipelineReport, Stage};
use conecrafter_core::Rational;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "conecrafter",
    version,
    about = "Ample cones and fundamental domains of polarized complex tori"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the torus, the polarization and the group.
    Check(CommonArgs),
    /// Compute End and End^G with the Rosati involution.
    Endo(CommonArgs),
    /// Decompose End^G and describe the invariant ample cone.
    Cone(CommonArgs),
    /// Build a fundamental domain for the invariant ample cone.
    Funddom(CommonArgs),
    /// Reduce one invariant class into the fundamental domain.
    Reduce(ReduceArgs),
    /// Run the whole pipeline including the tiling verification.
    Verify(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Problem document (JSON).
    pub input: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override the sampling seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the number of tiling samples.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Override the step budget per reduction.
    #[arg(long = "max-steps")]
    pub max_steps: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Invariant class, e.g. "[3, 1/2]".
    #[arg(long, allow_hyphen_values = true)]
    pub class: String,
}

/// Parses `"[a, b/c, ...]"`; the brackets are optional.
pub fn parse_class(text: &str) -> Result<Vec<Rational>, String> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(trimmed);
    if inner.trim().is_empty() {
        return Err("empty class".into());
    }
    inner
        .split(',')
        .enumerate()
        .map(|(i, s)| parse_rational(s.trim()).map_err(|e| format!("class[{i}]: {e}")))
        .collect()
}

fn load(args: &CommonArgs) -> Result<ParsedDocument, String> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| format!("cannot read {}: {e}", args.input.display()))?;
    let mut doc = parse_document(&text).map_err(|e| format!("{}: {e}", args.input.display()))?;
    if let Some(seed) = args.seed {
        doc.settings.seed = seed;
    }
    if let Some(samples) = args.samples {
        doc.settings.samples = samples;
    }
    if let Some(steps) = args.max_steps {
        doc.settings.max_steps = steps;
    }
    Ok(doc)
}

fn write_report(path: &Path, report: &PipelineReport) -> anyhow::Result<()> {
    let json = serde_json::to_string_pretty(report)?;
    std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))
}

fn join(v: &[String]) -> String {
    format!("[{}]", v.join(", "))
}

fn check_line(out: &mut String, label: &str, checks: &[CheckRecord]) {
    let failed: Vec<&CheckRecord> = checks.iter().filter(|c| !c.passed).collect();
    if failed.is_empty() {
        let _ = writeln!(out, "{label}: ok ({} checks)", checks.len());
    } else {
        let _ = writeln!(
            out,
            "{label}: {} of {} checks failed",
            failed.len(),
            checks.len()
        );
        for c in failed {
            let _ = writeln!(out, "  FAIL {}: {}", c.name, c.detail);
        }
    }
}

/// Human-readable summary of a report.
pub fn render_text(report: &PipelineReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} (seed {})",
        report.command, report.name, report.seed
    );
    let v = &report.validation;
    check_line(&mut out, "torus", &v.torus);
    if v.sign_normalized {
        let _ = writeln!(out, "  polarization sign normalized");
    }
    if !v.group.is_empty() {
        check_line(&mut out, "group", &v.group);
    }
    if let Some(order) = v.group_order {
        let free = v.elements.iter().filter(|e| e.free).count();
        let _ = writeln!(out, "  order {order}, {free} elements act freely");
    }
    if v.polarization_averaged {
        let _ = writeln!(out, "  polarization replaced by its group average");
    }
    if let Some(g) = &report.ghv {
        let verdict = if g.is_ghv { "yes" } else { "no" };
        let _ = write!(
            out,
            "generalized hyperelliptic: {verdict} (mode {})",
            g.mode
        );
        if !g.reasons.is_empty() {
            let _ = write!(out, "; {}", g.reasons.join("; "));
        }
        out.push('\n');
    }
    if let Some(r) = &report.ranks {
        let _ = writeln!(
            out,
            "ranks: End {} End^G {} rho {} rho^G {}",
            r.end, r.end_invariant, r.rho, r.rho_invariant
        );
    }
    if let Some(e) = &report.endo {
        let t = &e.trace_positivity_invariant;
        let _ = writeln!(
            out,
            "rosati: {} samples, {} failures, invariant Gram definite: {}",
            t.samples, t.failures, t.gram_positive_definite
        );
    }
    if let Some(d) = &report.decomposition {
        let _ = writeln!(out, "factors: {}", d.real_factors.join(" x "));
        for f in &d.factors {
            let _ = writeln!(
                out,
                "  {} places {} dim {} centre {} ({})",
                f.kind, f.places, f.dim_q, f.center_polynomial, f.center_signature
            );
        }
    }
    if let Some(c) = &report.cone {
        let kinds: Vec<String> = c
            .factors
            .iter()
            .map(|f| format!("{}({})", f.cone_type, f.dim))
            .collect();
        let _ = writeln!(
            out,
            "cone: {} (simplicial: {})",
            kinds.join(" x "),
            c.simplicial
        );
        let _ = writeln!(out, "  polarization class {}", join(&c.polarization_class));
        for m in &c.test_classes {
            let _ = writeln!(
                out,
                "  class {} ample {} nef {}",
                join(&m.class),
                m.ample,
                m.nef
            );
        }
    }
    if let Some(d) = &report.domain {
        let _ = writeln!(out, "domain: {} with {} rays", d.status, d.rays.len());
        for r in &d.rays {
            let _ = writeln!(out, "  ray {}", join(r));
        }
        for line in &d.construction {
            let _ = writeln!(out, "  {line}");
        }
        if let Some(eta) = &d.eta {
            let _ = writeln!(out, "  eta {}", join(eta));
        }
    }
    if let Some(t) = &report.tiling {
        let _ = writeln!(
            out,
            "tiling: {}/{} reduced, steps max {} mean {}, recheck {}",
            t.successes, t.samples, t.max_steps_used, t.mean_steps, t.recheck_passed
        );
        match &t.overlap_witness {
            Some(w) => {
                let _ = writeln!(
                    out,
                    "  overlap {} -> {} via {}",
                    join(&w.point),
                    join(&w.image),
                    w.word
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "  no overlap in {} interior samples",
                    t.overlap_samples
                );
            }
        }
        for f in &t.failures {
            let _ = writeln!(out, "  sample {} {}: {}", f.index, join(&f.class), f.reason);
        }
    }
    if let Some(p) = &report.pushdown {
        check_line(&mut out, "pushdown", &p.checks);
    }
    if let Some(r) = &report.reduction {
        let _ = writeln!(
            out,
            "reduce {} -> {} by {} in {} steps",
            join(&r.class),
            join(&r.reduced),
            r.word,
            r.steps
        );
    }
    if !report.invariants.is_empty() {
        check_line(&mut out, "invariants", &report.invariants);
    }
    for s in &report.structural {
        let _ = writeln!(out, "{s}");
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let s = &report.status;
    if s.exit_code == EXIT_PASS {
        let _ = writeln!(out, "status: pass");
    } else {
        let _ = writeln!(
            out,
            "status: fail (exit {}): {}",
            s.exit_code,
            s.failing.join(", ")
        );
    }
    out
}

fn stage_args(command: &Command) -> (Stage, &CommonArgs) {
    match command {
        Command::Check(a) => (Stage::Check, a),
        Command::Endo(a) => (Stage::Endo, a),
        Command::Cone(a) => (Stage::Cone, a),
        Command::Funddom(a) => (Stage::Funddom, a),
        Command::Reduce(a) => (Stage::Funddom, &a.common),
        Command::Verify(a) => (Stage::Verify, a),
    }
}

/// Runs one command, writing text to `stdout` and diagnostics to `stderr`.
/// Returns the process exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> anyhow::Result<i32> {
    let (stage, args) = stage_args(&cli.command);
    let doc = match load(args) {
        Ok(doc) => doc,
        Err(e) => {
            writeln!(stderr, "parse error: {e}")?;
            return Ok(EXIT_PARSE);
        }
    };
    let class = match &cli.command {
        Command::Reduce(r) => match parse_class(&r.class) {
            Ok(c) => Some(c),
            Err(e) => {
                writeln!(stderr, "parse error: --class: {e}")?;
                return Ok(EXIT_PARSE);
            }
        },
        _ => None,
    };
    let result = run(&doc, stage);
    let mut report = result.report;
    let mut code = report.status.exit_code;
    if let Some(class) = class {
        report.command = "reduce".into();
        match (&result.fundamental, code) {
            (Some(f), EXIT_PASS) => match f.reduce(&class, &doc.settings) {
                Ok(r) => {
                    report.reduction = Some(ReductionRecord {
                        class: rational_strings(&r.input),
                        word: r.word.render(f.actions.names()),
                        reduced: rational_strings(&r.reduced),
                        steps: r.steps,
                    });
                }
                Err(e) => {
                    let shown: Vec<String> = class.iter().map(format_rational).collect();
                    writeln!(stderr, "reduction of {} failed: {e}", join(&shown))?;
                    code = EXIT_INCOMPLETE;
                }
            },
            (None, EXIT_PASS) => {
                writeln!(stderr, "no fundamental domain was constructed")?;
                code = EXIT_INCOMPLETE;
            }
            _ => {}
        }
    }
    stdout.write_all(render_text(&report).as_bytes())?;
    if let Some(path) = &args.out {
        write_report(path, &report)?;
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use conecrafter_core::exact::rational::ratio;

    #[test]
    fn class_syntax() {
        assert_eq!(
            parse_class("[3, 1/2]").unwrap(),
            vec![ratio(3, 1), ratio(1, 2)]
        );
        assert_eq!(
            parse_class("-1,2").unwrap(),
            vec![ratio(-1, 1), ratio(2, 1)]
        );
        assert!(parse_class("[]").is_err());
        assert!(parse_class("[1, x]").unwrap_err().contains("class[1]"));
    }

    #[test]
    fn reduce_accepts_negative_class() {
        let cli =
            Cli::try_parse_from(["conecrafter", "reduce", "doc.json", "--class", "-1,2"]).unwrap();
        match cli.command {
            Command::Reduce(r) => assert_eq!(r.class, "-1,2"),
            other => panic!("{other:?}"),
        }
    }
}
