//! Command-line front end: model loading, cone tests, cohomology tables,
//! classification sweeps and the bundled exactness regression.
//!
//! Exit codes: 0 success, 1 verdict inconsistency or failed exact check
//! (a bug, not an input problem), 2 input error.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::detector::{classify, ClassKind, DetectError, DetectionReport, DetectorConfig, Verdict};
use crate::exterior::{Form, FormRepr};
use crate::model::{
    bundled_model, bundled_names, verify_sl2c_example, CohomologyGroup, GradedComplex,
    LieAlgebraModel, ModelError,
};
use crate::positivity::{
    is_positive, is_strongly_positive, is_transverse, is_weakly_positive, ConeConfig, ConeError,
    ConeStatus, ConeVerdict,
};

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: exit code 2.
    #[error("{0}")]
    Input(String),
    /// Exact check failure or certificate inconsistency: exit code 1.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::CheckFailed(_) | ModelError::Mismatch(_) => CliError::Check(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<DetectError> for CliError {
    fn from(e: DetectError) -> Self {
        match e {
            DetectError::Inconsistent { .. } => CliError::Check(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
}

/// Resolved run configuration (defaults: all classes, full p range,
/// `tol = 1e−6`, `seed = 0`, table output).
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model: String,
    pub p: Option<Vec<usize>>,
    pub classes: Option<Vec<ClassKind>>,
    pub tol: f64,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: "sl2c".into(),
            p: None,
            classes: None,
            tol: 1e-6,
            seed: 0,
            format: OutputFormat::Table,
        }
    }
}

/// Load a model by bundled name or file path.
pub fn load_model(spec: &str) -> Result<LieAlgebraModel, CliError> {
    if bundled_names().contains(&spec) {
        return Ok(bundled_model(spec)?);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| CliError::Input(format!("cannot read model file {spec:?}: {e}")))?;
    Ok(LieAlgebraModel::from_json(&text)?)
}

fn build(spec: &str) -> Result<GradedComplex, CliError> {
    Ok(GradedComplex::build(load_model(spec)?)?)
}

/// `verify-example`: the exact identity suite on the SL(2,ℂ) model.
pub fn cmd_verify_example(model: &str) -> Result<String, CliError> {
    let complex = build(model)?;
    let report = verify_sl2c_example(&complex)?;
    let mut out = String::new();
    let _ = writeln!(out, "model: {}", complex.model().name());
    let _ = writeln!(out, "dω ≠ 0                      {}", mark(report.d_omega_nonzero));
    let _ = writeln!(out, "dω² = 0 (exact)             {}", mark(report.d_omega_sq_zero));
    let _ = writeln!(out, "ω² = dΓ (exact)             {}", mark(report.primitive_residual_zero));
    let _ = writeln!(out, "ω² = i∂∂̄X solvable          {}", mark(report.ddbar_solvable));
    if !report.all_pass() {
        return Err(CliError::Check("exact identity suite failed".into()));
    }
    Ok(out)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

/// `classify`: per-(p, class) verdict matrix with certificate summaries.
pub fn cmd_classify(cfg: &RunConfig) -> Result<String, CliError> {
    let complex = build(&cfg.model)?;
    let n = complex.dim();
    let p_range: Vec<usize> = match &cfg.p {
        Some(ps) => {
            for &p in ps {
                if p == 0 || p >= n {
                    return Err(CliError::Input(format!("p = {p} outside 1..={}", n - 1)));
                }
            }
            ps.clone()
        }
        None => (1..n).collect(),
    };
    let classes: Vec<ClassKind> = cfg.classes.clone().unwrap_or_else(|| ClassKind::all().to_vec());
    let det_cfg = DetectorConfig { tol: cfg.tol, seed: cfg.seed, ..Default::default() };
    let report = classify(&complex, &p_range, &classes, &det_cfg)?;
    if !report.consistent {
        return Err(CliError::Check(format!(
            "classification inconsistency: {}",
            report.notes.join("; ")
        )));
    }
    match cfg.format {
        OutputFormat::Json => Ok(report.to_json()),
        OutputFormat::Table => Ok(render_report(&report)),
    }
}

fn render_report(report: &DetectionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "model: {} (n = {}, invariant-level verdicts, tol = {}, seed = {})",
        report.model, report.n, report.tol, report.seed
    );
    let _ = writeln!(out, "{:<4} {:<5} {:<15} {:<5} {}", "p", "class", "verdict", "dim S", "certificate");
    for e in &report.entries {
        let summary = match &e.certificate {
            crate::detector::Certificate::Primal(p) => format!(
                "margin {:.3e}, {} cuts, {} constraints",
                p.margin, p.iterations, p.constraints
            ),
            crate::detector::Certificate::Dual(d) => {
                format!("{} atoms, exact annihilation", d.atoms.len())
            }
            crate::detector::Certificate::Indeterminate(i) => i.detail.clone(),
        };
        let verdict = match e.verdict {
            Verdict::Primal => "Primal",
            Verdict::Dual => "Dual",
            Verdict::PrimalRefuted => "PrimalRefuted",
            Verdict::Indeterminate => "Indeterminate",
        };
        let _ = writeln!(out, "{:<4} {:<5} {:<15} {:<5} {}", e.p, e.class.to_string(), verdict, e.subspace_dim, summary);
    }
    if !report.notes.is_empty() {
        let _ = writeln!(out, "notes:");
        for nte in &report.notes {
            let _ = writeln!(out, "  - {nte}");
        }
    }
    out
}

/// Parse a form argument: inline JSON (starts with `{`) or a file path.
pub fn load_form(spec: &str) -> Result<Form, CliError> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec)
            .map_err(|e| CliError::Input(format!("cannot read form file {spec:?}: {e}")))?
    };
    let repr: FormRepr =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("form JSON: {e}")))?;
    Form::from_repr(&repr).map_err(|e| CliError::Input(e.to_string()))
}

#[derive(Serialize)]
struct ConeReport {
    cone: String,
    verdict: ConeVerdict,
}

/// `cones`: cone membership verdicts for a real `(p,p)`-form.
pub fn cmd_cones(
    form: &Form,
    which: &[&str],
    tol: f64,
    seed: u64,
    format: OutputFormat,
) -> Result<String, CliError> {
    let mut cone_cfg = ConeConfig::with_seed(seed);
    cone_cfg.tol = tol;
    let mut verdicts: Vec<ConeReport> = Vec::new();
    for &w in which {
        let verdict = match w {
            "sp" => is_strongly_positive(form, &cone_cfg)?,
            "p" => is_positive(form)?,
            "wp" => is_weakly_positive(form, &cone_cfg)?,
            "transverse" => is_transverse(form, &cone_cfg)?,
            other => return Err(CliError::Input(format!("unknown cone {other:?}"))),
        };
        verdicts.push(ConeReport { cone: w.to_string(), verdict });
    }
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(&verdicts)
            .map_err(|e| CliError::Input(e.to_string())),
        OutputFormat::Table => {
            let mut out = String::new();
            let (p, q) = form.bidegree();
            let _ = writeln!(out, "form: ({p},{q}) on n = {}", form.n());
            for v in &verdicts {
                let status = match v.verdict.status {
                    ConeStatus::In => "IN",
                    ConeStatus::Out => "OUT",
                    ConeStatus::Indeterminate => "INDETERMINATE",
                };
                let margin = v
                    .verdict
                    .margin
                    .map(|m| format!(" margin {m:.3e}"))
                    .unwrap_or_default();
                let exact = if v.verdict.exact { " (exact)" } else { "" };
                let witness = if v.verdict.witness.is_some() { " [witness attached]" } else { "" };
                let _ = writeln!(out, "{:<11} {status}{margin}{exact}{witness}", v.cone);
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct CohomologyTable {
    model: String,
    n: usize,
    de_rham: Vec<usize>,
    bott_chern: Vec<usize>,
    aeppli: Vec<usize>,
    w: Vec<usize>,
}

/// `cohomology`: dimension table of the invariant cohomologies.
pub fn cmd_cohomology(model: &str, format: OutputFormat) -> Result<String, CliError> {
    let complex = build(model)?;
    let n = complex.dim();
    let de_rham: Vec<usize> = (0..=2 * n)
        .map(|j| complex.cohomology_dim(CohomologyGroup::DeRham(j)))
        .collect::<Result<_, _>>()?;
    let bott_chern: Vec<usize> = (0..=n)
        .map(|k| complex.cohomology_dim(CohomologyGroup::BottChern(k)))
        .collect::<Result<_, _>>()?;
    let aeppli: Vec<usize> = (0..=n)
        .map(|k| complex.cohomology_dim(CohomologyGroup::Aeppli(k)))
        .collect::<Result<_, _>>()?;
    let w: Vec<usize> = (0..n.saturating_sub(1))
        .map(|q| complex.cohomology_dim(CohomologyGroup::W(q)))
        .collect::<Result<_, _>>()?;
    let table = CohomologyTable { model: complex.model().name().into(), n, de_rham, bott_chern, aeppli, w };
    match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&table).map_err(|e| CliError::Input(e.to_string()))
        }
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "model: {} (n = {}, invariant forms)", table.model, table.n);
            let _ = writeln!(out, "de Rham   H^j      : {:?}", table.de_rham);
            let _ = writeln!(out, "Bott–Chern H^(k,k) : {:?}", table.bott_chern);
            let _ = writeln!(out, "Aeppli    H^(k,k)  : {:?}", table.aeppli);
            let _ = writeln!(out, "W^(q+2,q+1)        : {:?}", table.w);
            Ok(out)
        }
    }
}

/// Resolve the effective seed: flag value, else `PKK_SEED`, else 0.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("PKK_SEED") {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|e| CliError::Input(format!("PKK_SEED={v:?} is not a u64: {e}"))),
        Err(_) => Ok(0),
    }
}

/// Parse `--class` values.
pub fn parse_classes(values: &[String]) -> Result<Vec<ClassKind>, CliError> {
    values
        .iter()
        .map(|v| {
            ClassKind::parse(v).ok_or_else(|| {
                CliError::Input(format!(
                    "unknown class {v:?}; expected one of pk, pwk, ps, ppl, e1, e2, e3, e4"
                ))
            })
        })
        .collect()
}
