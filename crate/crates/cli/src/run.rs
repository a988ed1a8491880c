//! The analysis pipeline and its exit codes.

use std::path::{Path, PathBuf};

use kleppner_core::cocycle::{Cocycle, DSigmaDesc, ValidationMode, ValidationReport};
use kleppner_core::engine::{class_size_str, classify, ClassificationResult};
use kleppner_core::error::Error;
use kleppner_core::group::Group;
use kleppner_core::kleppner::{sigma_regular_classes, KleppnerStatus};
use kleppner_core::subgroup::Subgroup;
use kleppner_core::verdict::{Decision, Fact};
use kleppner_oracle::{OracleReport, DEFAULT_THETA, MAX_ORDER};
use rayon::prelude::*;

use crate::build::{build_cocycle, build_group};
use crate::report::*;
use crate::spec::{parse_spec, AnalysisSpec, ReportFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID_COCYCLE: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;
pub const EXIT_RESOURCE: i32 = 5;

/// Sampled triples for cocycles on infinite groups.
pub const SAMPLED_TRIPLES: usize = 10_000;
/// Largest finite group validated exhaustively.
const EXHAUSTIVE_CAP: usize = 256;

const CONJUGATION_TOLERANCE: f64 = 1e-12;
const CAREY_MORAN_TOLERANCE: f64 = 1e-10;

/// Command-line values that take precedence over the spec's options.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub report: Option<ReportFormat>,
    pub oracle: bool,
    pub effort: Option<u32>,
    pub seed: Option<u64>,
    pub theta_numeric: Option<f64>,
}

impl Overrides {
    fn apply(&self, spec: &mut AnalysisSpec) {
        let o = &mut spec.options;
        if let Some(r) = self.report {
            o.report = r;
        }
        o.oracle |= self.oracle;
        if let Some(e) = self.effort {
            o.effort = e;
        }
        if let Some(s) = self.seed {
            o.seed = s;
        }
        if self.theta_numeric.is_some() {
            o.theta_numeric = self.theta_numeric;
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidCocycle(_) | Error::Circle(_) => EXIT_INVALID_COCYCLE,
        Error::GroupTooLarge { .. } => EXIT_RESOURCE,
        Error::InternalInconsistency(_) => EXIT_INCONSISTENT,
        _ => EXIT_PARSE,
    }
}

fn decision(d: Decision) -> String {
    d.as_str().to_string()
}

fn fact(f: &Fact) -> FactReport {
    FactReport {
        value: decision(f.value),
        citation: f.citation.to_string(),
    }
}

fn subgroup(g: &Group, s: &Subgroup) -> SubgroupReport {
    SubgroupReport {
        label: s.label().to_string(),
        generators: s.generators().iter().map(|x| g.format_element(x)).collect(),
        certified: !s.is_uncertain(),
    }
}

fn validation_summary(g: &Group, r: &ValidationReport) -> ValidationSummary {
    ValidationSummary {
        mode: if r.exhaustive { "exhaustive" } else { "sampled" }.into(),
        checked_triples: r.checked_triples,
        violations: r.violation_count,
        normalization_failures: r.normalization_failures.len(),
        homomorphism_failures: r.homomorphism_failures,
        valid: r.is_valid(),
        first_violations: r
            .violations
            .iter()
            .take(4)
            .map(|t| t.clone().map(|x| g.format_element(&x)))
            .collect(),
    }
}

fn base_report(spec: &AnalysisSpec, g: &Group, s: &Cocycle, validation: ValidationSummary) -> Report {
    Report {
        schema: SCHEMA,
        name: spec.name.clone(),
        group: GroupReport {
            family: g.tag().to_string(),
            name: g.name(),
            order: g.order(),
        },
        cocycle: CocycleReport {
            kind: s.kind_name().to_string(),
            validation,
            d_sigma: None,
        },
        fc: None,
        kleppner: None,
        classification: None,
        metadata: None,
        oracle: None,
        error: None,
    }
}

fn render(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => report.to_text(),
    }
}

fn error_output(kind: &str, message: String, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let v = serde_json::json!({"schema": SCHEMA, "error": {"kind": kind, "message": message}});
            let mut s = serde_json::to_string_pretty(&v).expect("serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => format!("error ({kind}): {message}\n"),
    }
}

/// Parses and builds a spec, and validates the cocycle.
fn prepare(source: &str, overrides: &Overrides) -> Result<(AnalysisSpec, Group, Cocycle, ValidationReport), Outcome> {
    let fallback = overrides.report.unwrap_or(ReportFormat::Text);
    let mut spec = parse_spec(source).map_err(|e| Outcome {
        code: EXIT_PARSE,
        output: error_output("parse", e.to_string(), fallback),
    })?;
    overrides.apply(&mut spec);
    let format = spec.options.report;
    let fail = |e: Error| Outcome {
        code: exit_code(&e),
        output: error_output("build", e.to_string(), format),
    };
    let g = build_group(&spec.group).map_err(fail)?;
    let s = build_cocycle(&spec.cocycle, &g, &spec.group).map_err(fail)?;
    let mode = match g.order() {
        Some(n) if n <= EXHAUSTIVE_CAP => ValidationMode::Exhaustive,
        _ => ValidationMode::Sampled {
            count: SAMPLED_TRIPLES,
            seed: spec.options.seed,
        },
    };
    let validation = s.validate(mode).map_err(fail)?;
    Ok((spec, g, s, validation))
}

/// Cocycle validation only.
pub fn validate_source(source: &str, overrides: &Overrides) -> Outcome {
    let (spec, g, s, validation) = match prepare(source, overrides) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let valid = validation.is_valid();
    let report = base_report(&spec, &g, &s, validation_summary(&g, &validation));
    Outcome {
        code: if valid { EXIT_OK } else { EXIT_INVALID_COCYCLE },
        output: render(&report, spec.options.report),
    }
}

/// Full analysis of one spec document.
pub fn analyze_source(source: &str, overrides: &Overrides) -> Outcome {
    let (spec, g, s, validation) = match prepare(source, overrides) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let format = spec.options.report;
    let mut report = base_report(&spec, &g, &s, validation_summary(&g, &validation));
    if !validation.is_valid() {
        report.error = Some(ErrorReport {
            kind: "invalid_cocycle".into(),
            message: "the cocycle identity or normalization fails".into(),
        });
        return Outcome {
            code: EXIT_INVALID_COCYCLE,
            output: render(&report, format),
        };
    }
    match analyze(&spec, &g, &s, &mut report) {
        Ok(code) => Outcome {
            code,
            output: render(&report, format),
        },
        Err(e) => {
            report.error = Some(ErrorReport {
                kind: "analysis".into(),
                message: e.to_string(),
            });
            Outcome {
                code: exit_code(&e),
                output: render(&report, format),
            }
        }
    }
}

fn analyze(spec: &AnalysisSpec, g: &Group, s: &Cocycle, report: &mut Report) -> Result<i32, Error> {
    let effort = spec.options.effort;
    report.cocycle.d_sigma = Some(match s.d_sigma() {
        Ok(DSigmaDesc::FiniteCyclic(m)) => format!("Z_{m}"),
        Ok(DSigmaDesc::InfiniteWithTheta) => "infinite (theta)".into(),
        Err(e) => format!("unavailable: {e}"),
    });
    let result = classify(s, effort)?;
    report.fc = Some(fc_report(g, &result, effort)?);
    let regular_classes = if g.is_finite() {
        Some(sigma_regular_classes(s)?.len())
    } else {
        None
    };
    report.kleppner = Some(kleppner_report(g, &result, regular_classes));
    report.classification = Some(ClassificationReport {
        simple: decision(result.simple),
        unique_trace: decision(result.unique_trace),
        justification: result
            .justification
            .iter()
            .map(|j| JustificationReport {
                rule: j.rule.to_string(),
                cite: j.citation.to_string(),
                used: j.used.clone(),
            })
            .collect(),
        fch_kleppner: result.hypercenter_kleppner.as_ref().map(|k| k.status_str().to_string()),
    });
    report.metadata = Some(MetadataReport {
        amenable: fact(&result.metadata.amenable),
        in_class_p: fact(&result.metadata.in_class_p),
        fc_hypercentral: fact(&result.metadata.known_fc_hypercentral),
    });
    let mut code = EXIT_OK;
    if spec.options.oracle {
        if let Some(n) = g.order() {
            if n > MAX_ORDER {
                report.oracle = Some(oracle_error(format!("group of order {n} exceeds the oracle cap {MAX_ORDER}")));
                return Ok(EXIT_RESOURCE);
            }
            let block = oracle_block(s, spec, &result, regular_classes.unwrap_or(0));
            if block.agreement.as_ref().is_some_and(|a| !a.all) {
                code = EXIT_INCONSISTENT;
            }
            report.oracle = Some(block);
        }
    }
    Ok(code)
}

fn fc_report(g: &Group, result: &ClassificationResult, effort: u32) -> Result<FcReport, Error> {
    let fc = &result.fc;
    let icc_quotient = match &fc.icc_quotient {
        Some(q) => {
            let qg = q.group();
            IccQuotientReport {
                family: Some(qg.tag().to_string()),
                name: Some(qg.name()),
                is_icc: Some(
                    match qg.is_icc(effort)? {
                        v if v.is_yes() => "yes",
                        v if v.is_no() => "no",
                        _ => "unknown",
                    }
                    .to_string(),
                ),
                in_class_p: Some(decision(qg.metadata().in_class_p.value)),
                unavailable: None,
            }
        }
        None => IccQuotientReport {
            family: None,
            name: None,
            is_icc: None,
            in_class_p: None,
            unavailable: fc.icc_quotient_error.clone(),
        },
    };
    Ok(FcReport {
        fc_center: subgroup(g, &fc.center),
        series: fc.series.steps.iter().map(|s| subgroup(g, s)).collect(),
        stabilized: fc.series.stabilized,
        stabilization_index: fc.series.stabilization_index,
        truncation: fc.series.truncation.clone(),
        fch: subgroup(g, &fc.hypercenter),
        icc_quotient,
    })
}

fn kleppner_report(g: &Group, result: &ClassificationResult, regular_classes: Option<usize>) -> KleppnerReport {
    let k = &result.kleppner;
    let (witness, reason) = match &k.status {
        KleppnerStatus::Fails(w) => (
            Some(WitnessReport {
                element: g.format_element(&w.element),
                class_size: class_size_str(&w.class_size),
                centralizer_generators: w.centralizer_generators.iter().map(|x| g.format_element(x)).collect(),
            }),
            None,
        ),
        KleppnerStatus::Unknown(r) => (None, Some(r.clone())),
        KleppnerStatus::Holds => (None, None),
    };
    KleppnerReport {
        status: k.status_str().to_string(),
        witness,
        reason,
        evidence: k.evidence.clone(),
        regular_classes,
    }
}

fn oracle_error(message: String) -> OracleBlock {
    OracleBlock {
        theta_numeric: None,
        center_dim: None,
        blocks: Vec::new(),
        invariant_trace_dim: None,
        checks: None,
        agreement: None,
        error: Some(message),
    }
}

fn oracle_block(s: &Cocycle, spec: &AnalysisSpec, result: &ClassificationResult, regular: usize) -> OracleBlock {
    let has_theta = s
        .to_table()
        .map(|t| t.iter().flatten().any(|v| v.has_theta()))
        .unwrap_or(false);
    let theta = has_theta.then(|| spec.options.theta_numeric.unwrap_or(DEFAULT_THETA));
    let r = match OracleReport::compute(s, theta, spec.options.seed) {
        Ok(r) => r,
        Err(e) => return oracle_error(e.to_string()),
    };
    let order = s.group().order().unwrap_or(0);
    let simple_block = r.center_dim == 1;
    let verdict_ok = |d: Decision| match d {
        Decision::Yes => simple_block,
        Decision::No => !simple_block,
        Decision::Unknown => false,
    };
    let identities = r.conjugation_max_defect < CONJUGATION_TOLERANCE
        && r.carey_moran_max_residual.is_none_or(|x| x < CAREY_MORAN_TOLERANCE);
    let mut a = Agreement {
        regular_classes_vs_center: regular == r.center_dim,
        kleppner_vs_center: result.kleppner.holds() == simple_block,
        blocks_vs_center: r.blocks.len() == r.center_dim && r.blocks.iter().map(|b| b * b).sum::<usize>() == order,
        traces_vs_center: r.invariant_trace_dim == r.center_dim,
        verdict: verdict_ok(result.simple) && verdict_ok(result.unique_trace),
        identities,
        all: false,
    };
    a.all = a.regular_classes_vs_center
        && a.kleppner_vs_center
        && a.blocks_vs_center
        && a.traces_vs_center
        && a.verdict
        && a.identities;
    OracleBlock {
        theta_numeric: theta,
        center_dim: Some(r.center_dim),
        blocks: r.blocks,
        invariant_trace_dim: Some(r.invariant_trace_dim),
        checks: Some(OracleChecks {
            carey_moran_max_residual: r.carey_moran_max_residual.map(sci),
            conjugation_max_defect: sci(r.conjugation_max_defect),
        }),
        agreement: Some(a),
        error: None,
    }
}

/// Spec files (`.toml`, `.json`) in `dir`, sorted by name.
pub fn spec_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && matches!(p.extension().and_then(|e| e.to_str()), Some("toml" | "json"))
                && !p.file_stem().and_then(|s| s.to_str()).is_some_and(|s| s.ends_with(".report"))
        })
        .collect();
    files.sort();
    Ok(files)
}

/// Analyzes every spec in `dir` in parallel; results keep the file order.
pub fn analyze_batch(dir: &Path, overrides: &Overrides) -> std::io::Result<Vec<(PathBuf, Outcome)>> {
    let files = spec_files(dir)?;
    Ok(files
        .into_par_iter()
        .map(|path| {
            let outcome = match std::fs::read_to_string(&path) {
                Ok(src) => analyze_source(&src, overrides),
                Err(e) => Outcome {
                    code: EXIT_PARSE,
                    output: format!("error (io): {e}\n"),
                },
            };
            (path, outcome)
        })
        .collect())
}
